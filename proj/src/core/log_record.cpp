#include "casevo/core/log_record.hpp"

#include <charconv>
#include <limits>

#include "casevo/core/errors.hpp"

namespace casevo {

std::string_view to_string(RecordType type) noexcept {
  switch (type) {
    case RecordType::Listen: return "listen";
    case RecordType::Discuss: return "discuss";
    case RecordType::Reflect: return "reflect";
    case RecordType::Vote: return "vote";
    case RecordType::Event: return "event";
  }
  return "event";
}

std::optional<RecordType> record_type_from_string(std::string_view s) noexcept {
  if (s == "listen") return RecordType::Listen;
  if (s == "discuss") return RecordType::Discuss;
  if (s == "reflect") return RecordType::Reflect;
  if (s == "vote") return RecordType::Vote;
  if (s == "event") return RecordType::Event;
  return std::nullopt;
}

std::string agent_id(std::size_t index) { return "agent_" + std::to_string(index); }

std::optional<std::size_t> agent_index(std::string_view id) noexcept {
  constexpr std::string_view prefix = "agent_";
  if (id.size() <= prefix.size() || id.substr(0, prefix.size()) != prefix) return std::nullopt;
  const auto digits = id.substr(prefix.size());
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
  if (ec != std::errc{} || ptr != digits.data() + digits.size()) return std::nullopt;
  return value;
}

LogRecord LogRecord::agent(int ts, std::size_t index, RecordType type, Json item) {
  return LogRecord{ts, agent_id(index), type, std::move(item), OwnerType::Agent};
}

LogRecord LogRecord::environment(int ts, RecordType type, Json item) {
  return LogRecord{ts, std::string(kPublicOwner), type, std::move(item), OwnerType::Environment};
}

Json to_json(const LogRecord& record) {
  Json j = Json::object();
  j["ts"] = record.ts;
  j["owner"] = record.owner;
  j["type"] = std::string(to_string(record.type));
  j["item"] = record.item;
  j["owner_type"] = static_cast<int>(record.owner_type);
  return j;
}

std::string to_line(const LogRecord& record) {
  // Invalid UTF-8 from a model is replaced rather than aborting the log.
  return to_json(record).dump(-1, ' ', false, Json::error_handler_t::replace);
}

LogRecord record_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("record is not a JSON object");
  if (j.size() != 5) throw ParseError("record must have exactly 5 keys, found " + std::to_string(j.size()));
  for (const char* key : {"ts", "owner", "type", "item", "owner_type"}) {
    if (!j.contains(key)) throw ParseError(std::string("record missing key '") + key + "'");
  }
  if (!j["ts"].is_number_integer()) throw ParseError("'ts' must be an integer");
  if (!j["owner"].is_string()) throw ParseError("'owner' must be a string");
  if (!j["type"].is_string()) throw ParseError("'type' must be a string");
  if (!j["item"].is_object()) throw ParseError("'item' must be an object");
  if (!j["owner_type"].is_number_integer()) throw ParseError("'owner_type' must be an integer");

  LogRecord r;
  r.ts = j["ts"].get<int>();
  r.owner = j["owner"].get<std::string>();
  auto type = record_type_from_string(j["type"].get<std::string>());
  if (!type) throw ParseError("unknown record type '" + j["type"].get<std::string>() + "'");
  r.type = *type;
  r.item = j["item"];
  const int owner_type = j["owner_type"].get<int>();
  if (owner_type != 0 && owner_type != 1) throw ParseError("'owner_type' must be 0 or 1");
  r.owner_type = static_cast<OwnerType>(owner_type);
  return r;
}

bool canonical_less(const LogRecord& a, const LogRecord& b) noexcept {
  const auto key = [](const LogRecord& r) {
    auto idx = agent_index(r.owner);
    return idx ? *idx : std::numeric_limits<std::size_t>::max();
  };
  const bool env_a = a.owner_type == OwnerType::Environment;
  const bool env_b = b.owner_type == OwnerType::Environment;
  if (env_a != env_b) return env_a;
  if (env_a) return false;
  return key(a) < key(b);
}

}  // namespace casevo
