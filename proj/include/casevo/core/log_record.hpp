#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include "casevo/core/json.hpp"

namespace casevo {

enum class RecordType { Listen, Discuss, Reflect, Vote, Event };

enum class OwnerType : int { Agent = 0, Environment = 1 };

inline constexpr std::string_view kPublicOwner = "public";

std::string_view to_string(RecordType type) noexcept;
std::optional<RecordType> record_type_from_string(std::string_view s) noexcept;

std::string agent_id(std::size_t index);
// Numeric part of "agent_<n>"; nullopt for anything else (including "public").
std::optional<std::size_t> agent_index(std::string_view id) noexcept;

struct LogRecord {
  int ts = 0;
  std::string owner;
  RecordType type = RecordType::Event;
  Json item = Json::object();
  OwnerType owner_type = OwnerType::Agent;

  static LogRecord agent(int ts, std::size_t index, RecordType type, Json item);
  static LogRecord environment(int ts, RecordType type, Json item);

  bool operator==(const LogRecord&) const = default;
};

// Keys in fixed order: ts, owner, type, item, owner_type.
Json to_json(const LogRecord& record);
std::string to_line(const LogRecord& record);

// Strict: exactly the five keys with the right value kinds. Throws ParseError.
LogRecord record_from_json(const Json& j);

// Sort key for canonical commit order: environment records first, then by
// ascending numeric agent id.
bool canonical_less(const LogRecord& a, const LogRecord& b) noexcept;

}  // namespace casevo
