#include "casevo/election/typology.hpp"

#include <fstream>

#include "casevo/core/errors.hpp"

namespace casevo {

namespace {

Json read_json(const std::filesystem::path& path, const char* what) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(std::string("cannot open ") + what + " '" + path.string() + "'");
  auto j = Json::parse(in, nullptr, false);
  if (j.is_discarded()) throw ConfigError(std::string(what) + " '" + path.string() + "' is not valid JSON");
  return j;
}

std::string text_or_lines(const Json& v, const std::string& field) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_array()) {
    std::string out;
    for (const auto& line : v) {
      if (!line.is_string()) throw ConfigError(field + ": lines must be strings");
      if (!out.empty()) out += '\n';
      out += line.get<std::string>();
    }
    return out;
  }
  throw ConfigError(field + " must be text");
}

}  // namespace

std::vector<TypologyEntry> typology_from_json(const Json& j) {
  const Json& list = j.is_object() && j.contains("categories") ? j["categories"] : j;
  if (!list.is_array()) throw ConfigError("typology must be an array of categories");
  std::vector<TypologyEntry> out;
  for (const auto& e : list) {
    if (!e.is_object()) throw ConfigError("typology entry must be an object");
    TypologyEntry t;
    try {
      t.category = e.at("category").get<std::string>();
      t.characteristics = e.value("characteristics", std::string());
      t.count = e.at("count").get<std::size_t>();
      t.age_min = e.value("age_min", 18);
      t.age_max = e.value("age_max", 80);
      t.background = e.contains("background") ? text_or_lines(e["background"], "background") : t.characteristics;
      t.topics_of_interest =
          e.contains("topics_of_interest") ? text_or_lines(e["topics_of_interest"], "topics_of_interest") : "";
    } catch (const Json::exception& ex) {
      throw ConfigError(std::string("typology entry: ") + ex.what());
    }
    if (t.age_min > t.age_max) throw ConfigError("typology '" + t.category + "': age_min > age_max");
    out.push_back(std::move(t));
  }
  return out;
}

std::vector<TypologyEntry> load_typology(const std::filesystem::path& path) {
  return typology_from_json(read_json(path, "typology"));
}

void validate_typology(const std::vector<TypologyEntry>& typology, std::size_t num_agents) {
  if (typology.empty()) throw TypologyError("typology has no categories");
  std::size_t total = 0;
  for (const auto& t : typology) {
    if (t.category.empty()) throw TypologyError("typology category label is empty");
    total += t.count;
  }
  if (total != num_agents) {
    throw TypologyError("typology counts sum to " + std::to_string(total) + " but num_agents is " +
                        std::to_string(num_agents));
  }
}

DebateScript DebateScript::from_json(const Json& j) {
  const Json& list = j.is_object() && j.contains("rounds") ? j["rounds"] : j;
  if (!list.is_array()) throw ConfigError("debate script must list rounds");
  DebateScript script;
  for (const auto& r : list) {
    if (!r.is_object() || !r.contains("transcript")) throw ConfigError("debate round needs a transcript");
    script.rounds.push_back({r.value("topic", std::string()), text_or_lines(r["transcript"], "transcript")});
  }
  return script;
}

DebateScript DebateScript::load(const std::filesystem::path& path) { return from_json(read_json(path, "debate script")); }

}  // namespace casevo
