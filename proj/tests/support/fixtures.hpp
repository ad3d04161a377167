#pragma once

#include <filesystem>
#include <fstream>
#include <iterator>
#include <string>
#include <vector>

#include "casevo/core/config.hpp"
#include "casevo/core/json.hpp"

namespace casevo::testing {

inline std::filesystem::path asset_dir() { return CASEVO_ASSET_DIR; }

// Fresh empty directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("casevo_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
}

inline Json read_json(const std::filesystem::path& path) { return Json::parse(read_file(path)); }

// The bundled reference config with asset paths made absolute.
inline Json reference_config_json() {
  auto j = read_json(asset_dir() / "config.json");
  for (const char* key : {"typology", "debate", "templates"}) {
    j["scenario"][key] = (asset_dir() / j["scenario"][key].get<std::string>()).string();
  }
  j["backend"]["script"] = (asset_dir() / j["backend"]["script"].get<std::string>()).string();
  return j;
}

inline SimConfig config_from(const Json& j, const std::filesystem::path& log_path) {
  auto c = SimConfig::from_json(j);
  c.log_path = log_path;
  return c;
}

}  // namespace casevo::testing

namespace casevo::testing {

// Writes a self-contained election setup into `dir`: a typology spreading
// `agents` over three categories, a debate with `rounds` segments, the
// bundled templates, and `script_rows` (the bundled script when null).
inline Json election_config(const std::filesystem::path& dir, std::size_t agents, int rounds, const Json& network,
                            const Json& script_rows = nullptr) {
  Json cats = Json::array();
  const char* names[] = {"Conservative White Male", "Young, Diverse Group", "Elderly Religious Female"};
  for (std::size_t c = 0; c < 3; ++c) {
    const std::size_t count = agents / 3 + (c < agents % 3 ? 1 : 0);
    if (count == 0) continue;
    cats.push_back(Json{{"category", names[c]}, {"count", count}, {"age_min", 30}, {"age_max", 70},
                        {"background", "{name}, {age}, {category}."}, {"topics_of_interest", "jobs and healthcare"}});
  }
  write_file(dir / "typology.json", Json{{"categories", cats}}.dump(2));

  Json debate = Json::array();
  for (int r = 0; r < rounds; ++r) {
    debate.push_back(Json{{"topic", "Topic " + std::to_string(r)},
                          {"transcript", "TRUMP: point " + std::to_string(r) + ". BIDEN: counterpoint " + std::to_string(r) + "."}});
  }
  write_file(dir / "debate.json", Json{{"rounds", debate}}.dump(2));

  const auto script = script_rows.is_null() ? read_json(asset_dir() / "script.json") : Json{{"rows", script_rows}};
  write_file(dir / "script.json", script.dump(2));

  return Json{{"seed", 42},
              {"num_agents", agents},
              {"num_rounds", rounds},
              {"workers", 4},
              {"network", network},
              {"scenario", {{"name", "election"},
                            {"typology", (dir / "typology.json").string()},
                            {"debate", (dir / "debate.json").string()},
                            {"templates", (asset_dir() / "templates.json").string()}}},
              {"backend", {{"kind", "scripted"}, {"script", (dir / "script.json").string()}}},
              {"log_path", (dir / "events.jsonl").string()}};
}

// Every script row of the bundled table except those for `phase`.
inline Json bundled_rows_without(const std::string& phase) {
  Json rows = Json::array();
  const auto bundled = read_json(asset_dir() / "script.json");
  for (const auto& r : bundled["rows"]) {
    if (r["phase"] != phase) rows.push_back(r);
  }
  return rows;
}

inline std::vector<Json> read_lines(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::vector<Json> out;
  for (std::string line; std::getline(in, line);) out.push_back(Json::parse(line));
  return out;
}

}  // namespace casevo::testing
