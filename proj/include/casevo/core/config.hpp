#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>

#include "casevo/core/json.hpp"
#include "casevo/llm/backend.hpp"
#include "casevo/network/social_graph.hpp"

namespace casevo {

struct ScenarioSpec {
  std::string name;
  Json payload = Json::object();       // every scenario key except "name"
  std::filesystem::path base_dir;      // for resolving asset paths
};

struct SimConfig {
  std::uint64_t seed = 0;
  std::size_t num_agents = 1;
  int num_rounds = 1;
  NetworkSpec network;
  ScenarioSpec scenario;
  BackendSpec backend;
  std::size_t workers = 1;
  std::filesystem::path log_path = "events.jsonl";

  // Unknown keys and out-of-range values are ConfigErrors. Relative paths
  // resolve against base_dir.
  static SimConfig from_json(const Json& j, const std::filesystem::path& base_dir = {});
  static SimConfig load(const std::filesystem::path& path);

  void validate() const;
};

// Resolves `p` against `base` when relative.
std::filesystem::path resolve_path(const std::filesystem::path& base, const std::filesystem::path& p);

}  // namespace casevo
