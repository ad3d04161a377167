#include "casevo/core/config.hpp"

#include <fstream>
#include <set>

#include "casevo/core/errors.hpp"

namespace casevo {

std::filesystem::path resolve_path(const std::filesystem::path& base, const std::filesystem::path& p) {
  if (p.empty() || p.is_absolute() || base.empty()) return p;
  return base / p;
}

SimConfig SimConfig::from_json(const Json& j, const std::filesystem::path& base_dir) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  static const std::set<std::string> known = {"seed",     "num_agents", "num_rounds", "network",
                                              "scenario", "backend",    "workers",    "log_path"};
  for (const auto& [key, _] : j.items()) {
    if (!known.count(key)) throw ConfigError("unknown config key '" + key + "'");
  }
  for (const char* required : {"num_agents", "num_rounds", "scenario", "backend"}) {
    if (!j.contains(required)) throw ConfigError(std::string("config lacks '") + required + "'");
  }

  SimConfig c;
  const auto integer = [&](const char* key, auto& out) {
    const auto& v = j[key];
    if (!v.is_number_integer()) throw ConfigError(std::string("'") + key + "' must be an integer");
    if (v.is_number_unsigned() || v.get<std::int64_t>() >= 0) {
      out = v.get<std::remove_reference_t<decltype(out)>>();
    } else {
      throw ConfigError(std::string("'") + key + "' must be >= 0");
    }
  };
  if (j.contains("seed")) integer("seed", c.seed);
  integer("num_agents", c.num_agents);
  integer("num_rounds", c.num_rounds);
  if (j.contains("workers")) integer("workers", c.workers);

  if (j.contains("network")) c.network = NetworkSpec::from_json(j["network"]);

  const auto& s = j["scenario"];
  if (!s.is_object() || !s.contains("name") || !s["name"].is_string()) {
    throw ConfigError("'scenario' needs a string 'name'");
  }
  c.scenario.name = s["name"].get<std::string>();
  c.scenario.base_dir = base_dir;
  for (const auto& [key, value] : s.items()) {
    if (key != "name") c.scenario.payload[key] = value;
  }

  c.backend = BackendSpec::from_json(j["backend"], base_dir);

  if (j.contains("log_path")) {
    if (!j["log_path"].is_string()) throw ConfigError("'log_path' must be a string");
    c.log_path = resolve_path(base_dir, j["log_path"].get<std::string>());
  }
  c.validate();
  return c;
}

SimConfig SimConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  auto j = Json::parse(in, nullptr, false);
  if (j.is_discarded()) throw ConfigError("config file '" + path.string() + "' is not valid JSON");
  return from_json(j, path.parent_path());
}

void SimConfig::validate() const {
  if (num_agents < 1) throw ConfigError("num_agents must be >= 1");
  if (num_rounds < 1) throw ConfigError("num_rounds must be >= 1");
  if (workers < 1) throw ConfigError("workers must be >= 1");
  if (scenario.name.empty()) throw ConfigError("scenario name must be non-empty");
  if (log_path.empty()) throw ConfigError("log_path must be non-empty");
  if (network.kind == NetworkKind::SmallWorld) {
    if (network.k < 2 || network.k % 2 != 0) throw ConfigError("small_world k must be even and >= 2");
    if (num_agents <= network.k) {
      throw ConfigError("small_world needs num_agents > k (use a random network for tiny populations)");
    }
    if (!(network.p >= 0.0 && network.p <= 1.0)) throw ConfigError("small_world p must be in [0, 1]");
  } else if (!(network.p_edge >= 0.0 && network.p_edge <= 1.0)) {
    throw ConfigError("random p_edge must be in [0, 1]");
  }
}

}  // namespace casevo
