#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "casevo/core/json.hpp"

namespace casevo {

// One voter category. `background` and `topics_of_interest` are templates
// that may use {name}, {age} and {category}.
struct TypologyEntry {
  std::string category;
  std::string characteristics;
  std::size_t count = 0;
  int age_min = 18;
  int age_max = 80;
  std::string background;
  std::string topics_of_interest;
};

std::vector<TypologyEntry> typology_from_json(const Json& j);
std::vector<TypologyEntry> load_typology(const std::filesystem::path& path);

// Throws TypologyError unless categories are non-empty and counts sum to
// num_agents.
void validate_typology(const std::vector<TypologyEntry>& typology, std::size_t num_agents);

struct DebateRound {
  std::string topic;
  std::string transcript;
};

struct DebateScript {
  std::vector<DebateRound> rounds;

  // {"rounds": [{"topic": "...", "transcript": "..." | ["line", ...]}, ...]}
  static DebateScript from_json(const Json& j);
  static DebateScript load(const std::filesystem::path& path);
};

}  // namespace casevo
