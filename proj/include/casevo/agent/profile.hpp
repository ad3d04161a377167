#pragma once

#include <string>
#include <string_view>

#include "casevo/core/json.hpp"
#include "casevo/llm/prompt_template.hpp"

namespace casevo {

struct AgentProfile {
  std::string id;  // "agent_<n>"
  std::string name;
  int age = 0;
  std::string background;
  std::string topics_of_interest;
  std::string category;
};

Json to_json(const AgentProfile& p);

// Adds <prefix>.id, .name, .age, .background, .topics, .category.
void add_profile_vars(TemplateVars& vars, std::string_view prefix, const AgentProfile& p);

}  // namespace casevo
