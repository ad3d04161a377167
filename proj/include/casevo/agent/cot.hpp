#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "casevo/core/json.hpp"
#include "casevo/llm/gateway.hpp"
#include "casevo/llm/prompt_template.hpp"

namespace casevo {

enum class StepParser { Text, Json };

struct CotStep {
  std::string template_name;
  std::string output;  // context key the step's result is bound to
  StepParser parser = StepParser::Text;
};

// Ordered prompt steps. Step i may reference the caller's context plus the
// outputs of steps before it. A JSON step binds `<output>` to the whole
// payload and `<output>.<field>` to each top-level field (arrays joined with
// ", ").
struct CotChain {
  std::string name;
  std::vector<CotStep> steps;

  // [{"template": "...", "output": "...", "parser": "text" | "json"}, ...]
  static CotChain from_json(std::string name, const Json& steps);
};

struct StepOutput {
  std::string template_name;
  std::string output;
  std::string prompt;
  std::string text;
  Json parsed;  // payload for JSON steps, the text as a string otherwise
};

struct ChainOutput {
  std::vector<StepOutput> steps;
  Json payload;  // last step's parsed output

  // Throws std::out_of_range.
  const StepOutput& step(std::string_view output) const;
};

// Throws MissingTemplateError before any call when a step's template is not
// registered, MissingVarError when a step references something that is
// neither in context nor an earlier output, and ParseError carrying the
// failing step index when a JSON step cannot be parsed.
ChainOutput run_chain(const CotChain& chain, const TemplateVars& context, LlmGateway& llm, std::string_view agent,
                      int round);

}  // namespace casevo
