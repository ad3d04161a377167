#include "casevo/agent/cot.hpp"

#include <stdexcept>

#include "casevo/core/errors.hpp"
#include "casevo/llm/structured.hpp"

namespace casevo {

namespace {

std::string binding_text(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_array()) {
    std::string out;
    for (const auto& e : v) {
      if (!out.empty()) out += ", ";
      out += e.is_string() ? e.get<std::string>() : e.dump();
    }
    return out;
  }
  return v.dump();
}

bool bound_by(std::string_view var, const std::vector<std::string>& outputs) {
  for (const auto& o : outputs) {
    if (var == o) return true;
    if (var.size() > o.size() && var.substr(0, o.size()) == o && var[o.size()] == '.') return true;
  }
  return false;
}

}  // namespace

CotChain CotChain::from_json(std::string name, const Json& steps) {
  if (!steps.is_array() || steps.empty()) throw ConfigError("chain '" + name + "' needs a non-empty step list");
  CotChain chain{std::move(name), {}};
  for (const auto& s : steps) {
    if (!s.is_object() || !s.contains("template") || !s["template"].is_string()) {
      throw ConfigError("chain '" + chain.name + "': each step needs a 'template'");
    }
    CotStep step;
    step.template_name = s["template"].get<std::string>();
    step.output = s.value("output", step.template_name);
    const auto parser = s.value("parser", std::string("text"));
    if (parser == "text") {
      step.parser = StepParser::Text;
    } else if (parser == "json") {
      step.parser = StepParser::Json;
    } else {
      throw ConfigError("chain '" + chain.name + "': unknown parser '" + parser + "'");
    }
    chain.steps.push_back(std::move(step));
  }
  return chain;
}

const StepOutput& ChainOutput::step(std::string_view output) const {
  for (const auto& s : steps) {
    if (s.output == output) return s;
  }
  throw std::out_of_range("chain has no step output '" + std::string(output) + "'");
}

ChainOutput run_chain(const CotChain& chain, const TemplateVars& context, LlmGateway& llm, std::string_view agent,
                      int round) {
  if (chain.steps.empty()) throw ConfigError("chain '" + chain.name + "' has no steps");

  // Validate the whole chain up front so nothing is sent for a broken chain.
  std::vector<std::string> outputs;
  for (const auto& step : chain.steps) {
    const auto& tmpl = llm.templates().get(step.template_name);
    for (const auto& var : tmpl.placeholders()) {
      if (context.find(var) == context.end() && !bound_by(var, outputs)) throw MissingVarError(var);
    }
    outputs.push_back(step.output);
  }

  ChainOutput result;
  TemplateVars vars = context;
  for (std::size_t i = 0; i < chain.steps.size(); ++i) {
    const auto& step = chain.steps[i];
    StepOutput out;
    out.template_name = step.template_name;
    out.output = step.output;
    try {
      out.prompt = llm.templates().get(step.template_name).render(vars);
    } catch (const MissingVarError& e) {
      // An earlier JSON step came back without a field this step needs.
      throw ParseError("chain '" + chain.name + "' step " + std::to_string(i) + " (" + step.template_name +
                           "): earlier output lacks '" + e.var() + "'",
                       i);
    }
    out.text = llm.complete(out.prompt, step.template_name, agent, round).text;

    if (step.parser == StepParser::Json) {
      try {
        out.parsed = parse_structured(out.text);
      } catch (const ParseError& e) {
        throw ParseError("chain '" + chain.name + "' step " + std::to_string(i) + " (" + step.template_name +
                             "): " + e.what(),
                         i);
      }
      vars[step.output] = out.parsed.dump();
      for (const auto& [key, value] : out.parsed.items()) vars[step.output + "." + key] = binding_text(value);
    } else {
      out.parsed = out.text;
      vars[step.output] = out.text;
    }
    result.steps.push_back(std::move(out));
  }
  result.payload = result.steps.back().parsed;
  return result;
}

}  // namespace casevo
