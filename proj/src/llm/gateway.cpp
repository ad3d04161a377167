#include "casevo/llm/gateway.hpp"

#include "casevo/core/errors.hpp"

namespace casevo {

LlmGateway::LlmGateway(TemplateRegistry templates, std::shared_ptr<Backend> backend, LlmParams params)
    : templates_(std::move(templates)), backend_(std::move(backend)), params_(params) {
  if (!backend_) throw ConfigError("LlmGateway needs a backend");
}

LlmResponse LlmGateway::call(std::string_view template_name, const TemplateVars& vars, std::string_view agent,
                             int round) {
  auto prompt = templates_.get(template_name).render(vars);
  return complete(std::move(prompt), template_name, agent, round);
}

LlmResponse LlmGateway::complete(std::string prompt, std::string_view tag, std::string_view agent, int round) {
  LlmRequest request;
  request.id = next_id_.fetch_add(1);
  request.agent = std::string(agent);
  request.round = round;
  request.tag = std::string(tag);
  request.prompt = std::move(prompt);
  request.params = params_;
  return backend_->complete(request);
}

}  // namespace casevo
