#pragma once

#include <atomic>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>

#include "casevo/llm/backend.hpp"
#include "casevo/llm/prompt_template.hpp"

namespace casevo {

// Templates + backend + request numbering. Safe to share across execution
// units once constructed.
class LlmGateway {
 public:
  LlmGateway(TemplateRegistry templates, std::shared_ptr<Backend> backend, LlmParams params = {});

  const TemplateRegistry& templates() const noexcept { return templates_; }
  Backend& backend() const noexcept { return *backend_; }
  const LlmParams& params() const noexcept { return params_; }

  // Renders `template_name` and sends it tagged with the template name.
  LlmResponse call(std::string_view template_name, const TemplateVars& vars, std::string_view agent, int round);

  // Sends an already rendered prompt.
  LlmResponse complete(std::string prompt, std::string_view tag, std::string_view agent, int round);

  std::uint64_t requests_issued() const noexcept { return next_id_.load() - 1; }

 private:
  TemplateRegistry templates_;
  std::shared_ptr<Backend> backend_;
  LlmParams params_;
  std::atomic<std::uint64_t> next_id_{1};
};

}  // namespace casevo
