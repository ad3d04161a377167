#include "stub_server.hpp"

#include <httplib.h>

#include <json.hpp>

namespace casevo::testing {

struct StubServer::Impl {
  httplib::Server server;
  std::thread thread;
  int port = 0;
  mutable std::mutex mutex;
  std::vector<int> statuses;
  int fallback = 200;
  std::function<std::string(const std::string&)> reply;
  std::vector<Hit> hits;
};

StubServer::StubServer(std::vector<int> statuses, int fallback_status,
                       std::function<std::string(const std::string&)> reply)
    : impl_(std::make_unique<Impl>()) {
  impl_->statuses = std::move(statuses);
  impl_->fallback = fallback_status;
  impl_->reply = reply ? std::move(reply) : [](const std::string& prompt) { return prompt; };

  impl_->server.Post("/v1/chat/completions", [this](const httplib::Request& req, httplib::Response& res) {
    int status;
    {
      std::lock_guard lock(impl_->mutex);
      const auto n = impl_->hits.size();
      status = n < impl_->statuses.size() ? impl_->statuses[n] : impl_->fallback;
      impl_->hits.push_back({std::chrono::steady_clock::now(), req.body, req.get_header_value("Authorization"), status});
    }
    res.status = status;
    if (status != 200) {
      res.set_content(R"({"error":"stub failure"})", "application/json");
      return;
    }
    const auto body = nlohmann::json::parse(req.body, nullptr, false);
    std::string prompt;
    if (!body.is_discarded() && body.contains("messages") && !body["messages"].empty()) {
      prompt = body["messages"][0].value("content", std::string());
    }
    nlohmann::json out = {{"id", "stub"},
                          {"object", "chat.completion"},
                          {"choices", {{{"index", 0},
                                        {"message", {{"role", "assistant"}, {"content", impl_->reply(prompt)}}},
                                        {"finish_reason", "stop"}}}}};
    res.set_content(out.dump(), "application/json");
  });

  impl_->port = impl_->server.bind_to_any_port("127.0.0.1");
  impl_->thread = std::thread([this] { impl_->server.listen_after_bind(); });
  impl_->server.wait_until_ready();
}

StubServer::~StubServer() {
  impl_->server.stop();
  if (impl_->thread.joinable()) impl_->thread.join();
}

std::string StubServer::endpoint() const { return "http://127.0.0.1:" + std::to_string(impl_->port) + "/v1"; }

std::vector<StubServer::Hit> StubServer::hits() const {
  std::lock_guard lock(impl_->mutex);
  return impl_->hits;
}

}  // namespace casevo::testing
