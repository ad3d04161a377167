#pragma once

#include <chrono>
#include <functional>
#include <memory>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace casevo::testing {

// Local chat-completions stand-in. Replies with `statuses` in order, then
// `fallback_status` forever. 200 replies carry `reply(prompt)` as content.
class StubServer {
 public:
  struct Hit {
    std::chrono::steady_clock::time_point at;
    std::string body;
    std::string authorization;
    int status = 0;
  };

  explicit StubServer(std::vector<int> statuses, int fallback_status = 200,
                      std::function<std::string(const std::string&)> reply = {});
  ~StubServer();
  StubServer(const StubServer&) = delete;
  StubServer& operator=(const StubServer&) = delete;

  // Base URL ending in /v1.
  std::string endpoint() const;
  std::vector<Hit> hits() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace casevo::testing
