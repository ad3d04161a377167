#include <httplib.h>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <semaphore>
#include <thread>

#include "casevo/core/errors.hpp"
#include "casevo/llm/backend.hpp"

namespace casevo {

struct HttpBackend::Limiter {
  explicit Limiter(std::size_t n) : slots(static_cast<std::ptrdiff_t>(n)) {}
  std::counting_semaphore<4096> slots;
};

namespace {

class SlotGuard {
 public:
  explicit SlotGuard(std::counting_semaphore<4096>& s) : s_(s) { s_.acquire(); }
  ~SlotGuard() { s_.release(); }
  SlotGuard(const SlotGuard&) = delete;
  SlotGuard& operator=(const SlotGuard&) = delete;

 private:
  std::counting_semaphore<4096>& s_;
};

std::chrono::microseconds to_micros(double seconds) {
  return std::chrono::microseconds(static_cast<std::int64_t>(seconds * 1e6));
}

}  // namespace

HttpBackend::HttpBackend(HttpSettings settings)
    : settings_(std::move(settings)),
      limiter_(std::make_unique<Limiter>(std::min<std::size_t>(settings_.max_in_flight, 4096))) {
  const auto scheme_end = settings_.endpoint.find("://");
  if (scheme_end == std::string::npos) throw ConfigError("http endpoint lacks a scheme: " + settings_.endpoint);
  const auto path_start = settings_.endpoint.find('/', scheme_end + 3);
  scheme_host_port_ = settings_.endpoint.substr(0, path_start);
  path_ = path_start == std::string::npos ? std::string() : settings_.endpoint.substr(path_start);
  while (!path_.empty() && path_.back() == '/') path_.pop_back();
  path_ += "/chat/completions";
#ifndef CPPHTTPLIB_OPENSSL_SUPPORT
  if (scheme_host_port_.rfind("https://", 0) == 0) {
    throw ConfigError("https endpoints need a build with OpenSSL support");
  }
#endif
}

HttpBackend::~HttpBackend() = default;

std::string HttpBackend::label() const { return "http:" + settings_.model; }

Json HttpBackend::request_body(const HttpSettings& settings, const LlmRequest& request) {
  Json body = Json::object();
  body["model"] = settings.model;
  body["messages"] = Json::array({Json{{"role", "user"}, {"content", request.prompt}}});
  body["temperature"] = request.params.temperature;
  body["max_tokens"] = request.params.max_tokens;
  return body;
}

std::string HttpBackend::attempt_once(const LlmRequest& request) {
  httplib::Client client(scheme_host_port_);
  client.set_connection_timeout(to_micros(settings_.timeout));
  client.set_read_timeout(to_micros(settings_.timeout));
  client.set_write_timeout(to_micros(settings_.timeout));

  httplib::Headers headers;
  if (!settings_.auth_env.empty()) {
    if (const char* token = std::getenv(settings_.auth_env.c_str()); token && *token) {
      headers.emplace("Authorization", std::string("Bearer ") + token);
    }
  }

  const auto body = request_body(settings_, request).dump(-1, ' ', false, Json::error_handler_t::replace);
  auto result = client.Post(path_, headers, body, "application/json");
  if (!result) {
    const auto err = result.error();
    const auto what = "POST " + scheme_host_port_ + path_ + ": " + httplib::to_string(err);
    if (err == httplib::Error::ConnectionTimeout || err == httplib::Error::Read) throw TimeoutError(what);
    const bool transient = err != httplib::Error::SSLConnection && err != httplib::Error::SSLLoadingCerts &&
                           err != httplib::Error::SSLServerVerification;
    throw BackendError(what, transient);
  }
  if (result->status < 200 || result->status >= 300) {
    throw HttpStatusError(result->status, "POST " + path_ + " returned HTTP " + std::to_string(result->status));
  }

  auto reply = Json::parse(result->body, nullptr, false);
  if (reply.is_discarded()) throw BackendError("chat completion reply is not JSON", false);
  try {
    const auto& content = reply.at("choices").at(0).at("message").at("content");
    return content.is_string() ? content.get<std::string>() : content.dump();
  } catch (const Json::exception&) {
    throw BackendError("chat completion reply lacks choices[0].message.content", false);
  }
}

LlmResponse HttpBackend::complete(const LlmRequest& request) {
  SlotGuard slot(limiter_->slots);
  const auto t0 = std::chrono::steady_clock::now();
  LlmRequest attempt = request;
  for (attempt.attempt = 1;; ++attempt.attempt) {
    try {
      LlmResponse r;
      r.request_id = request.id;
      r.text = attempt_once(attempt);
      r.backend = label();
      r.attempts = attempt.attempt;
      r.latency = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      return r;
    } catch (const BackendError& e) {
      if (!e.transient() || attempt.attempt >= settings_.max_attempts) throw;
    }
    const double delay = settings_.backoff_base * std::pow(settings_.backoff_factor, attempt.attempt - 1);
    std::this_thread::sleep_for(std::chrono::duration<double>(delay));
    retries_.fetch_add(1);
  }
}

}  // namespace casevo
