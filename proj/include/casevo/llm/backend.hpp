#pragma once

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "casevo/core/json.hpp"

namespace casevo {

enum class BackendKind { Scripted, Echo, Http };

std::string_view to_string(BackendKind kind) noexcept;

struct LlmParams {
  double temperature = 0.0;
  int max_tokens = 1024;
};

struct LlmRequest {
  std::uint64_t id = 0;
  std::string agent;  // "agent_<n>", or "" for environment-level calls
  int round = 0;
  std::string tag;  // template / phase tag; scripted tables key on it
  std::string prompt;
  LlmParams params;
  int attempt = 1;
};

struct LlmResponse {
  std::uint64_t request_id = 0;
  std::string text;
  double latency = 0.0;  // seconds
  std::string backend;
  int attempts = 1;
};

struct HttpSettings {
  std::string endpoint;  // base URL, e.g. http://127.0.0.1:8000/v1
  std::string model;
  std::string auth_env;  // env var holding the bearer token; empty = no auth
  double timeout = 60.0;  // seconds
  std::size_t max_in_flight = 8;
  int max_attempts = 3;
  double backoff_base = 0.5;  // seconds
  double backoff_factor = 2.0;
};

struct BackendSpec {
  BackendKind kind = BackendKind::Scripted;
  std::filesystem::path script;  // scripted only
  double delay_ms = 0.0;         // artificial per-call latency (scripted/echo)
  HttpSettings http;
  LlmParams params;

  // Relative paths resolve against base_dir. Throws ConfigError.
  static BackendSpec from_json(const Json& j, const std::filesystem::path& base_dir = {});
};

class Backend {
 public:
  virtual ~Backend() = default;

  // Must be callable concurrently from several execution units.
  virtual LlmResponse complete(const LlmRequest& request) = 0;

  virtual BackendKind kind() const noexcept = 0;
  virtual std::string label() const = 0;

  // Attempts beyond the first, summed over all requests.
  virtual std::uint64_t retries() const noexcept { return 0; }
};

class EchoBackend final : public Backend {
 public:
  explicit EchoBackend(double delay_ms = 0.0) : delay_ms_(delay_ms) {}
  LlmResponse complete(const LlmRequest& request) override;
  BackendKind kind() const noexcept override { return BackendKind::Echo; }
  std::string label() const override { return "echo"; }

 private:
  double delay_ms_;
};

struct ScriptRow {
  std::string phase;
  std::optional<std::string> agent;  // nullopt = wildcard
  std::optional<int> round;          // nullopt = wildcard
  std::vector<std::string> responses;
};

// Table of canned responses. Lookup precedence, most specific first:
// (phase, agent, round) > (phase, agent, *) > (phase, *, round) > (phase, *, *).
class ScriptTable {
 public:
  // Throws ConfigError on a duplicate key or an empty response list.
  void add(ScriptRow row);
  const ScriptRow* match(std::string_view phase, std::string_view agent, int round) const;
  std::size_t size() const noexcept { return rows_.size(); }

  // {"rows": [{"phase", "agent", "round", "response_text"}]}; agent/round
  // accept "*"; response_text may be a string or a list of alternatives.
  static ScriptTable from_json(const Json& j);
  static ScriptTable load(const std::filesystem::path& path);

 private:
  std::vector<ScriptRow> rows_;
};

// Deterministic table-driven stand-in for a model. With several alternatives
// in a row, the pick is a stable hash of (phase, agent, round).
class ScriptedBackend final : public Backend {
 public:
  explicit ScriptedBackend(ScriptTable table, double delay_ms = 0.0);
  LlmResponse complete(const LlmRequest& request) override;
  BackendKind kind() const noexcept override { return BackendKind::Scripted; }
  std::string label() const override { return "scripted"; }

 private:
  ScriptTable table_;
  double delay_ms_;
};

// OpenAI-compatible chat-completions client with exponential backoff.
class HttpBackend final : public Backend {
 public:
  explicit HttpBackend(HttpSettings settings);
  ~HttpBackend() override;

  LlmResponse complete(const LlmRequest& request) override;
  BackendKind kind() const noexcept override { return BackendKind::Http; }
  std::string label() const override;
  std::uint64_t retries() const noexcept override { return retries_.load(); }

  const HttpSettings& settings() const noexcept { return settings_; }

  // Request body for the wire protocol; exposed for tests.
  static Json request_body(const HttpSettings& settings, const LlmRequest& request);

 private:
  std::string attempt_once(const LlmRequest& request);

  struct Limiter;
  HttpSettings settings_;
  std::string scheme_host_port_;
  std::string path_;
  std::unique_ptr<Limiter> limiter_;
  std::atomic<std::uint64_t> retries_{0};
};

std::unique_ptr<Backend> make_backend(const BackendSpec& spec);

}  // namespace casevo
