#include "casevo/llm/backend.hpp"

#include <chrono>
#include <fstream>
#include <thread>

#include "casevo/core/errors.hpp"
#include "casevo/util/random.hpp"

namespace casevo {

namespace {

void sleep_ms(double ms) {
  if (ms > 0.0) std::this_thread::sleep_for(std::chrono::duration<double, std::milli>(ms));
}

std::optional<std::string> wildcard_string(const Json& j, const char* key) {
  if (!j.contains(key)) return std::nullopt;
  const auto& v = j[key];
  if (!v.is_string()) throw ConfigError(std::string("script row '") + key + "' must be a string");
  auto s = v.get<std::string>();
  if (s == "*") return std::nullopt;
  return s;
}

std::optional<int> wildcard_round(const Json& j) {
  if (!j.contains("round")) return std::nullopt;
  const auto& v = j["round"];
  if (v.is_string() && v.get<std::string>() == "*") return std::nullopt;
  if (!v.is_number_integer() || v.get<int>() < 0) {
    throw ConfigError("script row 'round' must be a non-negative integer or \"*\"");
  }
  return v.get<int>();
}

template <class T>
T get_or(const Json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j[key].get<T>();
  } catch (const Json::exception& e) {
    throw ConfigError(std::string("backend field '") + key + "': " + e.what());
  }
}

}  // namespace

std::string_view to_string(BackendKind kind) noexcept {
  switch (kind) {
    case BackendKind::Scripted: return "scripted";
    case BackendKind::Echo: return "echo";
    case BackendKind::Http: return "http";
  }
  return "scripted";
}

BackendSpec BackendSpec::from_json(const Json& j, const std::filesystem::path& base_dir) {
  if (!j.is_object()) throw ConfigError("backend must be an object");
  if (!j.contains("kind") || !j["kind"].is_string()) throw ConfigError("backend.kind is required");
  const auto kind = j["kind"].get<std::string>();

  static const std::vector<std::string> http_keys = {"endpoint", "model", "auth_env", "timeout_s",
                                                     "max_in_flight", "max_attempts", "backoff_base_s",
                                                     "backoff_factor"};
  const auto has_any_http = [&] {
    for (const auto& k : http_keys)
      if (j.contains(k)) return true;
    return false;
  };

  BackendSpec spec;
  spec.params.temperature = get_or(j, "temperature", 0.0);
  spec.params.max_tokens = get_or(j, "max_tokens", 1024);
  spec.delay_ms = get_or(j, "delay_ms", 0.0);
  if (spec.delay_ms < 0.0) throw ConfigError("backend.delay_ms must be >= 0");
  if (spec.params.max_tokens <= 0) throw ConfigError("backend.max_tokens must be positive");

  if (kind == "scripted") {
    spec.kind = BackendKind::Scripted;
    if (has_any_http()) throw ConfigError("scripted backend does not take http parameters");
    if (!j.contains("script") || !j["script"].is_string()) throw ConfigError("scripted backend needs 'script'");
    std::filesystem::path p = j["script"].get<std::string>();
    spec.script = p.is_relative() && !base_dir.empty() ? base_dir / p : p;
  } else if (kind == "echo") {
    spec.kind = BackendKind::Echo;
    if (has_any_http() || j.contains("script")) throw ConfigError("echo backend takes no parameters");
  } else if (kind == "http") {
    spec.kind = BackendKind::Http;
    if (j.contains("script") || j.contains("delay_ms")) {
      throw ConfigError("http backend does not take scripted parameters");
    }
    if (!j.contains("endpoint") || !j["endpoint"].is_string()) throw ConfigError("http backend needs 'endpoint'");
    if (!j.contains("model") || !j["model"].is_string()) throw ConfigError("http backend needs 'model'");
    auto& h = spec.http;
    h.endpoint = j["endpoint"].get<std::string>();
    h.model = j["model"].get<std::string>();
    h.auth_env = get_or<std::string>(j, "auth_env", "");
    h.timeout = get_or(j, "timeout_s", 60.0);
    h.max_in_flight = get_or<std::size_t>(j, "max_in_flight", 8);
    h.max_attempts = get_or(j, "max_attempts", 3);
    h.backoff_base = get_or(j, "backoff_base_s", 0.5);
    h.backoff_factor = get_or(j, "backoff_factor", 2.0);
    if (h.endpoint.rfind("http://", 0) != 0 && h.endpoint.rfind("https://", 0) != 0) {
      throw ConfigError("http endpoint must start with http:// or https://");
    }
    if (h.timeout <= 0.0) throw ConfigError("timeout_s must be positive");
    if (h.max_in_flight == 0) throw ConfigError("max_in_flight must be >= 1");
    if (h.max_attempts < 1 || h.max_attempts > 3) throw ConfigError("max_attempts must be in [1, 3]");
    if (h.backoff_base < 0.0 || h.backoff_factor < 1.0) throw ConfigError("invalid backoff parameters");
  } else {
    throw ConfigError("unknown backend kind '" + kind + "'");
  }
  return spec;
}

LlmResponse EchoBackend::complete(const LlmRequest& request) {
  const auto t0 = std::chrono::steady_clock::now();
  sleep_ms(delay_ms_);
  LlmResponse r;
  r.request_id = request.id;
  r.text = request.prompt;
  r.backend = label();
  r.latency = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

void ScriptTable::add(ScriptRow row) {
  if (row.responses.empty()) throw ConfigError("script row for phase '" + row.phase + "' has no response");
  for (const auto& existing : rows_) {
    if (existing.phase == row.phase && existing.agent == row.agent && existing.round == row.round) {
      throw ConfigError("duplicate script row for phase '" + row.phase + "'");
    }
  }
  rows_.push_back(std::move(row));
}

const ScriptRow* ScriptTable::match(std::string_view phase, std::string_view agent, int round) const {
  const ScriptRow* best = nullptr;
  int best_rank = -1;
  for (const auto& row : rows_) {
    if (row.phase != phase) continue;
    if (row.agent && *row.agent != agent) continue;
    if (row.round && *row.round != round) continue;
    const int rank = (row.agent ? 2 : 0) + (row.round ? 1 : 0);
    if (rank > best_rank) {
      best = &row;
      best_rank = rank;
    }
  }
  return best;
}

ScriptTable ScriptTable::from_json(const Json& j) {
  const Json* rows = &j;
  if (j.is_object()) {
    if (!j.contains("rows")) throw ConfigError("script table needs a 'rows' array");
    rows = &j["rows"];
  }
  if (!rows->is_array()) throw ConfigError("script rows must be an array");

  ScriptTable table;
  for (const auto& r : *rows) {
    if (!r.is_object() || !r.contains("phase") || !r["phase"].is_string()) {
      throw ConfigError("script row needs a string 'phase'");
    }
    ScriptRow row;
    row.phase = r["phase"].get<std::string>();
    row.agent = wildcard_string(r, "agent");
    row.round = wildcard_round(r);
    if (!r.contains("response_text")) throw ConfigError("script row for '" + row.phase + "' needs 'response_text'");
    const auto& text = r["response_text"];
    const auto push = [&](const Json& v) {
      if (v.is_string()) {
        row.responses.push_back(v.get<std::string>());
      } else if (v.is_object() || v.is_array()) {
        // Structured payloads are stored in the fenced form a model would emit.
        row.responses.push_back("```json\n" + v.dump() + "\n```");
      } else {
        throw ConfigError("script response must be text or a JSON object");
      }
    };
    if (text.is_array() && !text.empty() && (text[0].is_string() || text[0].is_object())) {
      for (const auto& alt : text) push(alt);
    } else {
      push(text);
    }
    table.add(std::move(row));
  }
  return table;
}

ScriptTable ScriptTable::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open script table '" + path.string() + "'");
  auto j = Json::parse(in, nullptr, false);
  if (j.is_discarded()) throw ConfigError("script table '" + path.string() + "' is not valid JSON");
  return from_json(j);
}

ScriptedBackend::ScriptedBackend(ScriptTable table, double delay_ms)
    : table_(std::move(table)), delay_ms_(delay_ms) {}

LlmResponse ScriptedBackend::complete(const LlmRequest& request) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto* row = table_.match(request.tag, request.agent, request.round);
  if (!row) {
    throw ScriptMissError("no script row for (phase=" + request.tag + ", agent=" + request.agent +
                          ", round=" + std::to_string(request.round) + ")");
  }
  sleep_ms(delay_ms_);
  std::size_t pick = 0;
  if (row->responses.size() > 1) {
    const auto key = request.tag + "|" + request.agent + "|" + std::to_string(request.round);
    pick = splitmix64(fnv1a(key)) % row->responses.size();
  }
  LlmResponse r;
  r.request_id = request.id;
  r.text = row->responses[pick];
  r.backend = label();
  r.latency = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

std::unique_ptr<Backend> make_backend(const BackendSpec& spec) {
  switch (spec.kind) {
    case BackendKind::Echo: return std::make_unique<EchoBackend>(spec.delay_ms);
    case BackendKind::Scripted: return std::make_unique<ScriptedBackend>(ScriptTable::load(spec.script), spec.delay_ms);
    case BackendKind::Http: return std::make_unique<HttpBackend>(spec.http);
  }
  throw ConfigError("unknown backend kind");
}

}  // namespace casevo
