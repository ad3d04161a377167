#include <doctest.h>

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <thread>

#include "casevo/core/errors.hpp"
#include "casevo/core/json.hpp"
#include "casevo/llm/backend.hpp"
#include "stub_server.hpp"

using namespace casevo;
using casevo::testing::StubServer;

namespace {

HttpSettings settings_for(const StubServer& s, double backoff_base = 0.5) {
  HttpSettings h;
  h.endpoint = s.endpoint();
  h.model = "stub-model";
  h.timeout = 5.0;
  h.backoff_base = backoff_base;
  return h;
}

LlmRequest prompt(std::string text) {
  LlmRequest r;
  r.id = 1;
  r.agent = "agent_0";
  r.tag = "vote";
  r.prompt = std::move(text);
  r.params.temperature = 0.0;
  r.params.max_tokens = 32;
  return r;
}

double seconds_between(const StubServer::Hit& a, const StubServer::Hit& b) {
  return std::chrono::duration<double>(b.at - a.at).count();
}

}  // namespace

TEST_CASE("500, 500, 200 succeeds on the third attempt with exponential backoff") {
  StubServer stub({500, 500, 200});
  HttpBackend backend(settings_for(stub));
  const auto r = backend.complete(prompt("ping"));
  CHECK(r.text == "ping");
  CHECK(r.attempts == 3);
  CHECK(backend.retries() == 2);
  const auto hits = stub.hits();
  REQUIRE(hits.size() == 3);
  CHECK(seconds_between(hits[0], hits[1]) == doctest::Approx(0.5).epsilon(0.2));
  CHECK(seconds_between(hits[1], hits[2]) == doctest::Approx(1.0).epsilon(0.15));
  CHECK(seconds_between(hits[0], hits[2]) == doctest::Approx(1.5).epsilon(0.13));
}

TEST_CASE("persistent 5xx gives up after three attempts") {
  StubServer stub({500, 503, 500, 500});
  HttpBackend backend(settings_for(stub, 0.01));
  try {
    backend.complete(prompt("x"));
    FAIL("expected HttpStatusError");
  } catch (const HttpStatusError& e) {
    CHECK(e.status() == 500);
    CHECK(e.transient());
  }
  CHECK(stub.hits().size() == 3);
}

TEST_CASE("client errors are not retried") {
  StubServer stub({}, 404);
  HttpBackend backend(settings_for(stub, 0.01));
  try {
    backend.complete(prompt("x"));
    FAIL("expected HttpStatusError");
  } catch (const HttpStatusError& e) {
    CHECK(e.status() == 404);
    CHECK_FALSE(e.transient());
  }
  CHECK(stub.hits().size() == 1);
}

TEST_CASE("429 is retried") {
  StubServer stub({429, 200});
  HttpBackend backend(settings_for(stub, 0.01));
  CHECK(backend.complete(prompt("ok")).attempts == 2);
}

TEST_CASE("wire format and bearer token") {
  ::setenv("CASEVO_TEST_TOKEN", "s3cret", 1);
  StubServer stub({});
  auto s = settings_for(stub);
  s.auth_env = "CASEVO_TEST_TOKEN";
  HttpBackend backend(s);
  backend.complete(prompt("hello"));
  const auto hits = stub.hits();
  REQUIRE(hits.size() == 1);
  CHECK(hits[0].authorization == "Bearer s3cret");
  const auto body = Json::parse(hits[0].body);
  CHECK(body["model"] == "stub-model");
  CHECK(body["messages"] == Json::array({Json{{"role", "user"}, {"content", "hello"}}}));
  CHECK(body["temperature"] == 0.0);
  CHECK(body["max_tokens"] == 32);
}

TEST_CASE("unreachable endpoint is a transient backend error") {
  std::string endpoint;
  {
    StubServer gone({});
    endpoint = gone.endpoint();
  }
  HttpSettings h;
  h.endpoint = endpoint;
  h.model = "m";
  h.timeout = 1.0;
  h.backoff_base = 0.01;
  HttpBackend backend(h);
  try {
    backend.complete(prompt("x"));
    FAIL("expected BackendError");
  } catch (const BackendError& e) {
    CHECK(e.transient());
  }
  CHECK(backend.retries() == 2);
}

TEST_CASE("in-flight cap limits concurrent requests") {
  std::atomic<int> now{0};
  std::atomic<int> peak{0};
  StubServer stub({}, 200, [&](const std::string& p) {
    const int cur = ++now;
    int prev = peak.load();
    while (cur > prev && !peak.compare_exchange_weak(prev, cur)) {
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(40));
    --now;
    return p;
  });
  auto s = settings_for(stub);
  s.max_in_flight = 2;
  HttpBackend backend(s);
  std::vector<std::thread> clients;
  for (int i = 0; i < 6; ++i) clients.emplace_back([&] { backend.complete(prompt("c")); });
  for (auto& t : clients) t.join();
  CHECK(stub.hits().size() == 6);
  CHECK(peak.load() <= 2);
  CHECK(peak.load() >= 1);
}
