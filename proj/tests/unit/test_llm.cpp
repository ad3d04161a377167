#include <doctest.h>

#include <set>
#include <thread>

#include "casevo/core/errors.hpp"
#include "casevo/llm/backend.hpp"
#include "casevo/llm/gateway.hpp"
#include "casevo/llm/prompt_template.hpp"
#include "casevo/llm/structured.hpp"
#include "casevo/util/random.hpp"

using namespace casevo;

TEST_CASE("render substitutes placeholders") {
  CHECK(render(PromptTemplate("hello", "Hello {name}"), {{"name", "Alex Thompson"}}) == "Hello Alex Thompson");
  CHECK(PromptTemplate("plain", "no vars here").render({}) == "no vars here");
  CHECK(PromptTemplate("dotted", "{agent.name} is {agent.age}").render({{"agent.name", "Ana"}, {"agent.age", "40"}}) ==
        "Ana is 40");
}

TEST_CASE("literal braces") {
  const PromptTemplate t("json", R"(Reply {{"Trump": {score}}})");
  CHECK(t.placeholders() == std::vector<std::string>{"score"});
  CHECK(t.render({{"score", "0.8"}}) == R"(Reply {"Trump": 0.8})");
}

TEST_CASE("missing variable names the first missing placeholder") {
  const PromptTemplate t("t", "{round}: {topic} and {speaker}");
  try {
    t.render({{"round", "1"}});
    FAIL("expected MissingVarError");
  } catch (const MissingVarError& e) {
    CHECK(e.var() == "topic");
  }
}

TEST_CASE("malformed templates are rejected") {
  CHECK_THROWS_AS(PromptTemplate("t", "open {brace"), TemplateSyntaxError);
  CHECK_THROWS_AS(PromptTemplate("t", "stray } brace"), TemplateSyntaxError);
  CHECK_THROWS_AS(PromptTemplate("t", "{bad name}"), TemplateSyntaxError);
}

TEST_CASE("render is idempotent and leaves no delimiters") {
  const PromptTemplate t("t", "{a}-{b}-{a}");
  const TemplateVars vars{{"a", "x"}, {"b", "y"}};
  CHECK(t.render(vars) == t.render(vars));
  CHECK(t.render(vars) == "x-y-x");
  CHECK(t.placeholders() == std::vector<std::string>{"a", "b"});
}

TEST_CASE("registry") {
  auto reg = TemplateRegistry::from_json(Json{{"a", "A {x}"}, {"b", Json::array({"line1", "line2"})}});
  CHECK(reg.contains("a"));
  CHECK(reg.get("b").body() == "line1\nline2");
  try {
    reg.get("zzz");
    FAIL("expected MissingTemplateError");
  } catch (const MissingTemplateError& e) {
    CHECK(e.name() == "zzz");
  }
}

TEST_CASE("structured output extraction") {
  CHECK(parse_structured("Sure! ```json {\"a\":1} ```") == Json{{"a", 1}});
  CHECK(parse_structured("{\"Identity\": 0.6}") == Json{{"Identity", 0.6}});
  CHECK(parse_structured("preamble {\"x\": {\"y\": \"}\"}} trailing {\"z\": 2}") == Json{{"x", {{"y", "}"}}}});
  CHECK(parse_structured("{\"early\":1}\n```json\n{\"fenced\":2}\n```") == Json{{"fenced", 2}});
  CHECK_THROWS_AS(parse_structured("no json here"), ParseError);
  CHECK_THROWS_AS(parse_structured("{broken"), ParseError);
}

TEST_CASE("wrap then parse round-trips random payloads") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    Rng rng(seed);
    Json payload = Json::object();
    const auto fields = 1 + rng.below(5);
    for (std::uint64_t f = 0; f < fields; ++f) {
      const auto key = "k" + std::to_string(rng.below(1000));
      switch (rng.below(4)) {
        case 0: payload[key] = static_cast<double>(rng.below(2001)) / 1000.0 - 1.0; break;
        case 1: payload[key] = "text with } and { and ``` ticks " + std::to_string(rng.next()); break;
        case 2: payload[key] = Json::array({1, "two", nullptr}); break;
        default: payload[key] = Json{{"nested", rng.bernoulli(0.5)}};
      }
    }
    CHECK(parse_structured(wrap_structured(payload)) == payload);
  }
}

TEST_CASE("echo backend returns the prompt") {
  EchoBackend echo;
  LlmRequest req;
  req.prompt = "abc";
  CHECK(echo.complete(req).text == "abc");
}

namespace {

ScriptTable table_from(const Json& rows) { return ScriptTable::from_json(Json{{"rows", rows}}); }

LlmRequest request(std::string tag, std::string agent, int round) {
  LlmRequest r;
  r.tag = std::move(tag);
  r.agent = std::move(agent);
  r.round = round;
  return r;
}

}  // namespace

TEST_CASE("scripted backend precedence") {
  ScriptedBackend b(table_from(Json::array({
      Json{{"phase", "vote"}, {"agent", "*"}, {"round", "*"}, {"response_text", "any"}},
      Json{{"phase", "vote"}, {"agent", "*"}, {"round", 2}, {"response_text", "round2"}},
      Json{{"phase", "vote"}, {"agent", "agent_60"}, {"round", "*"}, {"response_text", Json{{"Trump", 0.8}, {"Biden", -0.5}}}},
      Json{{"phase", "vote"}, {"agent", "agent_60"}, {"round", 2}, {"response_text", "exact"}},
  })));
  CHECK(b.complete(request("vote", "agent_60", 2)).text == "exact");
  CHECK(parse_structured(b.complete(request("vote", "agent_60", 0)).text) == Json{{"Trump", 0.8}, {"Biden", -0.5}});
  CHECK(b.complete(request("vote", "agent_1", 2)).text == "round2");
  CHECK(b.complete(request("vote", "agent_1", 0)).text == "any");
  CHECK_THROWS_AS(b.complete(request("listen", "agent_1", 0)), ScriptMissError);
}

TEST_CASE("scripted alternatives are a stable function of the key") {
  const auto rows = Json::array(
      {Json{{"phase", "p"}, {"agent", "*"}, {"round", "*"}, {"response_text", Json::array({"a", "b", "c", "d"})}}});
  ScriptedBackend one(table_from(rows));
  ScriptedBackend two(table_from(rows));
  std::set<std::string> seen;
  for (int a = 0; a < 40; ++a) {
    const auto r = request("p", "agent_" + std::to_string(a), a % 3);
    const auto t = one.complete(r).text;
    CHECK(t == two.complete(r).text);
    CHECK(t == one.complete(r).text);
    seen.insert(t);
  }
  CHECK(seen.size() > 1);
}

TEST_CASE("script table rejects duplicates and bad rows") {
  CHECK_THROWS_AS(table_from(Json::array({Json{{"phase", "p"}, {"response_text", "x"}},
                                          Json{{"phase", "p"}, {"agent", "*"}, {"round", "*"}, {"response_text", "y"}}})),
                  ConfigError);
  CHECK_THROWS_AS(table_from(Json::array({Json{{"phase", "p"}}})), ConfigError);
  CHECK_THROWS_AS(table_from(Json::array({Json{{"phase", "p"}, {"round", -1}, {"response_text", "x"}}})), ConfigError);
}

TEST_CASE("backend settings require one kind's parameters") {
  CHECK(BackendSpec::from_json(Json{{"kind", "echo"}}).kind == BackendKind::Echo);
  CHECK_THROWS_AS(BackendSpec::from_json(Json{{"kind", "scripted"}}), ConfigError);
  CHECK_THROWS_AS(BackendSpec::from_json(Json{{"kind", "echo"}, {"endpoint", "http://x"}}), ConfigError);
  CHECK_THROWS_AS(BackendSpec::from_json(Json{{"kind", "http"}, {"model", "m"}}), ConfigError);
  CHECK_THROWS_AS(BackendSpec::from_json(Json{{"kind", "http"}, {"endpoint", "http://x"}, {"model", "m"}, {"max_attempts", 4}}),
                  ConfigError);
  const auto spec = BackendSpec::from_json(
      Json{{"kind", "http"}, {"endpoint", "http://x/v1"}, {"model", "m"}, {"temperature", 0.3}, {"max_tokens", 64}});
  CHECK(spec.http.max_attempts == 3);
  CHECK(spec.http.backoff_base == doctest::Approx(0.5));
  CHECK(spec.http.backoff_factor == doctest::Approx(2.0));
  CHECK(spec.params.temperature == doctest::Approx(0.3));
  CHECK(spec.params.max_tokens == 64);
}

TEST_CASE("gateway numbers requests in submission order") {
  TemplateRegistry reg;
  reg.add("greet", "Hi {who}");
  LlmGateway gw(reg, std::make_shared<EchoBackend>());
  const auto a = gw.call("greet", {{"who", "A"}}, "agent_0", 0);
  const auto b = gw.complete("raw", "tag", "agent_1", 0);
  CHECK(a.text == "Hi A");
  CHECK(b.text == "raw");
  CHECK(a.request_id < b.request_id);
  CHECK(gw.requests_issued() == 2);
  CHECK_THROWS_AS(gw.call("nope", {}, "agent_0", 0), MissingTemplateError);
}

TEST_CASE("gateway ids stay unique under concurrency") {
  LlmGateway gw(TemplateRegistry{}, std::make_shared<EchoBackend>());
  std::vector<std::vector<std::uint64_t>> ids(4);
  std::vector<std::thread> ts;
  for (std::size_t t = 0; t < ids.size(); ++t) {
    ts.emplace_back([&, t] {
      for (int i = 0; i < 250; ++i) {
        const auto id = gw.complete("x", "tag", "agent_0", 0).request_id;
        if (!ids[t].empty()) CHECK(id > ids[t].back());
        ids[t].push_back(id);
      }
    });
  }
  for (auto& t : ts) t.join();
  std::set<std::uint64_t> all;
  for (const auto& v : ids) all.insert(v.begin(), v.end());
  CHECK(all.size() == 1000);
}
