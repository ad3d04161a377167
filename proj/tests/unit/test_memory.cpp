#include <doctest.h>

#include <cmath>

#include "casevo/core/errors.hpp"
#include "casevo/llm/backend.hpp"
#include "casevo/llm/gateway.hpp"
#include "casevo/memory/embedder.hpp"
#include "casevo/memory/memory_store.hpp"
#include "oracles.hpp"

using namespace casevo;
using casevo::testing::random_sentence;
using casevo::testing::retrieval_oracle;

namespace {

std::shared_ptr<HashingEmbedder> embedder() { return std::make_shared<HashingEmbedder>(64, 0); }

std::vector<std::uint64_t> ids_of(const std::vector<MemoryItem>& items) {
  std::vector<std::uint64_t> out;
  for (const auto& i : items) out.push_back(i.id);
  return out;
}

LlmGateway scripted_gateway(const std::string& summary) {
  TemplateRegistry reg;
  reg.add("consolidate", "Summarise:\n{memories}");
  auto table = ScriptTable::from_json(
      Json{{"rows", Json::array({Json{{"phase", "consolidate"}, {"agent", "*"}, {"round", "*"}, {"response_text", summary}}})}});
  return LlmGateway(reg, std::make_shared<ScriptedBackend>(table));
}

}  // namespace

TEST_CASE("hashing embedder is deterministic and normalised") {
  HashingEmbedder e;
  const auto a = e.embed("Tax cuts and energy independence");
  CHECK(a.size() == 64);
  CHECK(a == e.embed("tax CUTS and energy independence!"));
  double norm = 0.0;
  for (double x : a) norm += x * x;
  CHECK(norm == doctest::Approx(1.0).epsilon(1e-12));
  for (double x : e.embed("  ...  ")) CHECK(x == 0.0);
  CHECK(e.embed("jobs tax") != e.embed("tax jobs"));
  CHECK(HashingEmbedder(64, 1).embed("tax") != e.embed("tax"));
}

TEST_CASE("cosine similarity") {
  HashingEmbedder e;
  const auto a = e.embed("healthcare coverage for everyone");
  const auto b = e.embed("healthcare costs");
  CHECK(cosine_similarity(a, b) == cosine_similarity(b, a));
  CHECK(cosine_similarity(a, a) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(cosine_similarity(a, b) == doctest::Approx(casevo::testing::plain_cosine(a, b)).epsilon(1e-12));
  const std::vector<double> zero(64, 0.0);
  CHECK(cosine_similarity(zero, a) == 0.0);
  CHECK(cosine_similarity(zero, zero) == 0.0);
  const std::vector<double> short_vec(3, 1.0);
  CHECK_THROWS_AS(cosine_similarity(short_vec, a), EmbedderError);
  const std::vector<double> x{1.0, 0.0}, y{1.0, 1.0};
  CHECK(cosine_similarity(x, y) == doctest::Approx(1.0 / std::sqrt(2.0)));
}

TEST_CASE("add keeps a bounded short-term window") {
  MemoryStore store("agent_0", embedder(), 4);
  const auto& first = store.add(0, MemoryKind::Observation, "debate one");
  CHECK(first.id == 0);
  CHECK(store.short_term_size() == 1);
  CHECK(store.long_term().size() == 1);
  for (int i = 1; i <= 4; ++i) store.add(i, MemoryKind::Discussion, "item " + std::to_string(i));
  CHECK(store.short_term_size() == 4);
  CHECK(store.long_term().size() == 5);
  const auto window = store.recent(10);
  CHECK(ids_of(window) == std::vector<std::uint64_t>{1, 2, 3, 4});
  CHECK_THROWS_AS(store.add(5, MemoryKind::Observation, ""), ParamError);
}

TEST_CASE("identical texts are stored separately") {
  MemoryStore store("agent_0", embedder());
  const auto a = store.add(0, MemoryKind::Observation, "same").id;
  const auto b = store.add(0, MemoryKind::Observation, "same").id;
  CHECK(a != b);
  CHECK(store.long_term().size() == 2);
}

TEST_CASE("recent returns the newest items oldest first") {
  MemoryStore store("agent_0", embedder());
  CHECK(store.recent(3).empty());
  store.add(0, MemoryKind::Observation, "A");
  store.add(0, MemoryKind::Observation, "B");
  store.add(0, MemoryKind::Observation, "C");
  const auto r = store.recent(2);
  REQUIRE(r.size() == 2);
  CHECK(r[0].text == "B");
  CHECK(r[1].text == "C");
  CHECK(store.recent(99).size() == 3);
}

TEST_CASE("retrieval basics") {
  MemoryStore store("agent_0", embedder());
  CHECK(store.retrieve("anything", 3).empty());
  store.add(0, MemoryKind::Observation, "climate and clean energy");
  store.add(0, MemoryKind::Observation, "tax cuts for families");
  store.add(1, MemoryKind::Discussion, "police reform now");
  const auto top = store.retrieve("tax cuts for families", 5);
  REQUIRE(top.size() == 3);
  CHECK(top[0].text == "tax cuts for families");
  CHECK_THROWS_AS(store.retrieve("x", 0), ParamError);
}

TEST_CASE("retrieval ties prefer the newer round then the higher id") {
  MemoryStore store("agent_0", embedder());
  store.add(2, MemoryKind::Observation, "jobs");  // id 0
  store.add(1, MemoryKind::Observation, "jobs");  // id 1
  store.add(2, MemoryKind::Observation, "jobs");  // id 2
  CHECK(ids_of(store.retrieve("jobs", 3)) == std::vector<std::uint64_t>{2, 0, 1});
}

TEST_CASE("retrieval matches an exhaustive scan") {
  const auto e = embedder();
  MemoryStore store("agent_0", e);
  Rng rng(2024);
  for (int i = 0; i < 1000; ++i) {
    store.add(static_cast<int>(rng.below(6)), MemoryKind::Observation, random_sentence(rng));
  }
  for (int q = 0; q < 100; ++q) {
    const auto query = random_sentence(rng);
    CHECK(ids_of(store.retrieve(query, 10)) == retrieval_oracle(store, *e, query, 10));
  }
}

TEST_CASE("underfull retrieval returns what exists") {
  MemoryStore store("agent_0", embedder());
  store.add(0, MemoryKind::Observation, "one");
  store.add(0, MemoryKind::Observation, "two");
  CHECK(store.retrieve("one", 5).size() == 2);
}

TEST_CASE("consolidate stores the backend summary as a reflection") {
  auto llm = scripted_gateway("X");
  MemoryStore store("agent_3", embedder());
  CHECK_THROWS_AS(consolidate(store, llm, 0), ParamError);
  store.add(0, MemoryKind::Discussion, "a");
  store.add(0, MemoryKind::Discussion, "b");
  store.add(0, MemoryKind::Discussion, "c");
  const auto& item = consolidate(store, llm, 0);
  CHECK(item.text == "X");
  CHECK(item.kind == MemoryKind::Reflection);
  CHECK(store.long_term().size() == 4);
  CHECK(store.short_term_size() == 4);
}

TEST_CASE("memory dump form omits embeddings") {
  MemoryStore store("agent_0", embedder());
  const auto j = to_json(store.add(3, MemoryKind::Reflection, "note"));
  CHECK(j == Json{{"id", 0}, {"round", 3}, {"kind", "reflection"}, {"text", "note"}});
  CHECK(format_memories({}) == "(none)");
  CHECK(format_memories(store.recent(1)) == "- [round 3, reflection] note");
}
