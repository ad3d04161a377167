#include <doctest.h>

#include <algorithm>
#include <sstream>

#include "casevo/core/config.hpp"
#include "casevo/core/errors.hpp"
#include "casevo/core/event_log.hpp"
#include "casevo/core/event_queue.hpp"
#include "casevo/core/log_record.hpp"
#include "casevo/core/simulation.hpp"
#include "fixtures.hpp"

using namespace casevo;
using casevo::testing::read_file;
using casevo::testing::scratch_dir;

TEST_CASE("log record serializes keys in fixed order") {
  Json item = Json::object();
  item["Trump"] = 0.8;
  item["Biden"] = -0.5;
  const auto r = LogRecord::agent(0, 60, RecordType::Vote, item);
  CHECK(to_line(r) == R"({"ts":0,"owner":"agent_60","type":"vote","item":{"Trump":0.8,"Biden":-0.5},"owner_type":0})");

  const auto env = LogRecord::environment(2, RecordType::Event, Json::object());
  CHECK(to_line(env) == R"({"ts":2,"owner":"public","type":"event","item":{},"owner_type":1})");
}

TEST_CASE("log record round trip and strict parsing") {
  const auto r = LogRecord::agent(3, 7, RecordType::Reflect, Json{{"ori_opinion", nullptr}, {"new_opinion", "x"}});
  CHECK(record_from_json(to_json(r)) == r);

  auto extra = to_json(r);
  extra["extra"] = 1;
  CHECK_THROWS_AS(record_from_json(extra), ParseError);

  auto missing = to_json(r);
  missing.erase("owner_type");
  CHECK_THROWS_AS(record_from_json(missing), ParseError);

  auto bad_type = to_json(r);
  bad_type["type"] = "shout";
  CHECK_THROWS_AS(record_from_json(bad_type), ParseError);

  auto bad_owner_type = to_json(r);
  bad_owner_type["owner_type"] = 2;
  CHECK_THROWS_AS(record_from_json(bad_owner_type), ParseError);
}

TEST_CASE("agent ids") {
  CHECK(agent_id(60) == "agent_60");
  CHECK(agent_index("agent_10") == 10u);
  CHECK_FALSE(agent_index("public").has_value());
  CHECK_FALSE(agent_index("agent_").has_value());
  CHECK_FALSE(agent_index("agent_1x").has_value());
}

TEST_CASE("canonical order puts environment first then numeric agent id") {
  std::vector<LogRecord> rs{LogRecord::agent(0, 10, RecordType::Listen, {}),
                            LogRecord::agent(0, 2, RecordType::Listen, {}),
                            LogRecord::environment(0, RecordType::Event, {}),
                            LogRecord::agent(0, 0, RecordType::Listen, {})};
  std::stable_sort(rs.begin(), rs.end(), canonical_less);
  CHECK(rs[0].owner == "public");
  CHECK(rs[1].owner == "agent_0");
  CHECK(rs[2].owner == "agent_2");
  CHECK(rs[3].owner == "agent_10");
}

TEST_CASE("event queue delivers by round in insertion order") {
  EventQueue q;
  q.schedule({3, "late", Json::object()}, 1);
  q.schedule({2, "A", Json::object()}, 1);
  q.schedule({2, "B", Json::object()}, 1);
  CHECK(q.size() == 3);
  CHECK(q.take(1).empty());
  const auto r2 = q.take(2);
  REQUIRE(r2.size() == 2);
  CHECK(r2[0].text == "A");
  CHECK(r2[1].text == "B");
  CHECK(q.take(2).empty());
  CHECK(q.take(3).at(0).text == "late");
  CHECK(q.empty());
  CHECK_THROWS_AS(q.schedule({0, "old", Json::object()}, 4), PastRoundError);
}

TEST_CASE("event log appends one line per record") {
  const auto dir = scratch_dir("event_log");
  {
    EventLog log(dir / "nested" / "events.jsonl");
    log.append(LogRecord::agent(0, 1, RecordType::Listen, Json::object()));
    log.append(LogRecord::environment(0, RecordType::Event, Json{{"content", "x"}}));
    CHECK(log.lines() == 2);
    log.close();
  }
  const auto text = read_file(dir / "nested" / "events.jsonl");
  CHECK(std::count(text.begin(), text.end(), '\n') == 2);
}

TEST_CASE("config validation") {
  auto base = casevo::testing::reference_config_json();
  CHECK_NOTHROW(SimConfig::from_json(base));

  auto unknown = base;
  unknown["colour"] = "red";
  CHECK_THROWS_AS(SimConfig::from_json(unknown), ConfigError);

  auto zero_agents = base;
  zero_agents["num_agents"] = 0;
  CHECK_THROWS_AS(SimConfig::from_json(zero_agents), ConfigError);

  auto zero_workers = base;
  zero_workers["workers"] = 0;
  CHECK_THROWS_AS(SimConfig::from_json(zero_workers), ConfigError);

  auto tiny_ring = base;
  tiny_ring["num_agents"] = 4;
  CHECK_THROWS_AS(SimConfig::from_json(tiny_ring), ConfigError);

  auto bad_backend = base;
  bad_backend["backend"] = Json{{"kind", "telepathy"}};
  CHECK_THROWS_AS(SimConfig::from_json(bad_backend), ConfigError);

  try {
    SimConfig::load("/nonexistent/casevo.json");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("/nonexistent/casevo.json") != std::string::npos);
  }
}

namespace {

// Three agents that log one record per phase, returned in reverse order.
class ToyScenario final : public Scenario {
 public:
  std::vector<Phase> phases() const override { return {Phase::Listen, Phase::Vote}; }
  void setup(Simulation& sim) override {
    sim.schedule_event({0, "hello", Json{{"topic", "t0"}}});
    sim.schedule_event({1, "again", Json::object()});
  }
  void deliver(int ts, const std::vector<GlobalEvent>& events) override { delivered.emplace_back(ts, events.size()); }
  std::vector<LogRecord> run_phase(Phase phase, const RoundContext& ctx) override {
    if (fail_at && *fail_at == ctx.ts) throw BackendError("down", false);
    std::vector<LogRecord> out;
    for (std::size_t i = 3; i-- > 0;) out.push_back(LogRecord::agent(ctx.ts, i, record_type(phase), Json::object()));
    return out;
  }
  Json end_round(int ts) override { return Json{{"round", ts}}; }

  std::vector<std::pair<int, std::size_t>> delivered;
  std::optional<int> fail_at;
};

SimConfig toy_config(const std::filesystem::path& log, int rounds) {
  SimConfig c;
  c.num_agents = 3;
  c.num_rounds = rounds;
  c.network.kind = NetworkKind::Random;
  c.scenario.name = "toy";
  c.log_path = log;
  return c;
}

}  // namespace

TEST_CASE("simulation commits events first and records in canonical order") {
  const auto dir = scratch_dir("sim_order");
  auto scenario = std::make_unique<ToyScenario>();
  auto* toy = scenario.get();
  Simulation sim(toy_config(dir / "events.jsonl", 2), std::move(scenario));
  std::vector<int> seen;
  sim.on_round_end([&](const RoundSummary& s) { seen.push_back(s.ts); });
  const auto result = sim.run();
  CHECK_FALSE(result.truncated);
  CHECK(result.rounds.size() == 2);
  CHECK(seen == std::vector<int>{0, 1});
  CHECK(toy->delivered == std::vector<std::pair<int, std::size_t>>{{0, 1}, {1, 1}});

  std::istringstream in(read_file(dir / "events.jsonl"));
  std::vector<LogRecord> rs;
  for (std::string line; std::getline(in, line);) rs.push_back(record_from_json(Json::parse(line)));
  REQUIRE(rs.size() == 14);
  CHECK(rs[0].owner == "public");
  CHECK(rs[0].item["content"] == "hello");
  CHECK(rs[0].item["topic"] == "t0");
  CHECK(rs[1].owner == "agent_0");
  CHECK(rs[1].type == RecordType::Listen);
  CHECK(rs[3].owner == "agent_2");
  CHECK(rs[4].type == RecordType::Vote);
  for (std::size_t i = 1; i < rs.size(); ++i) CHECK(rs[i - 1].ts <= rs[i].ts);
  CHECK_THROWS_AS(sim.schedule_event({0, "past", Json::object()}), PastRoundError);
}

TEST_CASE("aborted run leaves a truncation record") {
  const auto dir = scratch_dir("sim_abort");
  auto scenario = std::make_unique<ToyScenario>();
  scenario->fail_at = 1;
  Simulation sim(toy_config(dir / "events.jsonl", 3), std::move(scenario));
  CHECK_THROWS_AS(sim.run(), BackendError);

  std::istringstream in(read_file(dir / "events.jsonl"));
  std::string line, last;
  while (std::getline(in, line)) last = line;
  const auto rec = record_from_json(Json::parse(last));
  CHECK(rec.owner == "public");
  CHECK(rec.ts == 1);
  CHECK(rec.item["truncated"] == true);
}

TEST_CASE("simulation rejects records for another round") {
  const auto dir = scratch_dir("sim_ts");
  Simulation sim(toy_config(dir / "events.jsonl", 1), std::make_unique<ToyScenario>());
  CHECK_THROWS(sim.log(LogRecord::agent(5, 0, RecordType::Vote, Json::object())));
}
