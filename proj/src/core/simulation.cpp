#include "casevo/core/simulation.hpp"

#include <algorithm>
#include <set>

#include "casevo/core/errors.hpp"

namespace casevo {

std::string_view to_string(Phase phase) noexcept {
  switch (phase) {
    case Phase::Listen: return "listen";
    case Phase::Discuss: return "discuss";
    case Phase::Reflect: return "reflect";
    case Phase::Vote: return "vote";
  }
  return "listen";
}

std::optional<Phase> phase_from_string(std::string_view s) noexcept {
  if (s == "listen") return Phase::Listen;
  if (s == "discuss") return Phase::Discuss;
  if (s == "reflect") return Phase::Reflect;
  if (s == "vote") return Phase::Vote;
  return std::nullopt;
}

RecordType record_type(Phase phase) noexcept {
  switch (phase) {
    case Phase::Listen: return RecordType::Listen;
    case Phase::Discuss: return RecordType::Discuss;
    case Phase::Reflect: return RecordType::Reflect;
    case Phase::Vote: return RecordType::Vote;
  }
  return RecordType::Event;
}

Simulation::Simulation(SimConfig config, std::unique_ptr<Scenario> scenario)
    : config_((config.validate(), std::move(config))),
      scenario_(std::move(scenario)),
      pool_(config_.workers),
      log_(config_.log_path) {
  if (!scenario_) throw ConfigError("simulation needs a scenario");
  const auto phases = scenario_->phases();
  if (phases.empty()) throw ConfigError("scenario declares no phases");
  std::set<Phase> seen(phases.begin(), phases.end());
  if (seen.size() != phases.size()) throw ConfigError("scenario phase list has duplicates");
}

void Simulation::schedule_event(GlobalEvent event) { events_.schedule(std::move(event), clock_.ts); }

void Simulation::log(const LogRecord& record) {
  if (record.ts != clock_.ts) {
    throw Error("record ts " + std::to_string(record.ts) + " does not match round " + std::to_string(clock_.ts));
  }
  log_.append(record);
}

void Simulation::on_round_end(std::function<void(const RoundSummary&)> observer) {
  observers_.push_back(std::move(observer));
}

void Simulation::ensure_setup() {
  if (setup_done_) return;
  setup_done_ = true;
  scenario_->setup(*this);
}

void Simulation::mark_truncated(const std::string& reason) {
  if (truncated_ || !log_.is_open()) return;
  truncated_ = true;
  try {
    Json item = Json::object();
    item["truncated"] = true;
    item["error"] = reason;
    log_.append(LogRecord::environment(clock_.ts, RecordType::Event, std::move(item)));
    log_.close();
  } catch (...) {
    // The original failure is what gets reported.
  }
}

RoundSummary Simulation::step() {
  if (finished()) throw Error("simulation already ran all " + std::to_string(config_.num_rounds) + " rounds");
  if (truncated_) throw Error("simulation was aborted");

  try {
    ensure_setup();
    const int ts = clock_.ts;
    const auto lines_before = log_.lines();

    auto events = events_.take(ts);
    for (const auto& ev : events) {
      Json item = Json::object();
      item["content"] = ev.text;
      for (const auto& [k, v] : ev.metadata.items()) item[k] = v;
      log(LogRecord::environment(ts, RecordType::Event, std::move(item)));
    }
    scenario_->deliver(ts, events);

    const RoundContext ctx{ts, pool_};
    for (const auto phase : scenario_->phases()) {
      clock_.phase = phase;
      auto records = scenario_->run_phase(phase, ctx);
      std::stable_sort(records.begin(), records.end(), canonical_less);
      for (const auto& r : records) log(r);
    }
    clock_.phase.reset();

    RoundSummary summary{ts, log_.lines() - lines_before, scenario_->end_round(ts)};
    log_.flush();

    const auto retries = scenario_->backend_retries();
    pool_.add_retries(retries - retries_seen_);
    retries_seen_ = retries;

    summaries_.push_back(summary);
    ++clock_.ts;
    for (const auto& obs : observers_) obs(summary);
    return summary;
  } catch (const BatchError& e) {
    mark_truncated(e.what());
    std::rethrow_exception(e.failures().front().error);
  } catch (const std::exception& e) {
    mark_truncated(e.what());
    throw;
  }
}

SimulationResult Simulation::run() {
  while (!finished()) step();
  log_.close();
  SimulationResult result;
  result.rounds = summaries_;
  result.log_path = log_.path();
  result.truncated = truncated_;
  result.metrics = pool_.metrics();
  return result;
}

void ScenarioRegistry::add(std::string name, ScenarioFactory factory) {
  factories_.insert_or_assign(std::move(name), std::move(factory));
}

bool ScenarioRegistry::contains(std::string_view name) const { return factories_.find(name) != factories_.end(); }

std::unique_ptr<Scenario> ScenarioRegistry::create(const SimConfig& config) const {
  auto it = factories_.find(config.scenario.name);
  if (it == factories_.end()) throw ConfigError("unknown scenario '" + config.scenario.name + "'");
  return it->second(config);
}

SimulationResult run(const SimConfig& config, const ScenarioRegistry& registry) {
  config.validate();
  Simulation sim(config, registry.create(config));
  return sim.run();
}

}  // namespace casevo
