#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "casevo/core/config.hpp"
#include "casevo/core/event_log.hpp"
#include "casevo/core/event_queue.hpp"
#include "casevo/core/log_record.hpp"
#include "casevo/exec/execution_pool.hpp"

namespace casevo {

enum class Phase { Listen, Discuss, Reflect, Vote };

std::string_view to_string(Phase phase) noexcept;
std::optional<Phase> phase_from_string(std::string_view s) noexcept;
RecordType record_type(Phase phase) noexcept;

struct RoundClock {
  int ts = 0;
  std::optional<Phase> phase;  // empty between rounds
};

class Simulation;

struct RoundContext {
  int ts = 0;
  ExecutionPool& pool;
};

// Scenario plug-in. Sim-core owns ordering and the log; the scenario owns
// agent state and decides what each phase does.
class Scenario {
 public:
  virtual ~Scenario() = default;

  // Phase pipeline, in execution order, repeated every round.
  virtual std::vector<Phase> phases() const = 0;

  // Called once before round 0.
  virtual void setup(Simulation& /*sim*/) {}

  // Global events for the round, before any phase runs.
  virtual void deliver(int /*ts*/, const std::vector<GlobalEvent>& /*events*/) {}

  // Returns the phase's records; sim-core commits them in canonical order.
  virtual std::vector<LogRecord> run_phase(Phase phase, const RoundContext& ctx) = 0;

  // Round summary, computed after every phase committed.
  virtual Json end_round(int ts) = 0;

  virtual std::uint64_t backend_retries() const { return 0; }
};

struct RoundSummary {
  int ts = 0;
  std::size_t records = 0;
  Json summary;
};

struct SimulationResult {
  std::vector<RoundSummary> rounds;
  std::filesystem::path log_path;
  bool truncated = false;
  PoolMetrics metrics;
};

class Simulation {
 public:
  Simulation(SimConfig config, std::unique_ptr<Scenario> scenario);

  const SimConfig& config() const noexcept { return config_; }
  const RoundClock& clock() const noexcept { return clock_; }
  int current_round() const noexcept { return clock_.ts; }
  bool finished() const noexcept { return clock_.ts >= config_.num_rounds; }

  Scenario& scenario() noexcept { return *scenario_; }
  ExecutionPool& pool() noexcept { return pool_; }

  // Throws PastRoundError when event.round < current round.
  void schedule_event(GlobalEvent event);

  // Appends one record; its ts must equal the current round.
  void log(const LogRecord& record);

  // One full round: events, every phase, barrier, flush.
  RoundSummary step();

  // Remaining rounds. On failure the log gets a final truncation record and
  // the original error is rethrown.
  SimulationResult run();

  void on_round_end(std::function<void(const RoundSummary&)> observer);

 private:
  void ensure_setup();
  void mark_truncated(const std::string& reason);

  SimConfig config_;
  std::unique_ptr<Scenario> scenario_;
  ExecutionPool pool_;
  EventLog log_;
  EventQueue events_;
  RoundClock clock_;
  bool setup_done_ = false;
  bool truncated_ = false;
  std::uint64_t retries_seen_ = 0;
  std::vector<RoundSummary> summaries_;
  std::vector<std::function<void(const RoundSummary&)>> observers_;
};

using ScenarioFactory = std::function<std::unique_ptr<Scenario>(const SimConfig&)>;

class ScenarioRegistry {
 public:
  void add(std::string name, ScenarioFactory factory);
  bool contains(std::string_view name) const;
  // Throws ConfigError for an unregistered name.
  std::unique_ptr<Scenario> create(const SimConfig& config) const;

 private:
  std::map<std::string, ScenarioFactory, std::less<>> factories_;
};

SimulationResult run(const SimConfig& config, const ScenarioRegistry& registry);

}  // namespace casevo
