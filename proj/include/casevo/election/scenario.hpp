#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "casevo/agent/behaviors.hpp"
#include "casevo/core/simulation.hpp"
#include "casevo/election/typology.hpp"
#include "casevo/election/vote.hpp"
#include "casevo/llm/gateway.hpp"
#include "casevo/memory/memory_store.hpp"
#include "casevo/network/social_graph.hpp"

namespace casevo {

inline constexpr std::string_view kElectionScenario = "election";

// Scenario payload keys (all optional except the three asset paths):
//   typology, debate, templates   asset files
//   candidates                    [first, second], default ["Trump", "Biden"]
//   theta                         neutral threshold, default 0.1
//   phases                        default ["listen", "discuss", "reflect", "vote"]
//   short_term_capacity, retrieve_k, embedding_dim
//   reinforce_delta, max_weight   edge reinforcement per exchange
struct ElectionSettings {
  std::filesystem::path typology;
  std::filesystem::path debate;
  std::filesystem::path templates;
  CandidatePair candidates;
  double theta = kDefaultNeutralThreshold;
  std::vector<Phase> phases{Phase::Listen, Phase::Discuss, Phase::Reflect, Phase::Vote};
  std::size_t short_term_capacity = kDefaultShortTermCapacity;
  std::size_t retrieve_k = 5;
  std::size_t embedding_dim = 64;
  double reinforce_delta = 0.1;
  double max_weight = kDefaultMaxWeight;

  static ElectionSettings from_json(const Json& payload, const std::filesystem::path& base_dir);
};

// Templates + chains asset: {"templates": {...}, "chains": {...}}.
struct ScenarioAssets {
  TemplateRegistry templates;
  AgentChains chains;

  static ScenarioAssets from_json(const Json& j);
  static ScenarioAssets load(const std::filesystem::path& path);
};

// Watch -> discuss -> reflect -> vote, once per debate segment.
class ElectionScenario final : public Scenario {
 public:
  // Loads every asset and validates it against the config.
  explicit ElectionScenario(const SimConfig& config);
  // Explicit parts, for tests and embedding.
  ElectionScenario(const SimConfig& config, ElectionSettings settings, std::vector<TypologyEntry> typology,
                   DebateScript debate, ScenarioAssets assets, std::shared_ptr<Backend> backend);

  std::vector<Phase> phases() const override { return settings_.phases; }
  void setup(Simulation& sim) override;
  void deliver(int ts, const std::vector<GlobalEvent>& events) override;
  std::vector<LogRecord> run_phase(Phase phase, const RoundContext& ctx) override;
  Json end_round(int ts) override;
  std::uint64_t backend_retries() const override { return backend_->retries(); }

  const ElectionSettings& settings() const noexcept { return settings_; }
  const std::vector<AgentState>& agents() const noexcept { return agents_; }
  const std::vector<MemoryStore>& memories() const noexcept { return memories_; }
  const SocialGraph& graph() const noexcept { return graph_; }
  const std::vector<RoundTally>& tallies() const noexcept { return tallies_; }
  const std::vector<VoteRecord>& votes() const noexcept { return votes_; }

 private:
  BehaviorContext behavior_context(int ts);
  std::vector<LogRecord> run_listen(const RoundContext& ctx);
  std::vector<LogRecord> run_discuss(const RoundContext& ctx);
  std::vector<LogRecord> run_reflect(const RoundContext& ctx);
  std::vector<LogRecord> run_vote(const RoundContext& ctx);

  bool has_phase(Phase p) const;
  std::vector<std::string> candidate_list() const;

  std::uint64_t seed_;
  std::size_t num_agents_;
  int num_rounds_;
  ElectionSettings settings_;
  std::vector<TypologyEntry> typology_;
  DebateScript debate_;
  AgentChains chains_;
  std::vector<std::string> candidates_;
  std::shared_ptr<Backend> backend_;
  std::unique_ptr<LlmGateway> llm_;
  std::shared_ptr<const Embedder> embedder_;

  SocialGraph graph_;
  std::vector<AgentState> agents_;
  std::vector<MemoryStore> memories_;
  Broadcast broadcast_;
  std::vector<VoteRecord> votes_;
  std::vector<RoundTally> tallies_;
};

void register_election(ScenarioRegistry& registry);

// Registry with every bundled scenario.
ScenarioRegistry builtin_scenarios();

}  // namespace casevo
