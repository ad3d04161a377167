#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "casevo/agent/cot.hpp"
#include "casevo/agent/opinion.hpp"
#include "casevo/agent/profile.hpp"
#include "casevo/core/json.hpp"
#include "casevo/llm/gateway.hpp"
#include "casevo/memory/memory_store.hpp"

namespace casevo {

class SocialGraph;

// Mutable per-agent state. Behaviors read it; only the orchestrator writes.
struct AgentState {
  std::size_t index = 0;
  AgentProfile profile;
  Opinion opinion;
  std::string opinion_text;
  std::optional<std::string> last_reflection;
  std::optional<CandidateScores> last_vote;
};

// The four phase chains. Output names the behaviors rely on:
//   listen:  "evaluation" (text), final step = opinion JSON
//   discuss: "message" (text), final step = listener opinion JSON
//   reflect: final step = new opinion text
//   vote:    final step = score JSON; templates see {reask}
struct AgentChains {
  CotChain listen;
  CotChain discuss;
  CotChain reflect;
  CotChain vote;

  static AgentChains from_json(const Json& chains);
};

struct BehaviorContext {
  LlmGateway& llm;
  const AgentChains& chains;
  const std::vector<std::string>& candidates;
  int round = 0;
  std::size_t retrieve_k = 5;
  std::size_t recent_n = kDefaultShortTermCapacity;
};

struct Broadcast {
  std::string topic;
  std::string text;
};

struct ListenOutcome {
  Opinion opinion;
  std::string opinion_text;
  Json item;  // {source, content, opinion, support}
};

// An empty broadcast leaves the opinion unchanged and calls nothing.
ListenOutcome listen(const AgentState& agent, const Broadcast& broadcast, const MemoryStore& memory,
                     const BehaviorContext& ctx);

struct DiscussOutcome {
  std::size_t speaker = 0;
  std::size_t listener = 0;
  std::string message;
  Opinion listener_opinion;
  Json item;  // {speaker, listener, message, listener_opinion}
};

// Throws NotNeighborsError unless speaker and listener share an edge.
DiscussOutcome discuss(const AgentState& speaker, const AgentState& listener, const SocialGraph& graph,
                       const MemoryStore& speaker_memory, const BehaviorContext& ctx);

struct ReflectOutcome {
  std::optional<std::string> ori_opinion;
  std::string new_opinion;
  Json item;  // {ori_opinion, new_opinion}
};

ReflectOutcome reflect(const AgentState& agent, const MemoryStore& memory, const BehaviorContext& ctx);

struct VoteOutcome {
  CandidateScores scores;  // within [-1, 1]
  bool clamped = false;
  std::optional<CandidateScores> raw;  // the out-of-range answer, when clamped
  Json item;                           // {"<candidate>": score, ...}
};

// Out-of-range scores get one re-ask; if still out of range they are clamped
// and `clamped` is set.
VoteOutcome vote(const AgentState& agent, const BehaviorContext& ctx);

CandidateScores clamp_scores(CandidateScores scores);

}  // namespace casevo
