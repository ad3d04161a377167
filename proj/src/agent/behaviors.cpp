#include "casevo/agent/behaviors.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "casevo/core/errors.hpp"
#include "casevo/core/log_record.hpp"
#include "casevo/network/social_graph.hpp"

namespace casevo {

namespace {

constexpr const char* kReaskNote =
    "Your previous answer contained scores outside [-1, 1]. Answer again with every score within [-1, 1].";

std::string join(const std::vector<std::string>& xs, std::string_view sep) {
  std::string out;
  for (const auto& x : xs) {
    if (!out.empty()) out += sep;
    out += x;
  }
  return out;
}

std::string opinion_or_placeholder(const std::string& text) { return text.empty() ? "(no opinion yet)" : text; }

TemplateVars agent_vars(const AgentState& agent, const BehaviorContext& ctx) {
  TemplateVars vars;
  add_profile_vars(vars, "agent", agent.profile);
  vars["round"] = std::to_string(ctx.round);
  vars["candidates"] = join(ctx.candidates, ", ");
  vars["opinion"] = opinion_or_placeholder(agent.opinion_text);
  vars["support"] = to_json(agent.opinion).dump();
  return vars;
}

std::string opinion_summary(const Opinion& o) {
  std::string out;
  for (const auto& v : o.views()) {
    if (!out.empty()) out += '\n';
    out += v.candidate + ": " + v.overall_view;
  }
  return out;
}

}  // namespace

AgentChains AgentChains::from_json(const Json& chains) {
  if (!chains.is_object()) throw ConfigError("'chains' must be an object");
  const auto get = [&](const char* name) {
    if (!chains.contains(name)) throw ConfigError(std::string("missing chain '") + name + "'");
    return CotChain::from_json(name, chains[name]);
  };
  return AgentChains{get("listen"), get("discuss"), get("reflect"), get("vote")};
}

ListenOutcome listen(const AgentState& agent, const Broadcast& broadcast, const MemoryStore& memory,
                     const BehaviorContext& ctx) {
  ListenOutcome out;
  if (broadcast.text.empty()) {
    out.opinion = agent.opinion;
    out.opinion_text = agent.opinion_text;
  } else {
    auto vars = agent_vars(agent, ctx);
    vars["topic"] = broadcast.topic;
    vars["transcript"] = broadcast.text;
    vars["memories"] = format_memories(memory.retrieve(broadcast.text, std::max<std::size_t>(ctx.retrieve_k, 1)));

    const auto chain = run_chain(ctx.chains.listen, vars, ctx.llm, agent.profile.id, ctx.round);
    out.opinion = parse_opinion(chain.payload, ctx.candidates);
    try {
      out.opinion_text = chain.step("evaluation").text;
    } catch (const std::out_of_range&) {
      out.opinion_text = opinion_summary(out.opinion);
    }
  }

  out.item = Json::object();
  out.item["source"] = std::string(kPublicOwner);
  out.item["content"] = broadcast.text;
  out.item["opinion"] = out.opinion_text;
  out.item["support"] = to_json(out.opinion);
  return out;
}

DiscussOutcome discuss(const AgentState& speaker, const AgentState& listener, const SocialGraph& graph,
                       const MemoryStore& speaker_memory, const BehaviorContext& ctx) {
  if (!graph.has_edge(speaker.index, listener.index)) {
    throw NotNeighborsError(speaker.profile.id + " and " + listener.profile.id + " are not neighbours");
  }

  TemplateVars vars;
  add_profile_vars(vars, "speaker", speaker.profile);
  add_profile_vars(vars, "listener", listener.profile);
  vars["round"] = std::to_string(ctx.round);
  vars["candidates"] = join(ctx.candidates, ", ");
  vars["speaker.opinion"] = opinion_or_placeholder(speaker.opinion_text);
  vars["speaker.support"] = to_json(speaker.opinion).dump();
  vars["listener.opinion"] = opinion_or_placeholder(listener.opinion_text);
  vars["listener.support"] = to_json(listener.opinion).dump();
  const auto query = speaker.opinion_text.empty() ? speaker.profile.topics_of_interest : speaker.opinion_text;
  vars["speaker.memories"] =
      query.empty() ? std::string("(none)")
                    : format_memories(speaker_memory.retrieve(query, std::max<std::size_t>(ctx.retrieve_k, 1)));

  const auto chain = run_chain(ctx.chains.discuss, vars, ctx.llm, speaker.profile.id, ctx.round);

  DiscussOutcome out;
  out.speaker = speaker.index;
  out.listener = listener.index;
  try {
    out.message = chain.step("message").text;
  } catch (const std::out_of_range&) {
    out.message = chain.steps.front().text;
  }
  out.listener_opinion = parse_opinion(chain.payload, ctx.candidates);

  out.item = Json::object();
  out.item["speaker"] = speaker.profile.id;
  out.item["listener"] = listener.profile.id;
  out.item["message"] = out.message;
  out.item["listener_opinion"] = to_json(out.listener_opinion);
  return out;
}

ReflectOutcome reflect(const AgentState& agent, const MemoryStore& memory, const BehaviorContext& ctx) {
  auto vars = agent_vars(agent, ctx);
  vars["memories"] = format_memories(memory.recent(std::max<std::size_t>(ctx.recent_n, 1)));
  const auto query = agent.opinion_text.empty() ? agent.profile.topics_of_interest : agent.opinion_text;
  vars["relevant"] = query.empty() ? std::string("(none)")
                                   : format_memories(memory.retrieve(query, std::max<std::size_t>(ctx.retrieve_k, 1)));
  vars["ori_opinion"] = agent.last_reflection.value_or("(none)");

  const auto chain = run_chain(ctx.chains.reflect, vars, ctx.llm, agent.profile.id, ctx.round);
  if (!chain.payload.is_string()) throw ParseError("reflection must end with a text step");

  ReflectOutcome out;
  out.ori_opinion = agent.last_reflection;
  out.new_opinion = chain.payload.get<std::string>();
  if (out.new_opinion.empty()) throw ParseError("empty reflection");

  out.item = Json::object();
  out.item["ori_opinion"] = out.ori_opinion ? Json(*out.ori_opinion) : Json(nullptr);
  out.item["new_opinion"] = out.new_opinion;
  return out;
}

CandidateScores clamp_scores(CandidateScores scores) {
  for (auto& [c, s] : scores) s = std::clamp(s, -1.0, 1.0);
  return scores;
}

VoteOutcome vote(const AgentState& agent, const BehaviorContext& ctx) {
  auto vars = agent_vars(agent, ctx);
  vars["opinion"] = opinion_or_placeholder(agent.last_reflection.value_or(agent.opinion_text));
  vars["reask"] = "";

  const auto in_range = [](const CandidateScores& s) {
    return std::all_of(s.begin(), s.end(), [](const auto& e) { return e.second >= -1.0 && e.second <= 1.0; });
  };

  auto chain = run_chain(ctx.chains.vote, vars, ctx.llm, agent.profile.id, ctx.round);
  auto scores = parse_scores(chain.payload, ctx.candidates);

  VoteOutcome out;
  if (!in_range(scores)) {
    vars["reask"] = kReaskNote;
    chain = run_chain(ctx.chains.vote, vars, ctx.llm, agent.profile.id, ctx.round);
    scores = parse_scores(chain.payload, ctx.candidates);
    if (!in_range(scores)) {
      out.clamped = true;
      out.raw = scores;
      scores = clamp_scores(std::move(scores));
    }
  }
  out.scores = std::move(scores);
  out.item = to_json(out.scores);
  return out;
}

}  // namespace casevo
