#include "casevo/election/scenario.hpp"

#include <fstream>

#include "casevo/core/agent_policy.hpp"
#include "casevo/core/errors.hpp"
#include "casevo/election/profiles.hpp"
#include "casevo/util/random.hpp"

namespace casevo {

namespace {

Json error_item(Phase phase, const std::vector<std::string>& errors, std::string_view fallback) {
  Json item = Json::object();
  item["error"] = errors.empty() ? std::string("unknown") : errors.back();
  item["phase"] = std::string(to_string(phase));
  item["attempts"] = errors.size();
  item["fallback"] = std::string(fallback);
  return item;
}

template <class T>
std::vector<T> run_items(ExecutionPool& pool, int ts, Phase phase, std::vector<WorkItem<T>> items) {
  WorkBatch<T> batch{ts, std::string(to_string(phase)), std::move(items)};
  return pool.submit_batch(batch);
}

}  // namespace

ElectionSettings ElectionSettings::from_json(const Json& payload, const std::filesystem::path& base_dir) {
  ElectionSettings s;
  const auto path = [&](const char* key) {
    if (!payload.contains(key) || !payload[key].is_string()) {
      throw ConfigError(std::string("election scenario needs '") + key + "'");
    }
    return resolve_path(base_dir, payload[key].get<std::string>());
  };
  s.typology = path("typology");
  s.debate = path("debate");
  s.templates = path("templates");
  try {
    if (payload.contains("candidates")) {
      const auto c = payload["candidates"].get<std::vector<std::string>>();
      if (c.size() != 2 || c[0].empty() || c[1].empty() || c[0] == c[1]) {
        throw ConfigError("candidates must name exactly two distinct candidates");
      }
      s.candidates = {c[0], c[1]};
    }
    s.theta = payload.value("theta", s.theta);
    if (payload.contains("phases")) {
      s.phases.clear();
      for (const auto& name : payload["phases"].get<std::vector<std::string>>()) {
        auto p = phase_from_string(name);
        if (!p) throw ConfigError("unknown phase '" + name + "'");
        s.phases.push_back(*p);
      }
      if (s.phases.empty()) throw ConfigError("phases must not be empty");
    }
    s.short_term_capacity = payload.value("short_term_capacity", s.short_term_capacity);
    s.retrieve_k = payload.value("retrieve_k", s.retrieve_k);
    s.embedding_dim = payload.value("embedding_dim", s.embedding_dim);
    s.reinforce_delta = payload.value("reinforce_delta", s.reinforce_delta);
    s.max_weight = payload.value("max_weight", s.max_weight);
  } catch (const Json::exception& e) {
    throw ConfigError(std::string("election scenario: ") + e.what());
  }
  static const std::vector<std::string> known = {"typology",   "debate",     "templates",       "candidates",
                                                 "theta",      "phases",     "short_term_capacity", "retrieve_k",
                                                 "embedding_dim", "reinforce_delta", "max_weight"};
  for (const auto& [key, _] : payload.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw ConfigError("unknown election scenario key '" + key + "'");
    }
  }
  if (s.theta < 0.0) throw ConfigError("theta must be >= 0");
  if (s.short_term_capacity < 1 || s.retrieve_k < 1 || s.embedding_dim < 1) {
    throw ConfigError("short_term_capacity, retrieve_k and embedding_dim must be >= 1");
  }
  if (!(s.reinforce_delta > 0.0) || !(s.max_weight >= 1.0)) {
    throw ConfigError("reinforce_delta must be > 0 and max_weight >= 1");
  }
  return s;
}

ScenarioAssets ScenarioAssets::from_json(const Json& j) {
  if (!j.is_object() || !j.contains("templates") || !j.contains("chains")) {
    throw ConfigError("scenario assets need 'templates' and 'chains'");
  }
  ScenarioAssets a{TemplateRegistry::from_json(j["templates"]), AgentChains::from_json(j["chains"])};
  for (const auto* chain : {&a.chains.listen, &a.chains.discuss, &a.chains.reflect, &a.chains.vote}) {
    for (const auto& step : chain->steps) a.templates.get(step.template_name);
  }
  return a;
}

ScenarioAssets ScenarioAssets::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open templates '" + path.string() + "'");
  auto j = Json::parse(in, nullptr, false);
  if (j.is_discarded()) throw ConfigError("templates '" + path.string() + "' is not valid JSON");
  return from_json(j);
}

ElectionScenario::ElectionScenario(const SimConfig& config)
    : ElectionScenario(config, ElectionSettings::from_json(config.scenario.payload, config.scenario.base_dir), {},
                       {}, ScenarioAssets{}, nullptr) {}

ElectionScenario::ElectionScenario(const SimConfig& config, ElectionSettings settings,
                                   std::vector<TypologyEntry> typology, DebateScript debate, ScenarioAssets assets,
                                   std::shared_ptr<Backend> backend)
    : seed_(config.seed),
      num_agents_(config.num_agents),
      num_rounds_(config.num_rounds),
      settings_(std::move(settings)),
      typology_(std::move(typology)),
      debate_(std::move(debate)),
      backend_(std::move(backend)) {
  // The delegating constructor passes empty parts; load them from settings.
  if (!backend_) {
    typology_ = load_typology(settings_.typology);
    debate_ = DebateScript::load(settings_.debate);
    assets = ScenarioAssets::load(settings_.templates);
    backend_ = make_backend(config.backend);
  }
  chains_ = std::move(assets.chains);
  candidates_ = candidate_list();
  llm_ = std::make_unique<LlmGateway>(std::move(assets.templates), backend_, config.backend.params);
  embedder_ = std::make_shared<HashingEmbedder>(settings_.embedding_dim, seed_);

  validate_typology(typology_, num_agents_);
  if (has_phase(Phase::Listen) && debate_.rounds.size() != static_cast<std::size_t>(num_rounds_)) {
    throw ConfigError("debate script has " + std::to_string(debate_.rounds.size()) + " rounds but num_rounds is " +
                      std::to_string(num_rounds_));
  }
  graph_ = build_network(config.network, num_agents_, seed_);
}

std::vector<std::string> ElectionScenario::candidate_list() const {
  return {settings_.candidates.first, settings_.candidates.second};
}

bool ElectionScenario::has_phase(Phase p) const {
  return std::find(settings_.phases.begin(), settings_.phases.end(), p) != settings_.phases.end();
}

void ElectionScenario::setup(Simulation& sim) {
  const auto profiles = generate_profiles(typology_, num_agents_, seed_, llm_.get(), &sim.pool());
  agents_.clear();
  memories_.clear();
  for (std::size_t i = 0; i < profiles.size(); ++i) {
    AgentState a;
    a.index = i;
    a.profile = profiles[i];
    a.opinion = Opinion::neutral(candidates_);
    agents_.push_back(std::move(a));
    memories_.emplace_back(profiles[i].id, embedder_, settings_.short_term_capacity);
  }
  if (has_phase(Phase::Listen)) {
    for (int r = 0; r < num_rounds_; ++r) {
      const auto& seg = debate_.rounds[static_cast<std::size_t>(r)];
      Json meta = Json::object();
      meta["topic"] = seg.topic;
      sim.schedule_event(GlobalEvent{r, seg.transcript, std::move(meta)});
    }
  }
}

void ElectionScenario::deliver(int /*ts*/, const std::vector<GlobalEvent>& events) {
  broadcast_ = {};
  for (const auto& ev : events) {
    if (broadcast_.topic.empty() && ev.metadata.contains("topic") && ev.metadata["topic"].is_string()) {
      broadcast_.topic = ev.metadata["topic"].get<std::string>();
    }
    if (!broadcast_.text.empty() && !ev.text.empty()) broadcast_.text += "\n\n";
    broadcast_.text += ev.text;
  }
}

BehaviorContext ElectionScenario::behavior_context(int ts) {
  return BehaviorContext{*llm_, chains_, candidates_, ts, settings_.retrieve_k, settings_.short_term_capacity};
}

std::vector<LogRecord> ElectionScenario::run_phase(Phase phase, const RoundContext& ctx) {
  switch (phase) {
    case Phase::Listen: return run_listen(ctx);
    case Phase::Discuss: return run_discuss(ctx);
    case Phase::Reflect: return run_reflect(ctx);
    case Phase::Vote: return run_vote(ctx);
  }
  return {};
}

std::vector<LogRecord> ElectionScenario::run_listen(const RoundContext& ctx) {
  const auto bctx = behavior_context(ctx.ts);
  std::vector<WorkItem<Attempted<ListenOutcome>>> items;
  for (std::size_t i = 0; i < agents_.size(); ++i) {
    items.push_back({i, [&, i] {
      return attempt_behavior([&] { return listen(agents_[i], broadcast_, memories_[i], bctx); });
    }});
  }
  auto results = run_items(ctx.pool, ctx.ts, Phase::Listen, std::move(items));

  std::vector<LogRecord> records;
  for (std::size_t i = 0; i < agents_.size(); ++i) {
    auto& agent = agents_[i];
    auto& res = results[i];
    if (res.value) {
      agent.opinion = res.value->opinion;
      agent.opinion_text = res.value->opinion_text;
      if (!broadcast_.text.empty()) memories_[i].add(ctx.ts, MemoryKind::Observation, broadcast_.text);
      records.push_back(LogRecord::agent(ctx.ts, i, RecordType::Listen, std::move(res.value->item)));
    } else {
      records.push_back(LogRecord::agent(ctx.ts, i, RecordType::Event,
                                         error_item(Phase::Listen, res.errors, "carry_forward_opinion")));
      Json item = Json::object();
      item["source"] = std::string(kPublicOwner);
      item["content"] = broadcast_.text;
      item["opinion"] = agent.opinion_text;
      item["support"] = to_json(agent.opinion);
      records.push_back(LogRecord::agent(ctx.ts, i, RecordType::Listen, std::move(item)));
    }
  }
  return records;
}

std::vector<LogRecord> ElectionScenario::run_discuss(const RoundContext& ctx) {
  const auto bctx = behavior_context(ctx.ts);

  // Partners are drawn on the orchestrator from the phase-start weights.
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < agents_.size(); ++i) {
    if (graph_.degree(i) == 0) continue;
    auto rng = Rng::derive(seed_, "discuss-partner", {static_cast<std::uint64_t>(ctx.ts), i});
    pairs.emplace_back(i, select_partner(graph_, i, rng));
  }

  std::vector<WorkItem<Attempted<DiscussOutcome>>> items;
  for (const auto& [s, l] : pairs) {
    items.push_back({s, [&, s = s, l = l] {
      return attempt_behavior([&] { return discuss(agents_[s], agents_[l], graph_, memories_[s], bctx); });
    }});
  }
  auto results = run_items(ctx.pool, ctx.ts, Phase::Discuss, std::move(items));

  std::vector<LogRecord> records;
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const auto [s, l] = pairs[k];
    auto& res = results[k];
    if (!res.value) {
      records.push_back(
          LogRecord::agent(ctx.ts, s, RecordType::Event, error_item(Phase::Discuss, res.errors, "skip_exchange")));
      continue;
    }
    auto& out = *res.value;
    if (!out.message.empty()) {
      memories_[l].add(ctx.ts, MemoryKind::Discussion, agents_[s].profile.id + " said: " + out.message);
    }
    agents_[l].opinion = out.listener_opinion;
    graph_.reinforce(s, l, settings_.reinforce_delta, settings_.max_weight);
    records.push_back(LogRecord::agent(ctx.ts, s, RecordType::Discuss, std::move(out.item)));
  }
  return records;
}

std::vector<LogRecord> ElectionScenario::run_reflect(const RoundContext& ctx) {
  const auto bctx = behavior_context(ctx.ts);
  std::vector<WorkItem<Attempted<ReflectOutcome>>> items;
  for (std::size_t i = 0; i < agents_.size(); ++i) {
    items.push_back({i, [&, i] { return attempt_behavior([&] { return reflect(agents_[i], memories_[i], bctx); }); }});
  }
  auto results = run_items(ctx.pool, ctx.ts, Phase::Reflect, std::move(items));

  std::vector<LogRecord> records;
  for (std::size_t i = 0; i < agents_.size(); ++i) {
    auto& agent = agents_[i];
    auto& res = results[i];
    Json item;
    std::string new_opinion;
    if (res.value) {
      new_opinion = res.value->new_opinion;
      item = std::move(res.value->item);
    } else {
      records.push_back(LogRecord::agent(ctx.ts, i, RecordType::Event,
                                         error_item(Phase::Reflect, res.errors, "carry_forward_opinion")));
      new_opinion = agent.last_reflection.value_or(agent.opinion_text);
      item = Json::object();
      item["ori_opinion"] = agent.last_reflection ? Json(*agent.last_reflection) : Json(nullptr);
      item["new_opinion"] = new_opinion;
    }
    agent.last_reflection = new_opinion;
    if (!new_opinion.empty()) {
      agent.opinion_text = new_opinion;
      memories_[i].add(ctx.ts, MemoryKind::Reflection, new_opinion);
    }
    records.push_back(LogRecord::agent(ctx.ts, i, RecordType::Reflect, std::move(item)));
  }
  return records;
}

std::vector<LogRecord> ElectionScenario::run_vote(const RoundContext& ctx) {
  const auto bctx = behavior_context(ctx.ts);
  std::vector<WorkItem<Attempted<VoteOutcome>>> items;
  for (std::size_t i = 0; i < agents_.size(); ++i) {
    items.push_back({i, [&, i] { return attempt_behavior([&] { return vote(agents_[i], bctx); }); }});
  }
  auto results = run_items(ctx.pool, ctx.ts, Phase::Vote, std::move(items));

  std::vector<LogRecord> records;
  for (std::size_t i = 0; i < agents_.size(); ++i) {
    auto& agent = agents_[i];
    auto& res = results[i];
    CandidateScores scores;
    if (res.value) {
      scores = res.value->scores;
      if (res.value->clamped) {
        Json warn = Json::object();
        warn["warning"] = "score_out_of_range";
        warn["phase"] = "vote";
        warn["raw"] = to_json(*res.value->raw);
        warn["clamped"] = to_json(scores);
        records.push_back(LogRecord::agent(ctx.ts, i, RecordType::Event, std::move(warn)));
      }
    } else {
      records.push_back(
          LogRecord::agent(ctx.ts, i, RecordType::Event, error_item(Phase::Vote, res.errors, "carry_forward_vote")));
      if (agent.last_vote) {
        scores = *agent.last_vote;
      } else {
        for (const auto& c : candidates_) scores.emplace_back(c, 0.0);
      }
    }
    agent.last_vote = scores;
    votes_.push_back(
        VoteRecord{agent.profile.id, ctx.ts, scores, classify(scores, settings_.candidates, settings_.theta)});
    records.push_back(LogRecord::agent(ctx.ts, i, RecordType::Vote, to_json(scores)));
  }
  return records;
}

Json ElectionScenario::end_round(int ts) {
  Json summary = Json::object();
  summary["round"] = ts;
  if (!has_phase(Phase::Vote)) return summary;

  std::vector<std::string> ids;
  ids.reserve(agents_.size());
  for (const auto& a : agents_) ids.push_back(a.profile.id);
  const auto t = tally(votes_, ts, ids);
  tallies_.push_back(t);
  summary[settings_.candidates.first] = t.first;
  summary[settings_.candidates.second] = t.second;
  summary["Neutral"] = t.neutral;
  return summary;
}

void register_election(ScenarioRegistry& registry) {
  registry.add(std::string(kElectionScenario),
               [](const SimConfig& config) { return std::make_unique<ElectionScenario>(config); });
}

ScenarioRegistry builtin_scenarios() {
  ScenarioRegistry r;
  register_election(r);
  return r;
}

}  // namespace casevo
