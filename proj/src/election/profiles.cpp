#include "casevo/election/profiles.hpp"

#include <array>
#include <string_view>

#include "casevo/core/agent_policy.hpp"
#include "casevo/core/errors.hpp"
#include "casevo/core/log_record.hpp"
#include "casevo/exec/execution_pool.hpp"
#include "casevo/llm/gateway.hpp"
#include "casevo/llm/structured.hpp"
#include "casevo/util/random.hpp"

namespace casevo {

namespace {

constexpr std::array<std::string_view, 30> kFirstNames = {
    "Alex",  "Jordan", "Taylor", "Morgan",  "Casey",   "Riley",  "Jamie",  "Avery", "Quinn",  "Drew",
    "Robin", "Dana",   "Leslie", "Shannon", "Terry",   "Pat",    "Chris",  "Sam",   "Lee",    "Jesse",
    "Maria", "Linda",  "James",  "Robert",  "Patricia", "David", "Susan",  "Carlos", "Aisha", "Mei"};

constexpr std::array<std::string_view, 30> kLastNames = {
    "Thompson", "Garcia",  "Miller", "Johnson", "Brown",  "Davis",   "Wilson",  "Anderson", "Moore",  "Clark",
    "Lewis",    "Walker",  "Hall",   "Young",   "King",   "Wright",  "Lopez",   "Hill",     "Scott",  "Green",
    "Adams",    "Baker",   "Nelson", "Carter",  "Mitchell", "Perez", "Roberts", "Turner",   "Phillips", "Nguyen"};

std::vector<std::string> unique_names(std::size_t n, std::uint64_t seed) {
  const std::size_t combos = kFirstNames.size() * kLastNames.size();
  std::vector<std::size_t> order(combos);
  for (std::size_t i = 0; i < combos; ++i) order[i] = i;
  auto rng = Rng::derive(seed, "profile-names");
  for (std::size_t i = combos - 1; i > 0; --i) std::swap(order[i], order[rng.below(i + 1)]);

  std::vector<std::string> names;
  names.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto c = order[i % combos];
    std::string name = std::string(kFirstNames[c / kLastNames.size()]) + " " +
                       std::string(kLastNames[c % kLastNames.size()]);
    if (i >= combos) name += " " + std::to_string(i / combos + 1);
    names.push_back(std::move(name));
  }
  return names;
}

std::string fill(const std::string& text, const AgentProfile& p, const std::string& where) {
  TemplateVars vars{{"name", p.name}, {"age", std::to_string(p.age)}, {"category", p.category}};
  try {
    return PromptTemplate(where, text).render(vars);
  } catch (const Error& e) {
    throw ConfigError("typology " + where + " for '" + p.category + "': " + e.what());
  }
}

}  // namespace

std::vector<AgentProfile> generate_profiles(const std::vector<TypologyEntry>& typology, std::size_t num_agents,
                                            std::uint64_t seed, LlmGateway* llm, ExecutionPool* pool) {
  validate_typology(typology, num_agents);
  const auto names = unique_names(num_agents, seed);

  std::vector<AgentProfile> profiles;
  std::vector<const TypologyEntry*> entry_of;
  profiles.reserve(num_agents);
  for (const auto& entry : typology) {
    for (std::size_t c = 0; c < entry.count; ++c) {
      const auto i = profiles.size();
      AgentProfile p;
      p.id = agent_id(i);
      p.name = names[i];
      p.category = entry.category;
      auto rng = Rng::derive(seed, "profile-age", {i});
      const auto span = static_cast<std::uint64_t>(entry.age_max - entry.age_min) + 1;
      p.age = entry.age_min + static_cast<int>(rng.below(span));
      p.background = fill(entry.background, p, "background");
      p.topics_of_interest = fill(entry.topics_of_interest, p, "topics_of_interest");
      profiles.push_back(std::move(p));
      entry_of.push_back(&entry);
    }
  }

  if (!llm || llm->backend().kind() != BackendKind::Http || !llm->templates().contains("profile")) return profiles;

  ExecutionPool local(1);
  ExecutionPool& exec = pool ? *pool : local;
  WorkBatch<std::optional<std::pair<std::string, std::string>>> batch{0, "profile", {}};
  for (std::size_t i = 0; i < profiles.size(); ++i) {
    batch.items.push_back({i, [&, i] {
      const auto& p = profiles[i];
      TemplateVars vars;
      add_profile_vars(vars, "agent", p);
      vars["characteristics"] = entry_of[i]->characteristics;
      auto attempt = attempt_behavior([&] {
        const auto reply = parse_structured(llm->call("profile", vars, p.id, 0).text);
        if (!reply.contains("background") || !reply["background"].is_string() ||
            !reply.contains("topics_of_interest") || !reply["topics_of_interest"].is_string()) {
          throw ParseError("profile reply lacks background/topics_of_interest");
        }
        return std::make_pair(reply["background"].get<std::string>(), reply["topics_of_interest"].get<std::string>());
      });
      return attempt.value;
    }});
  }
  const auto results = exec.submit_batch(batch);
  for (std::size_t i = 0; i < profiles.size(); ++i) {
    if (results[i]) {
      profiles[i].background = results[i]->first;
      profiles[i].topics_of_interest = results[i]->second;
    }
  }
  return profiles;
}

}  // namespace casevo
