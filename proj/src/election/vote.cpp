#include "casevo/election/vote.hpp"

#include <set>

#include "casevo/core/errors.hpp"

namespace casevo {

std::string support_label(Support s, const CandidatePair& c) {
  switch (s) {
    case Support::First: return c.first;
    case Support::Second: return c.second;
    case Support::Neutral: return "Neutral";
  }
  return "Neutral";
}

Support classify(const CandidateScores& scores, const CandidatePair& candidates, double theta) {
  const auto a = score_of(scores, candidates.first);
  const auto b = score_of(scores, candidates.second);
  if (!a) throw MissingCandidateError("no score for " + candidates.first);
  if (!b) throw MissingCandidateError("no score for " + candidates.second);
  const double d = *a - *b;
  if (d > theta) return Support::First;
  if (d < -theta) return Support::Second;
  return Support::Neutral;
}

RoundTally tally(const std::vector<VoteRecord>& votes, int round, const std::vector<std::string>& agents) {
  const std::set<std::string> expected(agents.begin(), agents.end());
  std::set<std::string> seen;
  RoundTally t{round, 0, 0, 0};
  for (const auto& v : votes) {
    if (v.round != round) continue;
    if (!expected.count(v.agent)) throw Error("vote from unknown agent " + v.agent);
    if (!seen.insert(v.agent).second) throw Error("duplicate vote from " + v.agent);
    switch (v.support) {
      case Support::First: ++t.first; break;
      case Support::Second: ++t.second; break;
      case Support::Neutral: ++t.neutral; break;
    }
  }
  if (seen.size() != expected.size()) {
    std::vector<std::string> absent;
    for (const auto& a : agents) {
      if (!seen.count(a)) absent.push_back(a);
    }
    std::string msg = "round " + std::to_string(round) + " missing votes from";
    for (std::size_t i = 0; i < absent.size() && i < 10; ++i) msg += " " + absent[i];
    if (absent.size() > 10) msg += " ...";
    throw MissingVotesError(msg, std::move(absent));
  }
  return t;
}

void write_tallies_csv(const std::vector<RoundTally>& tallies, std::ostream& out) {
  out << "round,trump,biden,neutral\n";
  for (const auto& t : tallies) out << t.round << ',' << t.first << ',' << t.second << ',' << t.neutral << '\n';
}

}  // namespace casevo
