#pragma once

#include <cstddef>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "casevo/agent/opinion.hpp"

namespace casevo {

inline constexpr double kDefaultNeutralThreshold = 0.1;

struct CandidatePair {
  std::string first = "Trump";
  std::string second = "Biden";
};

enum class Support { First, Second, Neutral };

std::string support_label(Support s, const CandidatePair& c);

// d = score(first) - score(second): First if d > theta, Second if d < -theta,
// Neutral otherwise. Throws MissingCandidateError.
Support classify(const CandidateScores& scores, const CandidatePair& candidates,
                 double theta = kDefaultNeutralThreshold);

struct VoteRecord {
  std::string agent;
  int round = 0;
  CandidateScores scores;
  Support support = Support::Neutral;
};

struct RoundTally {
  int round = 0;
  std::size_t first = 0;
  std::size_t second = 0;
  std::size_t neutral = 0;

  std::size_t total() const noexcept { return first + second + neutral; }
  bool operator==(const RoundTally&) const = default;
};

// Counts this round's votes. Every id in `agents` must have exactly one
// record; absent ones are listed in MissingVotesError.
RoundTally tally(const std::vector<VoteRecord>& votes, int round, const std::vector<std::string>& agents);

// Header "round,trump,biden,neutral", one row per tally.
void write_tallies_csv(const std::vector<RoundTally>& tallies, std::ostream& out);

}  // namespace casevo
