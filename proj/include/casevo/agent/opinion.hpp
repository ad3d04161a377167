#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "casevo/core/json.hpp"

namespace casevo {

struct CandidateView {
  std::string candidate;
  double identity = 0.5;  // agreement, [0, 1]
  std::string overall_view;
  bool operator==(const CandidateView&) const = default;
};

// Per-candidate agreement, in scenario candidate order.
class Opinion {
 public:
  Opinion() = default;
  // Neutral 0.5 / empty view for every candidate.
  static Opinion neutral(const std::vector<std::string>& candidates);

  const std::vector<CandidateView>& views() const noexcept { return views_; }
  const CandidateView* find(std::string_view candidate) const;
  // Identity is clamped into [0, 1].
  void set(std::string candidate, double identity, std::string overall_view);
  bool empty() const noexcept { return views_.empty(); }

  bool operator==(const Opinion&) const = default;

 private:
  std::vector<CandidateView> views_;
};

// {"Trump": {"Identity": 0.6, "Overall view": "..."}, ...}
Json to_json(const Opinion& opinion);

// Accepts the shape above, optionally wrapped in {"agree": ...}; key matching
// is case-insensitive and "overall_view" is accepted. Every candidate must be
// present. Throws ParseError.
Opinion parse_opinion(const Json& payload, const std::vector<std::string>& candidates);

// Candidate -> stance score, in candidate order.
using CandidateScores = std::vector<std::pair<std::string, double>>;

Json to_json(const CandidateScores& scores);

// Numeric score per candidate, case-insensitive key match. Scores are not
// range-checked here. Throws ParseError.
CandidateScores parse_scores(const Json& payload, const std::vector<std::string>& candidates);

std::optional<double> score_of(const CandidateScores& scores, std::string_view candidate);

}  // namespace casevo
