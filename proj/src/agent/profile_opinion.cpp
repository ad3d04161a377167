#include <algorithm>
#include <cctype>
#include <cmath>

#include "casevo/agent/opinion.hpp"
#include "casevo/agent/profile.hpp"
#include "casevo/core/errors.hpp"

namespace casevo {

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

const Json* find_ci(const Json& obj, std::string_view key) {
  const auto want = lower(key);
  for (const auto& [k, v] : obj.items()) {
    if (lower(k) == want) return &v;
  }
  return nullptr;
}

}  // namespace

Json to_json(const AgentProfile& p) {
  Json j = Json::object();
  j["id"] = p.id;
  j["name"] = p.name;
  j["age"] = p.age;
  j["category"] = p.category;
  j["background"] = p.background;
  j["topics_of_interest"] = p.topics_of_interest;
  return j;
}

void add_profile_vars(TemplateVars& vars, std::string_view prefix, const AgentProfile& p) {
  const std::string pre(prefix);
  vars[pre + ".id"] = p.id;
  vars[pre + ".name"] = p.name;
  vars[pre + ".age"] = std::to_string(p.age);
  vars[pre + ".background"] = p.background;
  vars[pre + ".topics"] = p.topics_of_interest;
  vars[pre + ".category"] = p.category;
}

Opinion Opinion::neutral(const std::vector<std::string>& candidates) {
  Opinion o;
  for (const auto& c : candidates) o.set(c, 0.5, "");
  return o;
}

const CandidateView* Opinion::find(std::string_view candidate) const {
  for (const auto& v : views_) {
    if (v.candidate == candidate) return &v;
  }
  return nullptr;
}

void Opinion::set(std::string candidate, double identity, std::string overall_view) {
  identity = std::isfinite(identity) ? std::clamp(identity, 0.0, 1.0) : 0.5;
  for (auto& v : views_) {
    if (v.candidate == candidate) {
      v.identity = identity;
      v.overall_view = std::move(overall_view);
      return;
    }
  }
  views_.push_back({std::move(candidate), identity, std::move(overall_view)});
}

Json to_json(const Opinion& opinion) {
  Json j = Json::object();
  for (const auto& v : opinion.views()) {
    Json entry = Json::object();
    entry["Identity"] = v.identity;
    entry["Overall view"] = v.overall_view;
    j[v.candidate] = std::move(entry);
  }
  return j;
}

Opinion parse_opinion(const Json& payload, const std::vector<std::string>& candidates) {
  if (!payload.is_object()) throw ParseError("opinion payload must be an object");
  const Json* body = &payload;
  if (const auto* agree = find_ci(payload, "agree"); agree && agree->is_object()) body = agree;

  Opinion out;
  for (const auto& c : candidates) {
    const Json* entry = find_ci(*body, c);
    if (!entry || !entry->is_object()) throw ParseError("opinion lacks an entry for " + c);
    const Json* identity = find_ci(*entry, "identity");
    if (!identity || !identity->is_number()) throw ParseError("opinion for " + c + " lacks a numeric Identity");
    const Json* view = find_ci(*entry, "overall view");
    if (!view) view = find_ci(*entry, "overall_view");
    std::string text = view && view->is_string() ? view->get<std::string>() : std::string();
    const double value = identity->get<double>();
    if (!std::isfinite(value)) throw ParseError("opinion Identity for " + c + " is not finite");
    out.set(c, value, std::move(text));
  }
  return out;
}

Json to_json(const CandidateScores& scores) {
  Json j = Json::object();
  for (const auto& [c, s] : scores) j[c] = s;
  return j;
}

CandidateScores parse_scores(const Json& payload, const std::vector<std::string>& candidates) {
  if (!payload.is_object()) throw ParseError("vote payload must be an object");
  CandidateScores out;
  for (const auto& c : candidates) {
    const Json* v = find_ci(payload, c);
    if (!v || !v->is_number()) throw ParseError("vote lacks a numeric score for " + c);
    const double s = v->get<double>();
    if (!std::isfinite(s)) throw ParseError("vote score for " + c + " is not finite");
    out.emplace_back(c, s);
  }
  return out;
}

std::optional<double> score_of(const CandidateScores& scores, std::string_view candidate) {
  for (const auto& [c, s] : scores) {
    if (c == candidate) return s;
  }
  return std::nullopt;
}

}  // namespace casevo
