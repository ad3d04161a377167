#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "casevo/memory/embedder.hpp"
#include "casevo/memory/memory_store.hpp"
#include "casevo/util/random.hpp"

namespace casevo::testing {

inline double plain_cosine(const std::vector<double>& a, const std::vector<double>& b) {
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0.0 || nb == 0.0) return 0.0;
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

// Exhaustive scan: score every item, fully sort, keep the first k ids.
inline std::vector<std::uint64_t> retrieval_oracle(const MemoryStore& store, const Embedder& embedder,
                                                   const std::string& query, std::size_t k) {
  const auto q = embedder.embed(query);
  struct Row {
    double score;
    int round;
    std::uint64_t id;
  };
  std::vector<Row> rows;
  for (const auto& item : store.long_term()) rows.push_back({plain_cosine(q, item.embedding), item.round, item.id});
  std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    if (a.score != b.score) return a.score > b.score;
    if (a.round != b.round) return a.round > b.round;
    return a.id > b.id;
  });
  std::vector<std::uint64_t> ids;
  for (std::size_t i = 0; i < std::min(k, rows.size()); ++i) ids.push_back(rows[i].id);
  return ids;
}

// Short sentence over a small vocabulary, so many items share words.
inline std::string random_sentence(Rng& rng) {
  static const std::vector<std::string> vocab = {
      "tax",     "cuts",    "jobs",   "vaccine", "border", "climate", "energy", "police", "reform", "healthcare",
      "economy", "trade",   "allies", "masks",   "testing", "wages",  "oil",    "clean",  "debt",   "religion",
      "family",  "schools", "crime",  "justice", "market",  "growth", "china",  "nato",   "farm",   "insurance"};
  const auto n = 1 + rng.below(7);
  std::string s;
  for (std::uint64_t i = 0; i < n; ++i) {
    if (!s.empty()) s += ' ';
    s += vocab[rng.below(vocab.size())];
  }
  return s;
}

}  // namespace casevo::testing
