#include "casevo/memory/embedder.hpp"

#include <cctype>
#include <cmath>
#include <string>

#include "casevo/core/errors.hpp"
#include "casevo/util/random.hpp"

namespace casevo {

namespace {

std::vector<std::string> words(std::string_view text) {
  std::vector<std::string> out;
  std::string cur;
  for (unsigned char c : text) {
    if (std::isalnum(c) || c >= 0x80) {
      cur += static_cast<char>(std::tolower(c));
    } else if (!cur.empty()) {
      out.push_back(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

}  // namespace

HashingEmbedder::HashingEmbedder(std::size_t dimension, std::uint64_t seed) : dimension_(dimension), seed_(seed) {
  if (dimension_ == 0) throw EmbedderError("embedding dimension must be positive");
}

std::vector<double> HashingEmbedder::embed(std::string_view text) const {
  std::vector<double> v(dimension_, 0.0);
  const auto basis = splitmix64(seed_ ^ 0xcbf29ce484222325ULL);
  const auto add = [&](const std::string& feature) {
    const auto h = splitmix64(fnv1a(feature, basis));
    v[h % dimension_] += (h >> 63) ? 1.0 : -1.0;
  };

  const auto toks = words(text);
  for (std::size_t i = 0; i < toks.size(); ++i) {
    add("u:" + toks[i]);
    if (i + 1 < toks.size()) add("b:" + toks[i] + ' ' + toks[i + 1]);
  }

  double norm = 0.0;
  for (double x : v) norm += x * x;
  if (norm > 0.0) {
    norm = std::sqrt(norm);
    for (double& x : v) x /= norm;
  }
  return v;
}

double cosine_similarity(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw EmbedderError("embedding dimensions differ");
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0.0 || nb == 0.0) return 0.0;
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

}  // namespace casevo
