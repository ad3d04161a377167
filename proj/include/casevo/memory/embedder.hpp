#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace casevo {

class Embedder {
 public:
  virtual ~Embedder() = default;
  // Throws EmbedderError. Must be safe to call concurrently.
  virtual std::vector<double> embed(std::string_view text) const = 0;
  virtual std::size_t dimension() const noexcept = 0;
};

// Feature hashing of lowercase word unigrams and bigrams into a fixed number
// of signed buckets, L2-normalised. Text with no word characters maps to the
// zero vector.
class HashingEmbedder final : public Embedder {
 public:
  explicit HashingEmbedder(std::size_t dimension = 64, std::uint64_t seed = 0);
  std::vector<double> embed(std::string_view text) const override;
  std::size_t dimension() const noexcept override { return dimension_; }

 private:
  std::size_t dimension_;
  std::uint64_t seed_;
};

// Cosine similarity; 0 when either vector is all-zero.
double cosine_similarity(std::span<const double> a, std::span<const double> b);

}  // namespace casevo
