#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <string_view>

namespace casevo {

// 64-bit FNV-1a. Used for stable, platform-independent hashing of text.
constexpr std::uint64_t fnv1a(std::string_view text,
                              std::uint64_t basis = 0xcbf29ce484222325ULL) noexcept {
  std::uint64_t h = basis;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Seeded generator whose derived quantities do not depend on the standard
// library's distribution implementations (those differ between vendors).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

  // Independent stream for a (seed, tag, ...) key, e.g. one per agent per round.
  static Rng derive(std::uint64_t seed, std::string_view tag,
                    std::initializer_list<std::uint64_t> keys = {}) {
    std::uint64_t s = splitmix64(seed ^ fnv1a(tag));
    for (auto k : keys) s = splitmix64(s ^ k);
    return Rng(s);
  }

  std::uint64_t next() { return engine_(); }

  // Uniform in [0, 1) with 53 bits of precision.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform in [0, n). n must be > 0.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
      x = next();
    } while (x >= limit);
    return x % n;
  }

  bool bernoulli(double p) { return uniform01() < p; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace casevo
