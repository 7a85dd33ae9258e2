#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace rata {

// splitmix64, used to derive independent stream seeds from one run seed.
inline std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  return mix_seed(seed ^ mix_seed(stream));
}

// Deterministic generator wrapper. The variate transforms are spelled
// out here instead of using std::*_distribution so that sampled values
// are pinned by this code alone, independent of the standard library
// implementation. Two runs with the same seed produce identical draws.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  // Uniform in [0, 1); 53-bit resolution.
  double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Exponential with the given rate (mean 1/rate).
  double exponential(double rate) { return -std::log1p(-uniform01()) / rate; }

  // Uniform integer in [0, n).
  std::size_t below(std::size_t n) {
    std::size_t i = static_cast<std::size_t>(uniform01() * static_cast<double>(n));
    return i < n ? i : n - 1;
  }

 private:
  std::mt19937_64 gen_;
};

// Stream ids for the independent per-run generators. Keeping the
// streams separate lets a run replayed from an arrival manifest reuse
// the constellation and routing draws untouched.
inline constexpr std::uint64_t kStreamConstellation = 0;
inline constexpr std::uint64_t kStreamWorkload = 1;
inline constexpr std::uint64_t kStreamEngine = 2;

}  // namespace rata
