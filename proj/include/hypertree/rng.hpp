#pragma once

// Seedable random stream with a fully specified bit layout.
//
// Generator "mt19937_64/v1":
//   - engine: std::mt19937_64 constructed directly from the 64-bit seed
//     (the engine's output sequence is fixed by the C++ standard);
//   - uniform01(): (next() >> 11) * 2^-53, a double in [0, 1);
//   - below(m): Lemire's multiply-shift with rejection, unbiased on [0, m);
//   - exact rational draws consume whole 64-bit words as binary digits of a
//     uniform real, most significant first (see choose_exact / bernoulli_exact).
// Any implementation following these rules reproduces the same streams.

#include <cstdint>
#include <random>
#include <span>
#include <string_view>

#include "hypertree/int_matrix.hpp"

namespace hypertree {

class Rng {
 public:
  static constexpr std::string_view kName = "mt19937_64/v1";

  explicit Rng(std::uint64_t seed) : engine_(seed), seed_(seed) {}

  std::uint64_t seed() const { return seed_; }
  std::uint64_t next() { return engine_(); }
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  /// Uniform integer in [0, m). m must be positive.
  std::uint64_t below(std::uint64_t m);

 private:
  std::mt19937_64 engine_;
  std::uint64_t seed_;
};

/// Index i chosen with probability weights[i] / total, exactly: the uniform
/// real is refined 64 bits at a time until its interval falls inside one
/// cumulative bucket. Weights must be non-negative and sum to `total` > 0.
std::size_t choose_exact(std::span<const Rational> weights, const Rational& total, Rng& rng);

/// True with probability exactly q (clamped to [0, 1]).
bool bernoulli_exact(const Rational& q, Rng& rng);

}  // namespace hypertree
