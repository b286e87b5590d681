#pragma once

// Cohen-Lenstra comparisons, automorphism counts of abelian p-groups, and
// the expected-torsion bounds.

#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "hypertree/census.hpp"
#include "hypertree/homology.hpp"
#include "hypertree/sampler.hpp"

namespace hypertree {

/// |Aut(sum Z/p^parts[i])|, exact.
BigInt aut_order(const PGroupPartition& g);

/// prod_{k>=1} (1 - p^-k), stopping once p^-k < 1e-15.
double cohen_lenstra_constant(const BigInt& p);
double cohen_lenstra_pmf(const PGroupPartition& g);

/// All partitions of `total` as weakly decreasing part lists.
std::vector<std::vector<int>> partitions_of(int total);

struct ComparisonRow {
  PGroupPartition group;
  double empirical = 0.0;
  double cohen_lenstra = 0.0;
  double z = 0.0;  // (empirical - CL) / sqrt(CL (1 - CL) / samples); 0 for exact pmfs
};

struct DistributionComparison {
  BigInt p;
  std::uint64_t samples = 0;  // 0 when the empirical side is an exact pmf
  std::vector<ComparisonRow> rows;
  /// CL mass on groups absent from `rows`.
  double cl_remainder = 0.0;
  double total_variation = 0.0;
};

inline constexpr std::uint64_t kMinComparisonSamples = 10'000;

/// Empirical Sylow-p distribution of `samples` against CL. Throws InputError
/// if fewer than `min_samples` samples are given, or p is not prime.
DistributionComparison compare_to_cohen_lenstra(std::span<const TorsionGroup> samples, const BigInt& p,
                                                std::uint64_t min_samples = kMinComparisonSamples);

/// Exact pmf over Sylow-p partitions (e.g. from a census).
DistributionComparison compare_pmf_to_cohen_lenstra(const std::vector<std::pair<PGroupPartition, Rational>>& pmf,
                                                    const BigInt& p);

/// Sylow-p pmf under the |H_1|^2 measure, read off a census histogram.
std::vector<std::pair<PGroupPartition, Rational>> census_sylow_pmf(const CensusResult& census, const BigInt& p);

/// CSV `p,partition,empirical,cohen_lenstra,z`.
void write_comparison_csv(const DistributionComparison& cmp, std::ostream& out);

/// Natural logs of the three bounds on E|H_1|.
struct TorsionBounds {
  int n = 0;
  double log_stated_lower = 0.0;  // (3/e)^C(n-2,2) (3/(en))^(n-2)
  double log_proof_lower = 0.0;   // square root of the above
  double log_upper = 0.0;         // sqrt(3)^C(n-1,2), bounds every |H_1|
};
TorsionBounds expected_torsion_bounds(int n);

/// E|H_1| = sum |H_1|^3 / n^C(n-2,2), exact from a census.
Rational census_expected_torsion(const CensusResult& census);

/// Sample estimates of E|H_1| and P(H_1 = 0) with normal 95% intervals.
struct TorsionGrowth {
  int n = 0;
  std::uint64_t samples = 0;
  double log_mean = 0.0;  // log of the sample mean of |H_1|
  double log_ci_low = 0.0;
  double log_ci_high = 0.0;
  double log_mean_per_n2 = 0.0;
  double trivial_fraction = 0.0;
  double trivial_ci_low = 0.0;
  double trivial_ci_high = 0.0;
};
TorsionGrowth torsion_growth(std::span<const SampleRecord> records);

struct PowerMean {
  double lhs = 0.0;  // sum x^3
  double rhs = 0.0;  // (sum x^2)^{3/2} / sqrt(k)
  bool holds = true;
};
/// Throws InputError on an empty list or a negative or non-finite entry.
/// `holds` allows a relative slack of 1e-12 for rounding.
PowerMean power_mean_check(std::span<const double> xs);

}  // namespace hypertree
