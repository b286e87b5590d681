#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "hypertree/complex.hpp"
#include "hypertree/homology.hpp"

namespace hypertree {

struct CensusOptions {
  /// Largest n enumerated without opting in.
  int cap = 6;
  /// Permits n = cap + 1 (with a warning through `warn`). Never beyond 7.
  bool allow_larger = false;
  int threads = 1;
  /// Keep one record per 2-tree (needed for containment queries).
  bool keep_records = true;
  /// Summary cache directory; used only when records are not requested.
  std::optional<std::filesystem::path> cache_dir;
  std::function<void(const std::string&)> warn;
};

/// Throws ResourceError (with an estimated cost) if n may not be enumerated.
void check_census_feasible(int n, const CensusOptions& options);

/// Calls `visit` once for every 2-tree on n vertices, in lexicographic
/// order of the sorted face-index lists. Backtracks over triangles in index
/// order, keeping an exact echelon basis of the chosen boundary columns
/// and pruning branches whose remaining triangles cannot complete a basis.
void enumerate_2trees(int n, const std::function<void(const Complex2&)>& visit,
                      const CensusOptions& options = {});

struct CensusRecord {
  FaceSet faces;
  BigInt h1_order;
};

struct HistogramEntry {
  TorsionGroup group;
  std::uint64_t count = 0;
  BigInt weighted;  // sum of |H_1|^2 over the class
};

struct CensusResult {
  int n = 0;
  std::uint64_t total = 0;
  BigInt kalai_sum;
  BigInt kalai_target;  // n^C(n-2,2)
  std::map<std::vector<BigInt>, HistogramEntry> histogram;
  std::vector<CensusRecord> records;

  bool kalai_pass() const { return kalai_sum == kalai_target; }
};

/// n^C(n-2,2).
BigInt kalai_target(int n);

/// Full census with Kalai check, histogram and (optionally) records.
CensusResult verify_kalai(int n, const CensusOptions& options = {});

struct ContainmentCount {
  std::uint64_t count = 0;
  BigInt weighted_count;
  Rational probability;  // weighted / n^C(n-2,2), or count / N(n) when unweighted
};

/// Requires records. Throws InputError on invalid faces.
ContainmentCount containment_counts(const CensusResult& census, std::span<const int> faces, bool weighted);
ContainmentCount containment_counts(int n, std::span<const int> faces, bool weighted,
                                    const CensusOptions& options = {});

struct CountBound {
  std::uint64_t exact = 0;
  double bound = 0.0;  // (e n / 3)^C(n-1,2)
  double ratio = 0.0;
  bool holds = false;
};
CountBound count_bound_check(const CensusResult& census);
CountBound count_bound_check(int n, const CensusOptions& options = {});

struct TrivialH1Probability {
  Rational exact;
  double bound = 0.0;  // (e/3)^C(n-1,2) * n^(n-2)
};
TrivialH1Probability trivial_h1_probability(const CensusResult& census);
TrivialH1Probability trivial_h1_probability(int n, const CensusOptions& options = {});

/// CSV with header `torsion_factors,count,weighted_count`.
void write_histogram_csv(const CensusResult& census, std::ostream& out);

/// Versioned JSON summary (no per-complex records).
std::string census_summary_json(const CensusResult& census);
CensusResult census_from_summary_json(const std::string& text);

inline constexpr int kCensusFormatVersion = 1;

}  // namespace hypertree
