#pragma once

// Density certificates: the densest induced subcomplex on at most C' vertices
// and the union-bound sum used for the hyperbolicity argument.
//
// Scanning induced subcomplexes is enough: for a fixed vertex set W the
// induced subcomplex contains every other subcomplex on W, so it maximizes
// f2 / f0 among them.

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hypertree/complex.hpp"
#include "hypertree/int_matrix.hpp"

namespace hypertree {

/// Small exact ratio num/den with den > 0.
struct Fraction {
  std::int64_t num = 0;
  std::int64_t den = 1;

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string to_string() const;

  friend bool operator==(const Fraction& a, const Fraction& b) { return a.num * b.den == b.num * a.den; }
  friend std::strong_ordering operator<=>(const Fraction& a, const Fraction& b) {
    return a.num * b.den <=> b.num * a.den;
  }
};

/// Accepts "p/q", integers and decimals ("1.5" -> 3/2). Throws InputError.
Fraction parse_fraction(const std::string& text);

inline constexpr Fraction kHyperbolicityThreshold{3, 2};
inline constexpr Fraction kAsphericityThreshold{47, 46};
inline constexpr int kDefaultScanVertices = 12;

struct ScanOptions {
  /// Search nodes before the scan gives up and reports a partial result.
  std::uint64_t node_budget = 20'000'000;
  int threads = 1;
};

struct DensityReport {
  std::string kind = "density";
  std::string complex_id;
  int n = 0;
  int max_vertices = 0;
  std::vector<int> vertices;  // best W, 0-based, sorted; empty if no face
  int f0 = 0;
  int f2 = 0;
  Fraction ratio;
  Fraction threshold;
  /// No scanned subset has f2 >= threshold * f0 (and, for asphericity, no
  /// tetrahedron boundary). Only conclusive for a fail or an exhaustive scan.
  bool pass = true;
  bool exhaustive = true;
  std::uint64_t visited = 0;
  std::uint64_t pruned = 0;
  std::optional<bool> tetrahedron_free;
};

/// Exact maximizer of f2(W)/|W| over vertex sets with |W| <= max_vertices,
/// ties broken towards the lexicographically smallest sorted W.
/// Branch-and-bound over vertices in descending degree order.
/// Throws InputError if max_vertices < 3.
DensityReport densest_subcomplex(const Complex2& c, int max_vertices, Fraction threshold = kHyperbolicityThreshold,
                                 const ScanOptions& options = {});

DensityReport hyperbolicity_certificate(const Complex2& c, int max_vertices = kDefaultScanVertices,
                                        const ScanOptions& options = {});

/// Density scan at 47/46 plus the tetrahedron-boundary check. A pass only
/// says no density witness was found; it does not decide asphericity.
DensityReport asphericity_certificate(const Complex2& c, int max_vertices = kDefaultScanVertices,
                                      const ScanOptions& options = {});

/// Faces of c with all three vertices in `vertices`.
int induced_face_count(const Complex2& c, std::span<const int> vertices);

/// True if some 4 vertices span all four faces of a tetrahedron boundary.
bool has_tetrahedron_boundary(const Complex2& c);

/// Deletes induced faces on W one at a time (largest index first) until
/// exactly ceil(threshold * |W|) remain, and returns those face indices.
/// Throws InputError if W does not meet the threshold to begin with.
std::vector<int> trim_to_threshold(const Complex2& c, std::span<const int> vertices, Fraction threshold);

struct UnionBound {
  Rational exact;
  double value = 0.0;
  std::vector<Rational> terms;  // term k at index k-1
};

/// sum_{k=1}^{C'} C(n,k) * C(C(k,3), m_k) * (3/n)^{m_k}, m_k = ceil(3k/2).
UnionBound union_bound_value(int n, int max_vertices);

/// JSON with all report fields (vertices 1-based) and scan statistics.
std::string report_json(const DensityReport& report);

}  // namespace hypertree
