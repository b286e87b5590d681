#pragma once

// Correlation kernel of the torsion-squared measure on 2-trees.
//
// K is the orthogonal projection of R^{C(n,3)} onto the row space of d_2.
// The rows of d_2 indexed by edges avoiding vertex 0 form a basis of that
// row space, so with A those rows, K = A^T (A A^T)^{-1} A. The kernel is kept
// in this factored form (A sparse, (A A^T)^{-1} dense of side C(n-1,2)).
// When every entry matches the orbit rule
//     K[s][t] = sign(s,t) * value(|s & t|)
// the four orbit values are used instead. sign(s,t) is the product of the
// incidence signs of the shared edge when |s & t| = 2 and +1 otherwise.

#include <Eigen/Dense>

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "hypertree/boundary.hpp"
#include "hypertree/int_matrix.hpp"

namespace hypertree {

enum class KernelBackend { Rational, Float };

const char* to_string(KernelBackend b);

/// Rational for n <= 10, Float above.
KernelBackend default_backend(int n);

struct KernelOptions {
  std::size_t memory_budget_bytes = std::size_t{1} << 30;
};

/// Estimated working memory of building and sampling with the kernel.
std::size_t kernel_memory_estimate(int n, KernelBackend backend);

class DppKernel {
 public:
  int n() const { return n_; }
  KernelBackend backend() const { return backend_; }
  /// Ground set size C(n,3).
  int size() const { return triangle_count(n_); }
  /// Rank of the projection, C(n-1,2).
  int rank() const { return tree_size(n_); }

  /// True when entries are served from the four orbit values.
  bool orbit_compressed() const { return compressed_; }
  /// Orbit values indexed by |s & t| (index 3 is the diagonal). Rational
  /// backend only.
  const std::array<Rational, 4>& orbit_values_exact() const;
  const std::array<double, 4>& orbit_values() const { return orbit_float_; }

  /// Exact entry. Throws ContractViolation on the float backend.
  Rational entry_exact(int s, int t) const;
  double entry(int s, int t) const;

  /// Entry computed from the factored form, bypassing the orbit table.
  Rational factored_entry_exact(int s, int t) const;
  double factored_entry(int s, int t) const;

  /// Full dense matrix, for checks at small n.
  std::vector<std::vector<Rational>> dense_exact() const;
  Eigen::MatrixXd dense() const;

  friend DppKernel build_kernel(int n, KernelBackend backend, const KernelOptions& options);

 private:
  DppKernel() = default;

  int n_ = 0;
  KernelBackend backend_ = KernelBackend::Rational;
  bool compressed_ = false;
  // Reduced boundary columns: (row among non-star edges, sign); a triangle
  // through vertex 0 has a single nonzero.
  std::vector<std::vector<std::pair<int, int>>> columns_;
  std::vector<std::vector<Rational>> gram_inverse_exact_;
  Eigen::MatrixXd gram_inverse_;
  std::array<Rational, 4> orbit_exact_;
  std::array<double, 4> orbit_float_{};
};

/// Throws InputError for n < 3 and ResourceError if the estimate exceeds the budget.
DppKernel build_kernel(int n, KernelBackend backend, const KernelOptions& options = {});

/// Number of shared vertices and, for a shared edge, the sign product.
struct FacePairInfo {
  int shared = 0;
  int sign = 1;
};
FacePairInfo face_pair_info(int s, int t, int n);

struct ContainmentProbability {
  Rational exact;        // det K[S,S]; valid on the rational backend
  bool has_exact = false;
  double value = 0.0;    // same determinant as a double
  double bound = 0.0;    // negative-association bound (3/n)^|S|
};

/// P(S subset of T) = det K[S,S]. Throws InputError on repeated or invalid faces.
ContainmentProbability containment_probability(const DppKernel& k, std::span<const int> faces);

}  // namespace hypertree
