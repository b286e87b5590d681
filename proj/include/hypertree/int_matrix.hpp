#pragma once

// Exact integer matrices. Entries are GMP integers; there is no floating
// point anywhere in this module.

#include <gmpxx.h>

#include <cstdint>
#include <utility>
#include <vector>

namespace hypertree {

using BigInt = mpz_class;
using Rational = mpq_class;

/// Sparse row: (column, value) pairs sorted by column, no explicit zeros.
using SparseRow = std::vector<std::pair<int, BigInt>>;

/// Integer matrix stored dense when both dimensions are below 64, sparse by
/// rows otherwise. The layout is an implementation detail of storage; every
/// accessor works with either.
class IntMatrix {
 public:
  enum class Layout { Dense, Sparse };

  static constexpr int kDenseLimit = 64;

  IntMatrix() = default;
  IntMatrix(int rows, int cols);
  IntMatrix(int rows, int cols, Layout layout);

  static IntMatrix identity(int k);
  static IntMatrix diagonal(const std::vector<BigInt>& d);
  /// Row-major dense literal, mostly for tests.
  static IntMatrix from_rows(const std::vector<std::vector<long>>& rows);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Layout layout() const { return layout_; }

  BigInt get(int r, int c) const;
  void set(int r, int c, const BigInt& v);

  /// Copy of the matrix as sparse rows (regardless of layout).
  std::vector<SparseRow> sparse_rows() const;
  std::vector<std::vector<BigInt>> dense_rows() const;

  /// Number of structurally nonzero entries.
  std::int64_t nonzeros() const;

  IntMatrix transposed() const;
  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend bool operator==(const IntMatrix& a, const IntMatrix& b);

 private:
  int rows_ = 0;
  int cols_ = 0;
  Layout layout_ = Layout::Dense;
  std::vector<BigInt> dense_;
  std::vector<SparseRow> sparse_;
};

/// Invariant factors d_1 | d_2 | ... | d_r (all >= 1) and r = rank.
struct SnfResult {
  std::vector<BigInt> invariant_factors;
  int rank = 0;
};

/// Rank over the rationals by fraction-free integer elimination.
int rank_over_q(const IntMatrix& m);

/// Smith normal form invariant factors. Unit pivots are eliminated on the
/// sparse structure first; what is left is reduced densely with smallest-
/// magnitude pivoting.
SnfResult smith_normal_form(const IntMatrix& m);

/// Exact inverse of a nonsingular square integer matrix over Q.
/// Throws InputError if the matrix is singular or not square.
std::vector<std::vector<Rational>> inverse_over_q(const std::vector<std::vector<BigInt>>& m);

/// Exact determinant of a square rational matrix.
Rational determinant(std::vector<std::vector<Rational>> m);

}  // namespace hypertree
