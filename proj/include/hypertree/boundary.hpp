#pragma once

// Simplicial boundary operators of the complete 2-skeleton on n vertices.
//
// Sign convention: d[i<j<k] = [j,k] - [i,k] + [i,j]. With edges in
// lexicographic row order the three nonzeros of every column read
// (+1, -1, +1) top to bottom: row [i,j] gets +1, [i,k] gets -1, [j,k] gets +1.
// The vertex boundary is d[i<j] = [j] - [i].

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "hypertree/complex.hpp"
#include "hypertree/int_matrix.hpp"

namespace hypertree {

/// One column of the edge-by-triangle boundary: (edge row, sign) in row order.
using BoundaryColumn = std::array<std::pair<int, int>, 3>;

BoundaryColumn boundary_column(int triangle, int n);

/// The boundary d_2 restricted to a list of triangle columns.
class BoundaryMatrix {
 public:
  /// All C(n,3) columns when `faces` is empty. Throws InputError for n < 3
  /// or an invalid face index.
  BoundaryMatrix(int n, std::optional<std::vector<int>> faces = std::nullopt);

  int n() const { return n_; }
  int rows() const { return edge_count(n_); }
  int cols() const { return static_cast<int>(columns_.size()); }
  const std::vector<int>& columns() const { return columns_; }
  int entry(int row, int col) const;

  IntMatrix to_int_matrix() const;

 private:
  int n_;
  std::vector<int> columns_;
};

/// d_1 as an n x C(n,2) integer matrix.
IntMatrix vertex_boundary(int n);

/// Boundary of the faces of `c` with the rows of the star of vertex 0 deleted.
/// The result is square exactly when c has C(n-1,2) faces; its determinant is
/// +-|H_1(c)| for a 2-tree and 0 otherwise.
IntMatrix reduced_boundary(const Complex2& c);

/// Row index among the C(n-1,2) edges avoiding vertex 0, or -1 for a star edge.
int reduced_row(int edge, int n);

/// True iff c has C(n-1,2) faces whose boundary columns are independent over Q.
bool is_2tree(const Complex2& c);

}  // namespace hypertree
