#include "hypertree/boundary.hpp"

#include "hypertree/errors.hpp"

namespace hypertree {

BoundaryColumn boundary_column(int triangle, int n) {
  const auto t = index_triangle(triangle, n);
  const int i = t.v[0], j = t.v[1], k = t.v[2];
  return {{{edge_index(i, j, n), +1}, {edge_index(i, k, n), -1}, {edge_index(j, k, n), +1}}};
}

BoundaryMatrix::BoundaryMatrix(int n, std::optional<std::vector<int>> faces) : n_(n) {
  if (n < 3) throw InputError("boundary matrix needs n >= 3");
  if (faces) {
    for (int f : *faces)
      if (f < 0 || f >= triangle_count(n)) throw InputError("invalid face index " + std::to_string(f));
    columns_ = std::move(*faces);
  } else {
    columns_.resize(triangle_count(n));
    for (int f = 0; f < triangle_count(n); ++f) columns_[f] = f;
  }
}

int BoundaryMatrix::entry(int row, int col) const {
  for (const auto& [r, s] : boundary_column(columns_.at(col), n_))
    if (r == row) return s;
  return 0;
}

IntMatrix BoundaryMatrix::to_int_matrix() const {
  IntMatrix m(rows(), cols());
  for (int c = 0; c < cols(); ++c)
    for (const auto& [r, s] : boundary_column(columns_[c], n_)) m.set(r, c, s);
  return m;
}

IntMatrix vertex_boundary(int n) {
  IntMatrix m(n, edge_count(n));
  for (int e = 0; e < edge_count(n); ++e) {
    const auto [lo, hi] = index_edge(e, n);
    m.set(lo, e, -1);
    m.set(hi, e, +1);
  }
  return m;
}

int reduced_row(int edge, int n) {
  // Edges with lo == 0 occupy ranks 0..n-2; the rest keep their relative order.
  return edge < n - 1 ? -1 : edge - (n - 1);
}

IntMatrix reduced_boundary(const Complex2& c) {
  const int n = c.n();
  IntMatrix m(tree_size(n), c.size());
  int col = 0;
  for (int f : c.faces()) {
    for (const auto& [r, s] : boundary_column(f, n)) {
      const int rr = reduced_row(r, n);
      if (rr >= 0) m.set(rr, col, s);
    }
    ++col;
  }
  return m;
}

bool is_2tree(const Complex2& c) {
  if (c.n() < 3) return false;
  if (c.size() != tree_size(c.n())) return false;
  return rank_over_q(BoundaryMatrix(c.n(), c.faces()).to_int_matrix()) == c.size();
}

}  // namespace hypertree
