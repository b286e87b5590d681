#include "doctest.h"
#include "hypertree/boundary.hpp"
#include "hypertree/complex.hpp"
#include "hypertree/errors.hpp"

using namespace hypertree;

TEST_CASE("edge and triangle indices are lexicographic bijections") {
  for (int n = 3; n <= 12; ++n) {
    int e = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j, ++e) {
        CHECK(edge_index(i, j, n) == e);
        auto back = index_edge(e, n);
        CHECK(back.lo == i);
        CHECK(back.hi == j);
      }
    CHECK(e == edge_count(n));
    int t = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        for (int k = j + 1; k < n; ++k, ++t) {
          CHECK(triangle_index(i, j, k, n) == t);
          CHECK(index_triangle(t, n) == Triangle{{i, j, k}});
        }
    CHECK(t == triangle_count(n));
  }
}

TEST_CASE("make_triangle sorts and rejects repeats") {
  CHECK(make_triangle(4, 1, 2) == Triangle{{1, 2, 4}});
  CHECK_THROWS_AS(make_triangle(1, 1, 2), InputError);
}

TEST_CASE("complex construction") {
  std::vector<int> faces{3, 0, 5};
  Complex2 c(5, faces);
  CHECK(c.size() == 3);
  CHECK(c.faces() == std::vector<int>{0, 3, 5});
  CHECK(c.contains(3));
  CHECK_FALSE(c.contains(1));
  std::vector<int> dup{1, 1};
  CHECK_THROWS_AS(Complex2(5, dup), InputError);
  std::vector<int> bad{10};
  CHECK_THROWS_AS(Complex2(5, bad), InputError);

  auto d = c.exchanged(3, 7);
  CHECK(d.faces() == std::vector<int>{0, 5, 7});
}

TEST_CASE("cone tree and the six-vertex projective plane") {
  for (int n = 3; n <= 9; ++n) {
    auto c = cone_tree(n);
    CHECK(c.size() == tree_size(n));
    for (const auto& t : c.triangles()) CHECK(t.v[0] == 0);
  }
  auto rp2 = projective_plane6();
  CHECK(rp2.n() == 6);
  CHECK(rp2.size() == 10);
  // every edge lies in exactly two faces
  std::vector<int> deg(edge_count(6), 0);
  for (const auto& t : rp2.triangles()) {
    ++deg[edge_index(t.v[0], t.v[1], 6)];
    ++deg[edge_index(t.v[0], t.v[2], 6)];
    ++deg[edge_index(t.v[1], t.v[2], 6)];
  }
  for (int d : deg) CHECK(d == 2);
}

TEST_CASE("relabeling preserves the 2-tree property") {
  auto rp2 = projective_plane6();
  std::vector<int> perm{5, 3, 1, 0, 2, 4};
  auto r = rp2.relabeled(perm);
  CHECK(r.size() == 10);
  CHECK(is_2tree(r));
}

TEST_CASE("boundary composes to zero") {
  for (int n = 3; n <= 10; ++n) {
    auto d1 = vertex_boundary(n);
    auto d2 = BoundaryMatrix(n).to_int_matrix();
    auto prod = d1 * d2;
    bool zero = true;
    for (int r = 0; r < prod.rows(); ++r)
      for (int c = 0; c < prod.cols(); ++c) zero = zero && prod.get(r, c) == 0;
    CHECK_MESSAGE(zero, "n=" << n);
  }
}

TEST_CASE("boundary sign convention") {
  // d[0,1,2] = [1,2] - [0,2] + [0,1]
  auto col = boundary_column(0, 4);
  BoundaryMatrix b(4);
  CHECK(b.entry(edge_index(1, 2, 4), 0) == 1);
  CHECK(b.entry(edge_index(0, 2, 4), 0) == -1);
  CHECK(b.entry(edge_index(0, 1, 4), 0) == 1);
  CHECK(b.entry(edge_index(2, 3, 4), 0) == 0);
  int sum = 0;
  for (auto [row, s] : col) sum += s;
  CHECK(sum == 1);
}
