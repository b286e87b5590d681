#include <random>

#include "doctest.h"
#include "hypertree/boundary.hpp"
#include "hypertree/homology.hpp"
#include "hypertree/int_matrix.hpp"

using namespace hypertree;

namespace {

IntMatrix random_matrix(int r, int c, int range, double density, std::mt19937_64& g) {
  IntMatrix m(r, c);
  std::uniform_int_distribution<int> val(-range, range);
  std::bernoulli_distribution nz(density);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j)
      if (nz(g)) m.set(i, j, val(g));
  return m;
}

// Plain rational Gaussian elimination.
int oracle_rank(const IntMatrix& m) {
  std::vector<std::vector<Rational>> a(m.rows(), std::vector<Rational>(m.cols()));
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) a[i][j] = m.get(i, j);
  int rank = 0;
  for (int c = 0; c < m.cols() && rank < m.rows(); ++c) {
    int p = rank;
    while (p < m.rows() && a[p][c] == 0) ++p;
    if (p == m.rows()) continue;
    std::swap(a[p], a[rank]);
    for (int i = rank + 1; i < m.rows(); ++i) {
      if (a[i][c] == 0) continue;
      Rational f = a[i][c] / a[rank][c];
      for (int j = c; j < m.cols(); ++j) a[i][j] -= f * a[rank][j];
    }
    ++rank;
  }
  return rank;
}

// d_k = gcd of all k x k minors; invariant factors are d_k / d_{k-1}.
std::vector<BigInt> oracle_invariants(const IntMatrix& m) {
  const int r = m.rows(), c = m.cols();
  std::vector<BigInt> d{1};
  for (int k = 1; k <= std::min(r, c); ++k) {
    BigInt g = 0;
    std::vector<int> rs(k), cs(k);
    std::vector<bool> rsel(r, false), csel(c, false);
    std::fill(rsel.begin(), rsel.begin() + k, true);
    do {
      std::fill(csel.begin(), csel.end(), false);
      std::fill(csel.begin(), csel.begin() + k, true);
      do {
        std::vector<std::vector<Rational>> sub;
        for (int i = 0; i < r; ++i) {
          if (!rsel[i]) continue;
          std::vector<Rational> row;
          for (int j = 0; j < c; ++j)
            if (csel[j]) row.push_back(Rational(m.get(i, j)));
          sub.push_back(row);
        }
        Rational det = determinant(sub);
        g = gcd(g, BigInt(det.get_num()));
      } while (std::prev_permutation(csel.begin(), csel.end()));
    } while (std::prev_permutation(rsel.begin(), rsel.end()));
    if (g == 0) break;
    d.push_back(g);
  }
  std::vector<BigInt> inv;
  for (std::size_t k = 1; k < d.size(); ++k) {
    BigInt f = d[k] / d[k - 1];
    if (f != 1) inv.push_back(abs(f));
  }
  return inv;
}

std::vector<BigInt> nontrivial(const SnfResult& s) {
  std::vector<BigInt> out;
  for (const auto& f : s.invariant_factors)
    if (f != 1) out.push_back(f);
  return out;
}

IntMatrix random_unimodular(int k, std::mt19937_64& g) {
  IntMatrix u = IntMatrix::identity(k);
  std::uniform_int_distribution<int> idx(0, k - 1), mult(-3, 3);
  for (int step = 0; step < 3 * k; ++step) {
    int a = idx(g), b = idx(g);
    if (a == b) continue;
    int f = mult(g);
    for (int j = 0; j < k; ++j) u.set(a, j, u.get(a, j) + f * u.get(b, j));
  }
  return u;
}

}  // namespace

TEST_CASE("rank over Q matches plain elimination") {
  std::mt19937_64 g(11);
  for (int trial = 0; trial < 300; ++trial) {
    int r = 1 + trial % 9, c = 1 + (trial * 7) % 11;
    auto m = random_matrix(r, c, 4, 0.5, g);
    CHECK(rank_over_q(m) == oracle_rank(m));
  }
  // sparse layout
  for (int trial = 0; trial < 20; ++trial) {
    auto m = random_matrix(70, 80, 2, 0.05, g);
    CHECK(m.layout() == IntMatrix::Layout::Sparse);
    CHECK(rank_over_q(m) == oracle_rank(m));
  }
}

TEST_CASE("SNF matches determinantal divisors") {
  std::mt19937_64 g(5);
  for (int trial = 0; trial < 200; ++trial) {
    int r = 1 + trial % 5, c = 1 + (trial * 3) % 5;
    auto m = random_matrix(r, c, 6, 0.7, g);
    auto s = smith_normal_form(m);
    CHECK(s.rank == oracle_rank(m));
    CHECK(nontrivial(s) == oracle_invariants(m));
  }
}

TEST_CASE("SNF known cases") {
  auto m = IntMatrix::from_rows({{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}});
  auto s = smith_normal_form(m);
  CHECK(s.invariant_factors == std::vector<BigInt>{2, 6, 12});
  auto z = IntMatrix(3, 2);
  CHECK(smith_normal_form(z).rank == 0);
  CHECK(smith_normal_form(z).invariant_factors.empty());
}

TEST_CASE("SNF invariant under unimodular transformations") {
  std::mt19937_64 g(23);
  auto rp2 = BoundaryMatrix(6, projective_plane6().faces()).to_int_matrix();
  auto base = smith_normal_form(rp2);
  for (int trial = 0; trial < 100; ++trial) {
    auto u = random_unimodular(rp2.rows(), g);
    auto v = random_unimodular(rp2.cols(), g);
    auto t = smith_normal_form(u * rp2 * v);
    CHECK(t.invariant_factors == base.invariant_factors);
    CHECK(t.rank == base.rank);
  }
}

TEST_CASE("star-reduced determinant equals |H_1| on 2-trees") {
  std::vector<Complex2> trees{cone_tree(6), projective_plane6(), cone_tree(8)};
  for (const auto& c : trees) {
    auto red = reduced_boundary(c);
    auto rows = red.dense_rows();
    std::vector<std::vector<Rational>> q(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (const auto& x : rows[i]) q[i].push_back(Rational(x));
    Rational det = determinant(q);
    CHECK(abs(det) == Rational(h1_order(c)));
  }
}

TEST_CASE("exact inverse") {
  std::vector<std::vector<BigInt>> m{{2, 1}, {1, 1}};
  auto inv = inverse_over_q(m);
  CHECK(inv[0][0] == 1);
  CHECK(inv[0][1] == -1);
  CHECK(inv[1][1] == 2);
}

TEST_CASE("matrix layouts agree") {
  std::mt19937_64 g(3);
  auto a = random_matrix(10, 70, 3, 0.2, g);
  CHECK(a.layout() == IntMatrix::Layout::Sparse);
  auto t = a.transposed().transposed();
  CHECK(t == a);
}
