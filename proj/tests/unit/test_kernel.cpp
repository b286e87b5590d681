#include <random>

#include "doctest.h"
#include "hypertree/boundary.hpp"
#include "hypertree/errors.hpp"
#include "hypertree/kernel.hpp"

using namespace hypertree;

static Rational Q(long a, long b) {
  Rational q(a, b);
  q.canonicalize();
  return q;
}

// On the full simplex d2 d2^T restricted to cycles is n times the identity,
// so the projection is d2^T d2 / n. Built here from the boundary alone.
static Rational oracle_entry(const BoundaryMatrix& b, int s, int t) {
  long acc = 0;
  for (auto [r, x] : boundary_column(s, b.n()))
    acc += x * b.entry(r, t);
  Rational q(acc, b.n());
  q.canonicalize();
  return q;
}

TEST_CASE("rational kernel matches d2^T d2 / n and is a projection") {
  for (int n = 3; n <= 7; ++n) {
    auto k = build_kernel(n, KernelBackend::Rational);
    BoundaryMatrix b(n);
    auto d = k.dense_exact();
    const int big_n = k.size();
    Rational trace = 0;
    for (int s = 0; s < big_n; ++s) {
      trace += d[s][s];
      for (int t = 0; t < big_n; ++t) {
        CHECK(d[s][t] == oracle_entry(b, s, t));
        CHECK(k.factored_entry_exact(s, t) == d[s][t]);
      }
    }
    CHECK(trace == tree_size(n));
    // K^2 = K
    if (n <= 6) {
      for (int s = 0; s < big_n; ++s)
        for (int t = 0; t < big_n; ++t) {
          Rational acc = 0;
          for (int u = 0; u < big_n; ++u) acc += d[s][u] * d[u][t];
          CHECK(acc == d[s][t]);
        }
    }
  }
}

TEST_CASE("diagonal is 3/n for n up to 10") {
  for (int n = 3; n <= 10; ++n) {
    auto k = build_kernel(n, KernelBackend::Rational);
    CHECK(k.orbit_compressed());
    CHECK(k.orbit_values_exact()[3] == Q(3, n));
    for (int s = 0; s < k.size(); s += 7) CHECK(k.factored_entry_exact(s, s) == Q(3, n));
  }
}

TEST_CASE("float backend agrees with the rational one") {
  auto exact = build_kernel(8, KernelBackend::Rational);
  auto approx = build_kernel(8, KernelBackend::Float);
  CHECK_THROWS_AS(approx.entry_exact(0, 0), ContractViolation);
  for (int s = 0; s < exact.size(); s += 3)
    for (int t = 0; t < exact.size(); t += 5) CHECK(approx.entry(s, t) == doctest::Approx(exact.entry_exact(s, t).get_d()).epsilon(1e-12));
}

TEST_CASE("containment probabilities") {
  auto k = build_kernel(6, KernelBackend::Rational);
  std::vector<int> pair{triangle_index(0, 1, 2, 6), triangle_index(3, 4, 5, 6)};
  auto p = containment_probability(k, pair);
  CHECK(p.has_exact);
  CHECK(p.exact == Q(1, 4));
  std::vector<int> one{5};
  CHECK(containment_probability(k, one).exact == Q(1, 2));
  std::vector<int> rep{1, 1};
  CHECK_THROWS_AS(containment_probability(k, rep), InputError);
}

TEST_CASE("negative association spot checks") {
  auto k = build_kernel(6, KernelBackend::Rational);
  std::mt19937_64 g(99);
  std::uniform_int_distribution<int> face(0, k.size() - 1);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<int> s;
    while (static_cast<int>(s.size()) < 2 + trial % 2) {
      int f = face(g);
      if (std::find(s.begin(), s.end(), f) == s.end()) s.push_back(f);
    }
    CHECK(containment_probability(k, s).exact <= Q(1, 1 << s.size()));
  }
}

TEST_CASE("kernel budget") {
  KernelOptions tiny;
  tiny.memory_budget_bytes = 1000;
  CHECK_THROWS_AS(build_kernel(12, KernelBackend::Float, tiny), ResourceError);
  CHECK_THROWS_AS(build_kernel(2, KernelBackend::Float), InputError);
}
