#include <cmath>
#include <set>

#include "doctest.h"
#include "hypertree/boundary.hpp"
#include "hypertree/errors.hpp"
#include "hypertree/rng.hpp"
#include "hypertree/sampler.hpp"

using namespace hypertree;

static Rational Q(long a, long b) {
  Rational q(a, b);
  q.canonicalize();
  return q;
}

TEST_CASE("rng stream is pinned") {
  Rng a(1), b(1);
  for (int i = 0; i < 10; ++i) CHECK(a.next() == b.next());
  Rng c(5489);
  std::mt19937_64 ref(5489);
  CHECK(c.next() == ref());
  Rng d(3);
  for (int i = 0; i < 1000; ++i) {
    CHECK(d.below(7) < 7);
    double u = d.uniform01();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("exact choice and bernoulli") {
  Rng r(17);
  std::vector<Rational> w{Q(1, 3), Rational(0), Q(2, 3)};
  int counts[3] = {0, 0, 0};
  for (int i = 0; i < 30000; ++i) ++counts[choose_exact(w, Rational(1), r)];
  CHECK(counts[1] == 0);
  CHECK(std::abs(counts[0] - 10000) < 400);
  int ones = 0;
  for (int i = 0; i < 30000; ++i) ones += bernoulli_exact(Q(1, 4), r);
  CHECK(std::abs(ones - 7500) < 350);
  CHECK(bernoulli_exact(Rational(1), r));
  CHECK_FALSE(bernoulli_exact(Rational(0), r));
}

TEST_CASE("method names") {
  CHECK(parse_method("dpp") == Method::Dpp);
  CHECK(parse_method("mh") == Method::Mh);
  CHECK_THROWS_AS(parse_method("gibbs"), InputError);
}

TEST_CASE("n = 3 has a single 2-tree") {
  auto recs = sample_batch(3, 5, Method::Dpp, 1);
  REQUIRE(recs.size() == 5);
  for (const auto& r : recs) CHECK(r.complex == recs[0].complex);
  auto mh = sample_batch(3, 5, Method::Mh, 1);
  for (const auto& r : mh) CHECK(r.complex.size() == 1);
}

TEST_CASE("n = 4 samples cover all four trees") {
  auto recs = sample_batch(4, 1000, Method::Dpp, 7);
  std::set<std::vector<int>> seen;
  for (const auto& r : recs) {
    CHECK(is_2tree(r.complex));
    seen.insert(r.complex.faces());
  }
  CHECK(seen.size() == 4);
}

TEST_CASE("batches are deterministic given seed and workers") {
  BatchOptions one, four;
  four.workers = 4;
  auto a = sample_batch(6, 40, Method::Dpp, 3, one);
  auto b = sample_batch(6, 40, Method::Dpp, 3, one);
  auto c = sample_batch(6, 40, Method::Dpp, 3, four);
  auto d = sample_batch(6, 40, Method::Dpp, 3, four);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].complex == b[i].complex);
    CHECK(c[i].complex == d[i].complex);
  }
  // worker 0 reproduces the single-worker stream prefix
  for (std::size_t i = 0; i < 10; ++i) CHECK(a[i].complex == c[i].complex);
}

TEST_CASE("face marginal at n = 5 is 3/5") {
  auto recs = sample_batch(5, 4000, Method::Dpp, 11);
  const int f = triangle_index(1, 2, 4, 5);
  int hits = 0;
  for (const auto& r : recs) hits += r.complex.contains(f);
  const double p = 0.6, sd = std::sqrt(p * (1 - p) / 4000);
  CHECK(std::abs(hits / 4000.0 - p) < 4 * sd);
}

TEST_CASE("float backend samples are 2-trees") {
  BatchOptions o;
  o.backend = KernelBackend::Float;
  auto recs = sample_batch(9, 20, Method::Dpp, 2, o);
  for (const auto& r : recs) {
    CHECK(is_2tree(r.complex));
    CHECK(r.h1_order >= 1);
  }
}

TEST_CASE("MH chain stays on 2-trees") {
  Rng r(4);
  std::uint64_t seen = 0;
  auto st = mh_chain(6, 2000, r, std::nullopt, [&](const MhState& s) {
    ++seen;
    if (seen % 100 == 0) CHECK(is_2tree(s.current));
  });
  CHECK(seen == 2000);
  CHECK(st.steps == 2000);
  CHECK(st.accepted <= st.valid);
  CHECK(st.accepted > 0);
  std::vector<int> single{0};
  CHECK_THROWS_AS(MhChain(6, Complex2(6, single)), InputError);
}

TEST_CASE("batch means") {
  std::vector<double> xs(1000);
  for (std::size_t i = 0; i < xs.size(); ++i) xs[i] = i % 2;
  auto bm = batch_means(xs, 10);
  CHECK(bm.mean == doctest::Approx(0.5));
  CHECK(bm.batches == 10);
  CHECK(bm.std_error >= 0.0);
}
