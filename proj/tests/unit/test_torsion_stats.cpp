#include <cmath>
#include <random>

#include "doctest.h"
#include "hypertree/errors.hpp"
#include "hypertree/torsion_stats.hpp"

using namespace hypertree;

static Rational Q(long a, long b) {
  Rational q(a, b);
  q.canonicalize();
  return q;
}

#include "oracles.hpp"


TEST_CASE("aut_order small cases") {
  CHECK(aut_order({2, {1}}) == 1);
  CHECK(aut_order({2, {1, 1}}) == 6);
  CHECK(aut_order({2, {2}}) == 2);
  CHECK(aut_order({2, {}}) == 1);
  CHECK(aut_order({3, {1, 1}}) == 48);
  CHECK(aut_order({2, {1, 1, 1}}) == 168);
}

TEST_CASE("aut_order matches brute force for every p-group of order <= 64") {
  int checked = 0;
  for (int p : {2, 3}) {
    for (int s = 0;; ++s) {
      int order = 1;
      for (int i = 0; i < s; ++i) order *= p;
      if (order > 64) break;
      for (const auto& parts : partitions_of(s)) {
        oracle::AutBrute b(p, parts);
        CHECK_MESSAGE(aut_order({p, parts}) == BigInt(static_cast<unsigned long>(b.count())),
                      "p=" << p << " partition size " << s);
        ++checked;
      }
    }
  }
  // 2: partitions of 0..6 (1+1+2+3+5+7+11), 3: partitions of 0..3 (1+1+2+3)
  CHECK(checked == 37);
}

TEST_CASE("Cohen-Lenstra constants") {
  CHECK(cohen_lenstra_constant(2) == doctest::Approx(0.2887880951).epsilon(1e-10));
  CHECK(cohen_lenstra_constant(3) == doctest::Approx(0.5601260779).epsilon(1e-9));
  CHECK(cohen_lenstra_pmf({2, {1}}) == doctest::Approx(cohen_lenstra_pmf({2, {}})));
  double prev = 0.0;
  for (int cap = 1; cap <= 8; ++cap) {
    double mass = 0.0;
    for (int s = 0; s <= cap; ++s)
      for (auto& parts : partitions_of(s)) mass += cohen_lenstra_pmf({2, parts});
    CHECK(mass < 1.0);
    CHECK(mass > prev);
    prev = mass;
  }
  CHECK(prev > 0.99);
}

TEST_CASE("partitions") {
  CHECK(partitions_of(0).size() == 1);
  CHECK(partitions_of(4).size() == 5);
  CHECK(partitions_of(4).front() == std::vector<int>{4});
}

TEST_CASE("comparison with an all-trivial stream") {
  std::vector<TorsionGroup> samples(10000);
  auto cmp = compare_to_cohen_lenstra(samples, 2);
  CHECK(cmp.total_variation == doctest::Approx(1.0 - 0.2887880951).epsilon(1e-9));
  CHECK(cmp.rows.front().group.parts.empty());
  CHECK(cmp.rows.front().empirical == 1.0);
  std::vector<TorsionGroup> few(10);
  CHECK_THROWS_AS(compare_to_cohen_lenstra(few, 2), InputError);
  CHECK_THROWS_AS(compare_to_cohen_lenstra(samples, 4), InputError);
}

TEST_CASE("census pmf at n = 6") {
  auto census = verify_kalai(6, {.keep_records = false});
  auto pmf2 = census_sylow_pmf(census, 2);
  REQUIRE(pmf2.size() == 2);
  CHECK(pmf2[0].second == Q(46608, 46656));
  CHECK(pmf2[1].second == Q(48, 46656));
  auto pmf3 = census_sylow_pmf(census, 3);
  REQUIRE(pmf3.size() == 1);
  CHECK(pmf3[0].second == 1);
  auto cmp = compare_pmf_to_cohen_lenstra(pmf2, 2);
  CHECK(cmp.samples == 0);
  CHECK(cmp.total_variation > 0.5);
  std::ostringstream csv;
  write_comparison_csv(cmp, csv);
  CHECK(csv.str().rfind("p,partition,empirical,cohen_lenstra,z\n2,[],", 0) == 0);
  CHECK(census_expected_torsion(census) == Q(46704, 46656));
}

TEST_CASE("expected torsion bounds") {
  auto b3 = expected_torsion_bounds(3);
  CHECK(b3.log_stated_lower == doctest::Approx(-1.0));
  CHECK(b3.log_upper == doctest::Approx(0.5 * std::log(3.0)));
  auto b6 = expected_torsion_bounds(6);
  CHECK(std::exp(b6.log_upper) == doctest::Approx(243.0));
  CHECK(b6.log_stated_lower < 0.0);
  CHECK(b6.log_proof_lower == doctest::Approx(b6.log_stated_lower / 2));
  CHECK_THROWS_AS(expected_torsion_bounds(2), InputError);
}

TEST_CASE("power mean lemma") {
  std::vector<double> ones{1, 1, 1, 1};
  auto a = power_mean_check(ones);
  CHECK(a.lhs == 4.0);
  CHECK(a.rhs == doctest::Approx(4.0));
  CHECK(a.holds);
  std::vector<double> zeros(5, 0.0);
  CHECK(power_mean_check(zeros).holds);
  std::vector<double> v{1, 2, 3};
  auto c = power_mean_check(v);
  CHECK(c.lhs == 36.0);
  CHECK(c.rhs == doctest::Approx(30.24).epsilon(1e-3));
  std::vector<double> neg{1, -1};
  CHECK_THROWS_AS(power_mean_check(neg), InputError);
  CHECK_THROWS_AS(power_mean_check(std::vector<double>{}), InputError);

  std::mt19937_64 g(8);
  std::uniform_int_distribution<int> len(1, 50);
  std::exponential_distribution<double> val(1.0);
  int violations = 0;
  for (int t = 0; t < 20000; ++t) {
    std::vector<double> xs(len(g));
    for (auto& x : xs) x = val(g);
    violations += !power_mean_check(xs).holds;
  }
  CHECK(violations == 0);
}

TEST_CASE("torsion growth estimate") {
  std::vector<SampleRecord> recs(4);
  for (auto& r : recs) r.n = 6;
  recs[0].h1_order = 2;
  auto g = torsion_growth(recs);
  CHECK(std::exp(g.log_mean) == doctest::Approx(1.25));
  CHECK(g.trivial_fraction == 0.75);
}
