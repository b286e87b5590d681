#include <cmath>
#include <random>

#include "doctest.h"
#include "hypertree/certificates.hpp"
#include "hypertree/errors.hpp"

using namespace hypertree;

#include "oracles.hpp"

using oracle::brute_force;
using oracle::random_complex;


TEST_CASE("fractions") {
  CHECK(parse_fraction("3/2") == Fraction{3, 2});
  CHECK(parse_fraction("1.5") == Fraction{3, 2});
  CHECK(parse_fraction("2") == Fraction{2, 1});
  CHECK(parse_fraction("47/46").to_string() == "47/46");
  CHECK(Fraction{10, 6}.to_string() == "5/3");
  CHECK_THROWS_AS(parse_fraction("x"), InputError);
  CHECK_THROWS_AS(parse_fraction("1/0"), InputError);
  CHECK(Fraction{5, 3} > kHyperbolicityThreshold);
}

TEST_CASE("branch and bound equals brute force") {
  std::mt19937_64 g(2024);
  for (int trial = 0; trial < 80; ++trial) {
    const int n = 4 + trial % 5;
    const double p = 0.1 + 0.1 * (trial % 7);
    auto c = random_complex(n, p, g);
    const int cap = 3 + trial % (n - 2);
    auto rep = densest_subcomplex(c, cap);
    auto b = brute_force(c, cap);
    CHECK(rep.exhaustive);
    CHECK(rep.ratio == b.best);
    CHECK(rep.vertices == b.vertices);
    ScanOptions par;
    par.threads = 3;
    auto rep3 = densest_subcomplex(c, cap, kHyperbolicityThreshold, par);
    CHECK(rep3.ratio == b.best);
    CHECK(rep3.vertices == b.vertices);
  }
}

TEST_CASE("projective plane fails both thresholds") {
  auto rp2 = projective_plane6();
  auto h = hyperbolicity_certificate(rp2, 6);
  CHECK(h.ratio == Fraction{5, 3});
  CHECK(h.f0 == 6);
  CHECK(h.f2 == 10);
  CHECK_FALSE(h.pass);
  auto a = asphericity_certificate(rp2, 6);
  CHECK_FALSE(a.pass);
  CHECK(a.tetrahedron_free == true);
}

TEST_CASE("tetrahedron detection") {
  std::vector<Triangle> tet{{{0, 1, 2}}, {{0, 1, 3}}, {{0, 2, 3}}, {{1, 2, 3}}};
  Complex2 c(5, tet);
  CHECK(has_tetrahedron_boundary(c));
  CHECK_FALSE(has_tetrahedron_boundary(cone_tree(6)));
  auto a = asphericity_certificate(c, 5);
  CHECK_FALSE(a.pass);
}

TEST_CASE("a cone is as dense as possible") {
  // the whole cone: C(n-1,2) faces on n vertices
  auto rep = hyperbolicity_certificate(cone_tree(10), 10);
  CHECK_FALSE(rep.pass);
  CHECK(rep.ratio == Fraction{36, 10});
  CHECK(rep.vertices.size() == 10);
  CHECK(rep.exhaustive);
  // a single face stays below 3/2
  std::vector<int> one{0};
  CHECK(hyperbolicity_certificate(Complex2(10, one), 10).pass);
}

TEST_CASE("node budget marks partial scans") {
  std::mt19937_64 g(1);
  auto c = random_complex(20, 0.3, g);
  ScanOptions o;
  o.node_budget = 50;
  auto rep = densest_subcomplex(c, 10, kHyperbolicityThreshold, o);
  CHECK_FALSE(rep.exhaustive);
  CHECK_THROWS_AS(densest_subcomplex(c, 2), InputError);
}

TEST_CASE("trim to threshold") {
  auto rp2 = projective_plane6();
  std::vector<int> all{0, 1, 2, 3, 4, 5};
  auto faces = trim_to_threshold(rp2, all, kHyperbolicityThreshold);
  CHECK(faces.size() == 9);
  CHECK_THROWS_AS(trim_to_threshold(rp2, all, Fraction{2, 1}), InputError);
}

TEST_CASE("union bound matches termwise arithmetic") {
  for (int n : {20, 50, 100, 400}) {
    for (int cp : {1, 4, 6, 10}) {
      auto ub = union_bound_value(n, cp);
      REQUIRE(static_cast<int>(ub.terms.size()) == cp);
      double total = 0.0;
      for (int k = 1; k <= cp; ++k) {
        const int m = (3 * k + 1) / 2;
        // log-space oracle
        double lg = std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
        const double t = static_cast<double>(choose(k, 3));
        lg += (m <= t) ? std::lgamma(t + 1) - std::lgamma(m + 1.0) - std::lgamma(t - m + 1) : -INFINITY;
        lg += m * std::log(3.0 / n);
        const double term = std::exp(lg);
        CHECK(ub.terms[k - 1].get_d() == doctest::Approx(term).epsilon(1e-10));
        total += term;
      }
      CHECK(ub.value == doctest::Approx(total).epsilon(1e-10));
    }
  }
  double prev = INFINITY;
  for (int n : {50, 100, 200, 400}) {
    double v = union_bound_value(n, 6).value;
    CHECK(v < prev);
    prev = v;
  }
}

TEST_CASE("report JSON uses 1-based vertices") {
  auto rep = hyperbolicity_certificate(projective_plane6(), 6);
  auto js = report_json(rep);
  CHECK(js.find("\"ratio\": \"5/3\"") != std::string::npos);
  CHECK(js.find("6") != std::string::npos);
}

TEST_CASE("enlarging C' never lowers the maximum") {
  std::mt19937_64 g(77);
  for (int trial = 0; trial < 10; ++trial) {
    auto c = random_complex(9, 0.25, g);
    Fraction prev{0, 1};
    for (int cap = 3; cap <= 9; ++cap) {
      auto r = densest_subcomplex(c, cap).ratio;
      CHECK(r >= prev);
      prev = r;
    }
  }
}

TEST_CASE("union bound against the long double oracle") {
  CHECK(union_bound_value(100, 3).exact == 0);
  for (int n : {50, 100, 200, 400})
    for (int k = 1; k <= 8; ++k) {
      const double want = static_cast<double>(oracle::union_term(n, k));
      const double got = union_bound_value(n, k).terms[k - 1].get_d();
      if (want == 0.0)
        CHECK(got == 0.0);
      else
        CHECK(std::abs(got - want) / want < 1e-12);
    }
}
