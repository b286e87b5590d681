#include "doctest.h"
#include "hypertree/boundary.hpp"
#include "hypertree/errors.hpp"
#include "hypertree/homology.hpp"

using namespace hypertree;

TEST_CASE("projective plane has H_1 = Z/2") {
  auto rp2 = projective_plane6();
  CHECK(is_2tree(rp2));
  auto h = h1(rp2);
  CHECK(h.betti1 == 0);
  CHECK(h.torsion.factors() == std::vector<BigInt>{2});
  CHECK(h.torsion.to_string() == "Z/2");
  CHECK(h1_order(rp2) == 2);
}

TEST_CASE("cone is collapsible") {
  auto h = h1(cone_tree(7));
  CHECK(h.betti1 == 0);
  CHECK(h.torsion.trivial());
  CHECK(h.torsion.to_string() == "0");
}

TEST_CASE("free part counts missing rank") {
  std::vector<int> none;
  auto h = h1(Complex2(5, none));
  CHECK(h.betti1 == 6);  // C(4,2) independent cycles
  std::vector<int> one{0};
  CHECK(h1(Complex2(5, one)).betti1 == 5);
  CHECK_THROWS_AS(h1_order(Complex2(5, one)), ContractViolation);
}

TEST_CASE("torsion group normalization") {
  TorsionGroup g({BigInt(4), BigInt(6), BigInt(1)});
  // Z/4 + Z/6 = Z/2 + Z/12
  CHECK(g.factors() == std::vector<BigInt>{2, 12});
  CHECK(g.order() == 24);
  auto s2 = g.sylow(2);
  CHECK(s2.parts == std::vector<int>{2, 1});
  auto s3 = g.sylow(3);
  CHECK(s3.parts == std::vector<int>{1});
  CHECK(g.sylow(5).parts.empty());
  auto parts = g.prime_partitions();
  REQUIRE(parts.size() == 2);
  CHECK(from_prime_partitions(parts) == g);
  CHECK_THROWS_AS(TorsionGroup({BigInt(0)}), InputError);
}

TEST_CASE("factorization") {
  BigInt n("1000000016000000063");  // (1e9+7) * (1e9+9)
  auto f = factorize(n);
  REQUIRE(f.size() == 2);
  CHECK(f[0].first == BigInt("1000000007"));
  CHECK(f[1].first == BigInt("1000000009"));
  auto g = factorize(BigInt(360));
  CHECK(g == std::vector<std::pair<BigInt, int>>{{2, 3}, {3, 2}, {5, 1}});
}

TEST_CASE("partition strings") {
  PGroupPartition p{3, {2, 1}};
  CHECK(p.size() == 3);
  CHECK_FALSE(p.to_string().empty());
}
