#include <filesystem>
#include <sstream>

#include "doctest.h"
#include "hypertree/boundary.hpp"
#include "hypertree/census.hpp"
#include "hypertree/errors.hpp"
#include "hypertree/kernel.hpp"

using namespace hypertree;

static Rational Q(long a, long b) {
  Rational q(a, b);
  q.canonicalize();
  return q;
}

TEST_CASE("2-tree counts and Kalai sums for n = 3..6") {
  const std::uint64_t totals[] = {1, 4, 125, 46620};
  const long sums[] = {1, 4, 125, 46656};
  for (int n = 3; n <= 6; ++n) {
    auto r = verify_kalai(n);
    CHECK(r.total == totals[n - 3]);
    CHECK(r.kalai_sum == sums[n - 3]);
    CHECK(r.kalai_pass());
    CHECK(r.records.size() == r.total);
  }
}

TEST_CASE("n = 6 histogram: 12 complexes with Z/2") {
  CensusOptions o;
  o.threads = 4;
  o.keep_records = false;
  auto r = verify_kalai(6, o);
  REQUIRE(r.histogram.size() == 2);
  CHECK(r.histogram.at({}).count == 46608);
  CHECK(r.histogram.at({BigInt(2)}).count == 12);
  CHECK(r.histogram.at({BigInt(2)}).weighted == 48);
  std::ostringstream csv;
  write_histogram_csv(r, csv);
  CHECK(csv.str() == "torsion_factors,count,weighted_count\n\"[]\",46608,46608\n\"[2]\",12,48\n");
}

TEST_CASE("enumeration agrees with brute force over face subsets at n = 5") {
  std::vector<std::vector<int>> enumerated;
  enumerate_2trees(5, [&](const Complex2& c) { enumerated.push_back(c.faces()); });
  std::vector<std::vector<int>> brute;
  const int big_n = triangle_count(5), r = tree_size(5);
  for (unsigned mask = 0; mask < (1u << big_n); ++mask) {
    if (std::popcount(mask) != r) continue;
    std::vector<int> f;
    for (int i = 0; i < big_n; ++i)
      if (mask >> i & 1) f.push_back(i);
    if (is_2tree(Complex2(5, f))) brute.push_back(f);
  }
  std::sort(brute.begin(), brute.end());
  CHECK(enumerated == brute);
}

TEST_CASE("pair containment at n = 6") {
  auto census = verify_kalai(6);
  std::vector<int> pair{triangle_index(0, 1, 2, 6), triangle_index(3, 4, 5, 6)};
  auto w = containment_counts(census, pair, true);
  CHECK(w.count == 11664);
  CHECK(w.weighted_count == 11664);
  CHECK(w.probability == Q(1, 4));
  auto u = containment_counts(census, pair, false);
  CHECK(u.probability == Q(11664, 46620));
}

TEST_CASE("kernel minors reproduce |H_1|^2 / 6^6 for every 2-tree at n = 6") {
  auto census = verify_kalai(6);
  auto k = build_kernel(6, KernelBackend::Rational);
  const Rational denom = 46656;
  std::size_t bad = 0;
  for (const auto& rec : census.records) {
    auto faces = rec.faces.indices();
    auto p = containment_probability(k, faces);
    if (p.exact != Rational(rec.h1_order * rec.h1_order) / denom) ++bad;
  }
  CHECK(bad == 0);
}

TEST_CASE("count bound and trivial-H1 probability") {
  auto census = verify_kalai(6);
  auto cb = count_bound_check(census);
  CHECK(cb.holds);
  CHECK(cb.exact == 46620);
  auto t = trivial_h1_probability(census);
  CHECK(t.exact == Q(46608, 46656));
}

TEST_CASE("feasibility guard") {
  CHECK_THROWS_AS(check_census_feasible(7, {}), ResourceError);
  CHECK_THROWS_AS(check_census_feasible(8, {.cap = 6, .allow_larger = true}), ResourceError);
  std::string warned;
  CensusOptions o;
  o.allow_larger = true;
  o.warn = [&](const std::string& s) { warned = s; };
  CHECK_NOTHROW(check_census_feasible(7, o));
  CHECK_FALSE(warned.empty());
}

TEST_CASE("summary JSON round trip and cache") {
  auto dir = std::filesystem::temp_directory_path() / "hypertree-census-test";
  std::filesystem::remove_all(dir);
  CensusOptions o;
  o.keep_records = false;
  o.cache_dir = dir;
  auto a = verify_kalai(5, o);
  CHECK(std::filesystem::exists(dir / "census-n5-v1.json"));
  auto b = verify_kalai(5, o);
  CHECK(b.total == a.total);
  CHECK(b.kalai_sum == a.kalai_sum);
  auto c = census_from_summary_json(census_summary_json(a));
  CHECK(c.histogram.size() == a.histogram.size());
  CHECK(c.kalai_pass());
  std::filesystem::remove_all(dir);
}

TEST_CASE("degenerate n") {
  auto r = verify_kalai(2);
  CHECK(r.total == 1);
  CHECK(r.kalai_pass());
}
