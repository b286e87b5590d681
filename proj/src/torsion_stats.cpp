#include "hypertree/torsion_stats.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "hypertree/errors.hpp"

namespace hypertree {

namespace {

BigInt pow_big(const BigInt& p, long e) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(std::max(0L, e)));
  return r;
}

double log_big(const BigInt& x) {
  long exp = 0;
  const double mant = mpz_get_d_2exp(&exp, x.get_mpz_t());
  return std::log(mant) + static_cast<double>(exp) * std::log(2.0);
}

void check_prime(const BigInt& p) {
  if (p < 2 || mpz_probab_prime_p(p.get_mpz_t(), 30) == 0) throw InputError("p = " + p.get_str() + " is not prime");
}

// Rows ordered by |H| then by partition, largest parts first.
bool row_order(const PGroupPartition& a, const PGroupPartition& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a.parts > b.parts;
}

DistributionComparison finish(const BigInt& p, std::map<std::vector<int>, double> empirical, std::uint64_t samples) {
  // Always show the small groups, observed or not.
  for (int s = 0; s <= 3; ++s)
    for (auto& parts : partitions_of(s)) empirical.try_emplace(parts, 0.0);
  DistributionComparison cmp;
  cmp.p = p;
  cmp.samples = samples;
  double cl_sum = 0.0, abs_sum = 0.0;
  for (const auto& [parts, e] : empirical) {
    ComparisonRow row;
    row.group = PGroupPartition{p, parts};
    row.empirical = e;
    row.cohen_lenstra = cohen_lenstra_pmf(row.group);
    if (samples > 0) {
      const double var = row.cohen_lenstra * (1.0 - row.cohen_lenstra) / static_cast<double>(samples);
      row.z = var > 0 ? (e - row.cohen_lenstra) / std::sqrt(var) : 0.0;
    }
    cl_sum += row.cohen_lenstra;
    abs_sum += std::abs(e - row.cohen_lenstra);
    cmp.rows.push_back(std::move(row));
  }
  std::sort(cmp.rows.begin(), cmp.rows.end(),
            [](const ComparisonRow& a, const ComparisonRow& b) { return row_order(a.group, b.group); });
  cmp.cl_remainder = std::max(0.0, 1.0 - cl_sum);
  cmp.total_variation = 0.5 * abs_sum + 0.5 * cmp.cl_remainder;
  return cmp;
}

}  // namespace

// Hillar and Rhea: with exponents e_1 <= ... <= e_m, d_k = max{l : e_l = e_k}
// and c_k = min{l : e_l = e_k},
//   |Aut| = prod (p^d_k - p^(k-1)) * prod (p^e_j)^(m - d_j) * prod (p^(e_i - 1))^(m - c_i + 1).
BigInt aut_order(const PGroupPartition& g) {
  std::vector<int> e = g.parts;
  for (int x : e)
    if (x <= 0) throw InputError("partition parts must be positive");
  std::sort(e.begin(), e.end());
  const long m = static_cast<long>(e.size());
  BigInt out = 1;
  for (long k = 0; k < m; ++k) {
    long d = k, c = k;
    while (d + 1 < m && e[d + 1] == e[k]) ++d;
    while (c > 0 && e[c - 1] == e[k]) --c;
    // 1-based d_k = d + 1, c_k = c + 1
    out *= pow_big(g.p, d + 1) - pow_big(g.p, k);
    out *= pow_big(g.p, static_cast<long>(e[k]) * (m - (d + 1)));
    out *= pow_big(g.p, static_cast<long>(e[k] - 1) * (m - c));
  }
  return out;
}

double cohen_lenstra_constant(const BigInt& p) {
  const double inv = 1.0 / p.get_d();
  double prod = 1.0, term = inv;
  while (term >= 1e-15) {
    prod *= 1.0 - term;
    term *= inv;
  }
  return prod;
}

double cohen_lenstra_pmf(const PGroupPartition& g) {
  return cohen_lenstra_constant(g.p) / aut_order(g).get_d();
}

std::vector<std::vector<int>> partitions_of(int total) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int left, int max_part) -> void {
    if (left == 0) {
      out.push_back(cur);
      return;
    }
    for (int part = std::min(left, max_part); part >= 1; --part) {
      cur.push_back(part);
      self(self, left - part, part);
      cur.pop_back();
    }
  };
  if (total >= 0) rec(rec, total, total);
  return out;
}

DistributionComparison compare_to_cohen_lenstra(std::span<const TorsionGroup> samples, const BigInt& p,
                                                std::uint64_t min_samples) {
  check_prime(p);
  if (samples.size() < min_samples)
    throw InputError("comparison needs at least " + std::to_string(min_samples) + " samples, got " +
                     std::to_string(samples.size()));
  std::map<std::vector<int>, std::uint64_t> counts;
  for (const auto& g : samples) ++counts[g.sylow(p).parts];
  std::map<std::vector<int>, double> empirical;
  for (const auto& [parts, k] : counts) empirical[parts] = static_cast<double>(k) / static_cast<double>(samples.size());
  return finish(p, std::move(empirical), samples.size());
}

DistributionComparison compare_pmf_to_cohen_lenstra(const std::vector<std::pair<PGroupPartition, Rational>>& pmf,
                                                    const BigInt& p) {
  check_prime(p);
  std::map<std::vector<int>, double> empirical;
  for (const auto& [g, q] : pmf) {
    if (g.p != p) throw InputError("pmf mixes primes");
    empirical[g.parts] += q.get_d();
  }
  return finish(p, std::move(empirical), 0);
}

std::vector<std::pair<PGroupPartition, Rational>> census_sylow_pmf(const CensusResult& census, const BigInt& p) {
  check_prime(p);
  std::map<std::vector<int>, BigInt> mass;
  for (const auto& [key, entry] : census.histogram) mass[entry.group.sylow(p).parts] += entry.weighted;
  std::vector<std::pair<PGroupPartition, Rational>> out;
  for (const auto& [parts, w] : mass) {
    Rational q(w, census.kalai_target);
    q.canonicalize();
    out.emplace_back(PGroupPartition{p, parts}, q);
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return row_order(a.first, b.first); });
  return out;
}

void write_comparison_csv(const DistributionComparison& cmp, std::ostream& out) {
  out << "p,partition,empirical,cohen_lenstra,z\n";
  auto old = out.precision(12);
  for (const auto& r : cmp.rows) {
    std::string part = "[";
    for (std::size_t i = 0; i < r.group.parts.size(); ++i) part += (i ? " " : "") + std::to_string(r.group.parts[i]);
    part += "]";
    out << cmp.p.get_str() << "," << part << "," << r.empirical << "," << r.cohen_lenstra << "," << r.z << "\n";
  }
  out.precision(old);
}

TorsionBounds expected_torsion_bounds(int n) {
  if (n < 3) throw InputError("expected torsion bounds need n >= 3");
  TorsionBounds b;
  b.n = n;
  const double e = std::exp(1.0);
  b.log_stated_lower = static_cast<double>(choose(n - 2, 2)) * std::log(3.0 / e) +
                       static_cast<double>(n - 2) * std::log(3.0 / (e * n));
  b.log_proof_lower = 0.5 * b.log_stated_lower;
  b.log_upper = 0.5 * static_cast<double>(choose(n - 1, 2)) * std::log(3.0);
  return b;
}

Rational census_expected_torsion(const CensusResult& census) {
  BigInt cubes = 0;
  for (const auto& [key, entry] : census.histogram) cubes += entry.weighted * entry.group.order();
  Rational q(cubes, census.kalai_target);
  q.canonicalize();
  return q;
}

TorsionGrowth torsion_growth(std::span<const SampleRecord> records) {
  if (records.empty()) throw InputError("no samples");
  TorsionGrowth g;
  g.n = records.front().n;
  g.samples = records.size();
  std::vector<double> logs;
  std::uint64_t trivial = 0;
  for (const auto& r : records) {
    if (r.n != g.n) throw InputError("samples mix different n");
    logs.push_back(log_big(r.h1_order));
    trivial += r.h1_order == 1;
  }
  // Mean and spread of |H_1| on a scale relative to the largest sample.
  const double top = *std::max_element(logs.begin(), logs.end());
  const double N = static_cast<double>(records.size());
  double s1 = 0.0, s2 = 0.0;
  for (double l : logs) {
    const double x = std::exp(l - top);
    s1 += x;
    s2 += x * x;
  }
  const double mean = s1 / N;
  const double var = N > 1 ? std::max(0.0, (s2 - N * mean * mean) / (N - 1)) : 0.0;
  const double half = 1.96 * std::sqrt(var / N);
  g.log_mean = top + std::log(mean);
  g.log_ci_low = mean - half > 0 ? top + std::log(mean - half) : -INFINITY;
  g.log_ci_high = top + std::log(mean + half);
  g.log_mean_per_n2 = g.log_mean / (static_cast<double>(g.n) * g.n);
  g.trivial_fraction = static_cast<double>(trivial) / N;
  const double th = 1.96 * std::sqrt(g.trivial_fraction * (1 - g.trivial_fraction) / N);
  g.trivial_ci_low = std::max(0.0, g.trivial_fraction - th);
  g.trivial_ci_high = std::min(1.0, g.trivial_fraction + th);
  return g;
}

PowerMean power_mean_check(std::span<const double> xs) {
  if (xs.empty()) throw InputError("power_mean_check needs at least one value");
  double s2 = 0.0, s3 = 0.0;
  for (double x : xs) {
    if (!(x >= 0.0) || !std::isfinite(x)) throw InputError("power_mean_check needs finite non-negative values");
    s2 += x * x;
    s3 += x * x * x;
  }
  PowerMean pm;
  pm.lhs = s3;
  pm.rhs = std::pow(s2, 1.5) / std::sqrt(static_cast<double>(xs.size()));
  pm.holds = pm.lhs >= pm.rhs * (1.0 - 1e-12);
  return pm;
}

}  // namespace hypertree
