#include "hypertree/homology.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "hypertree/boundary.hpp"
#include "hypertree/errors.hpp"

namespace hypertree {

int PGroupPartition::size() const {
  int s = 0;
  for (int x : parts) s += x;
  return s;
}

std::string PGroupPartition::to_string() const {
  std::string out = "(";
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(parts[i]);
  }
  return out + ")";
}

TorsionGroup::TorsionGroup(std::vector<BigInt> factors) {
  for (const auto& f : factors)
    if (f <= 0) throw InputError("invariant factors must be positive");
  // Pairwise (gcd, lcm) sweep leaves a divisibility chain.
  for (std::size_t i = 0; i < factors.size(); ++i)
    for (std::size_t j = i + 1; j < factors.size(); ++j) {
      BigInt g = gcd(factors[i], factors[j]);
      BigInt l = factors[i] / g * factors[j];
      factors[i] = g;
      factors[j] = l;
    }
  for (auto& f : factors)
    if (f != 1) factors_.push_back(std::move(f));
}

BigInt TorsionGroup::order() const {
  BigInt o = 1;
  for (const auto& f : factors_) o *= f;
  return o;
}

PGroupPartition TorsionGroup::sylow(const BigInt& p) const {
  PGroupPartition out{p, {}};
  BigInt q;
  for (const auto& f : factors_) {
    q = f;
    int v = 0;
    while (mpz_divisible_p(q.get_mpz_t(), p.get_mpz_t())) {
      mpz_divexact(q.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
      ++v;
    }
    if (v > 0) out.parts.push_back(v);
  }
  std::sort(out.parts.rbegin(), out.parts.rend());
  return out;
}

std::vector<PGroupPartition> TorsionGroup::prime_partitions() const {
  std::vector<PGroupPartition> out;
  if (factors_.empty()) return out;
  for (const auto& [p, e] : factorize(factors_.back())) out.push_back(sylow(p));
  return out;
}

std::string TorsionGroup::to_string() const {
  if (factors_.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (i) out += " + ";
    out += "Z/" + factors_[i].get_str();
  }
  return out;
}

TorsionGroup from_prime_partitions(const std::vector<PGroupPartition>& parts) {
  std::size_t len = 0;
  for (const auto& g : parts) len = std::max(len, g.parts.size());
  // Largest factor first: the i-th largest factor collects the i-th largest part of each prime.
  std::vector<BigInt> factors(len, BigInt(1));
  BigInt pk;
  for (const auto& g : parts)
    for (std::size_t i = 0; i < g.parts.size(); ++i) {
      mpz_pow_ui(pk.get_mpz_t(), g.p.get_mpz_t(), static_cast<unsigned long>(g.parts[i]));
      factors[i] *= pk;
    }
  return TorsionGroup(std::move(factors));
}

namespace {

BigInt pollard_brent(const BigInt& n) {
  if (mpz_even_p(n.get_mpz_t())) return 2;
  for (unsigned long c = 1;; ++c) {
    BigInt y = 2, x, ys, q = 1, g = 1;
    const unsigned long m = 128;
    unsigned long r = 1;
    auto f = [&](const BigInt& v) {
      BigInt out = v * v + c;
      mpz_mod(out.get_mpz_t(), out.get_mpz_t(), n.get_mpz_t());
      return out;
    };
    do {
      x = y;
      for (unsigned long i = 0; i < r; ++i) y = f(y);
      unsigned long k = 0;
      while (k < r && g == 1) {
        ys = y;
        for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          q = q * abs(x - y);
          mpz_mod(q.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        }
        g = gcd(q, n);
        k += m;
      }
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        g = gcd(abs(x - ys), n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

}  // namespace

std::vector<std::pair<BigInt, int>> factorize(const BigInt& value) {
  if (value <= 0) throw InputError("factorize expects a positive integer");
  std::map<BigInt, int> primes;
  BigInt n = value;
  for (unsigned long p = 2; p < 10000 && n > 1; p += (p == 2 ? 1 : 2)) {
    while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
      ++primes[BigInt(p)];
    }
  }
  std::function<void(const BigInt&)> split = [&](const BigInt& m) {
    if (m == 1) return;
    if (mpz_probab_prime_p(m.get_mpz_t(), 40) > 0) {
      ++primes[m];
      return;
    }
    BigInt d = pollard_brent(m);
    split(d);
    split(m / d);
  };
  split(n);
  return {primes.begin(), primes.end()};
}

H1 h1(const Complex2& c) {
  const int n = c.n();
  if (n < 3 || c.size() == 0) return {tree_size(n), TorsionGroup{}};
  const auto snf = smith_normal_form(BoundaryMatrix(n, c.faces()).to_int_matrix());
  return {tree_size(n) - snf.rank, TorsionGroup(snf.invariant_factors)};
}

BigInt h1_order(const Complex2& c) {
  if (c.n() < 3 || c.size() != tree_size(c.n()))
    throw ContractViolation("h1_order: complex does not have C(n-1,2) faces, not a 2-tree");
  const auto snf = smith_normal_form(BoundaryMatrix(c.n(), c.faces()).to_int_matrix());
  if (snf.rank != c.size()) throw ContractViolation("h1_order: boundary columns are dependent, not a 2-tree");
  BigInt o = 1;
  for (const auto& d : snf.invariant_factors) o *= d;
  return o;
}

}  // namespace hypertree
