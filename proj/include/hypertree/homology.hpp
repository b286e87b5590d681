#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hypertree/complex.hpp"
#include "hypertree/int_matrix.hpp"

namespace hypertree {

/// Sylow p-subgroup type: H_p = sum of Z/p^parts[i], parts weakly decreasing.
/// An empty partition is the trivial group.
struct PGroupPartition {
  BigInt p = 2;
  std::vector<int> parts;

  int size() const;  // sum of parts, i.e. log_p |H_p|
  std::string to_string() const;

  friend bool operator==(const PGroupPartition& a, const PGroupPartition& b) {
    return a.p == b.p && a.parts == b.parts;
  }
  friend bool operator<(const PGroupPartition& a, const PGroupPartition& b) {
    if (a.p != b.p) return a.p < b.p;
    return a.parts < b.parts;
  }
};

/// Finite abelian group in invariant-factor form. Factors equal to 1 are
/// dropped, so the trivial group has no factors.
class TorsionGroup {
 public:
  TorsionGroup() = default;
  /// Accepts any list of positive integers; sorts them into a divisibility
  /// chain and drops 1s. Throws InputError on a non-positive entry.
  explicit TorsionGroup(std::vector<BigInt> factors);

  const std::vector<BigInt>& factors() const { return factors_; }
  BigInt order() const;
  bool trivial() const { return factors_.empty(); }

  /// Sylow p-subgroup as a partition (p need not divide the order).
  PGroupPartition sylow(const BigInt& p) const;
  /// Partition for every prime dividing the order. Requires factoring the
  /// largest invariant factor.
  std::vector<PGroupPartition> prime_partitions() const;

  /// "0" for trivial, else e.g. "Z/2 + Z/4".
  std::string to_string() const;

  friend bool operator==(const TorsionGroup&, const TorsionGroup&) = default;
  friend bool operator<(const TorsionGroup& a, const TorsionGroup& b) { return a.factors_ < b.factors_; }

 private:
  std::vector<BigInt> factors_;
};

/// Rebuilds invariant factors from per-prime partitions (CRT).
TorsionGroup from_prime_partitions(const std::vector<PGroupPartition>& parts);

/// Prime factorization by trial division and Pollard-Brent rho.
std::vector<std::pair<BigInt, int>> factorize(const BigInt& n);

struct H1 {
  int betti1 = 0;
  TorsionGroup torsion;
};

/// Integral first homology of a 2-complex with complete 1-skeleton.
H1 h1(const Complex2& c);

/// |H_1(c)| for a 2-tree. Throws ContractViolation if c is not a 2-tree.
BigInt h1_order(const Complex2& c);

}  // namespace hypertree
