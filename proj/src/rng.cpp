#include "hypertree/rng.hpp"

#include <algorithm>
#include <vector>

#include "hypertree/errors.hpp"

namespace hypertree {

std::uint64_t Rng::below(std::uint64_t m) {
  if (m == 0) throw InputError("Rng::below(0)");
  std::uint64_t x = next();
  unsigned __int128 prod = static_cast<unsigned __int128>(x) * m;
  auto low = static_cast<std::uint64_t>(prod);
  if (low < m) {
    const std::uint64_t threshold = (0 - m) % m;
    while (low < threshold) {
      x = next();
      prod = static_cast<unsigned __int128>(x) * m;
      low = static_cast<std::uint64_t>(prod);
    }
  }
  return static_cast<std::uint64_t>(prod >> 64);
}

std::size_t choose_exact(std::span<const Rational> weights, const Rational& total, Rng& rng) {
  if (weights.empty() || total <= 0) throw InputError("choose_exact needs positive total weight");
  std::vector<Rational> cum(weights.size() + 1);
  cum[0] = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) cum[i + 1] = cum[i] + weights[i];

  BigInt m = 0;
  BigInt scale = 1;  // 2^bits
  Rational lo, hi;
  for (;;) {
    m <<= 64;
    m += BigInt(static_cast<unsigned long>(rng.next()));
    scale <<= 64;
    lo = Rational(m * total.get_num(), scale * total.get_den());
    hi = Rational((m + 1) * total.get_num(), scale * total.get_den());
    lo.canonicalize();
    hi.canonicalize();
    auto it = std::upper_bound(cum.begin(), cum.end(), lo);
    const std::size_t i = static_cast<std::size_t>(it - cum.begin()) - 1;
    if (i < weights.size() && hi <= cum[i + 1]) return i;
  }
}

bool bernoulli_exact(const Rational& q, Rng& rng) {
  if (q <= 0) return false;
  if (q >= 1) return true;
  const Rational w[2] = {q, 1 - q};
  return choose_exact(w, Rational(1), rng) == 0;
}

}  // namespace hypertree
