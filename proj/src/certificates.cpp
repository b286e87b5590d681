#include "hypertree/certificates.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <numeric>
#include <thread>

#include "hypertree/errors.hpp"
#include "json.hpp"

namespace hypertree {

std::string Fraction::to_string() const {
  const std::int64_t g = std::gcd(num, den);
  const std::int64_t a = g ? num / g : num;
  const std::int64_t b = g ? den / g : den;
  return b == 1 ? std::to_string(a) : std::to_string(a) + "/" + std::to_string(b);
}

Fraction parse_fraction(const std::string& text) {
  auto parse_i64 = [&](std::string_view s) {
    std::int64_t v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size() || s.empty())
      throw InputError("cannot parse threshold '" + text + "'");
    return v;
  };
  Fraction f;
  if (const auto slash = text.find('/'); slash != std::string::npos) {
    f = {parse_i64(std::string_view(text).substr(0, slash)), parse_i64(std::string_view(text).substr(slash + 1))};
  } else if (const auto dot = text.find('.'); dot != std::string::npos) {
    const std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    const std::size_t decimals = text.size() - dot - 1;
    if (decimals > 15) throw InputError("threshold '" + text + "' has too many decimals");
    std::int64_t den = 1;
    for (std::size_t i = 0; i < decimals; ++i) den *= 10;
    f = {parse_i64(digits), den};
  } else {
    f = {parse_i64(text), 1};
  }
  if (f.den <= 0 || f.num < 0) throw InputError("threshold must be a non-negative ratio");
  const std::int64_t g = std::gcd(f.num, f.den);
  if (g > 1) f = {f.num / g, f.den / g};
  return f;
}

namespace {

using Mask = std::uint64_t;

Mask bit(int v) { return Mask{1} << v; }

class Scanner {
 public:
  Scanner(const Complex2& c, int cap, std::uint64_t budget)
      : n_(c.n()), cap_(cap), budget_(budget), pair_(static_cast<std::size_t>(n_) * n_, 0) {
    std::vector<int> degree(n_, 0);
    for (const auto& t : c.triangles()) {
      const int a = t.v[0], b = t.v[1], d = t.v[2];
      pair_[a * n_ + b] |= bit(d);
      pair_[b * n_ + a] |= bit(d);
      pair_[a * n_ + d] |= bit(b);
      pair_[d * n_ + a] |= bit(b);
      pair_[b * n_ + d] |= bit(a);
      pair_[d * n_ + b] |= bit(a);
      ++degree[a];
      ++degree[b];
      ++degree[d];
    }
    order_.resize(n_);
    std::iota(order_.begin(), order_.end(), 0);
    std::stable_sort(order_.begin(), order_.end(), [&](int x, int y) { return degree[x] > degree[y]; });
  }

  // Faces {x,u,w} with u, w in W.
  int gain(int x, Mask w) const {
    int twice = 0;
    for (Mask m = w; m; m &= m - 1) twice += std::popcount(pair_[x * n_ + std::countr_zero(m)] & w);
    return twice / 2;
  }

  // Upper bound test: can a superset W + X (X from cand, 1 <= |X| <= cap-size)
  // have ratio > target (strict) or >= target (otherwise)?
  bool promising(Mask w, int size, int f2, Mask cand, Fraction target, bool strict) const {
    const int k_max = std::min(cap_ - size, std::popcount(cand));
    if (k_max <= 0) return false;
    struct Score {
      std::int64_t a, b, c;
    };
    std::vector<Score> s;
    for (Mask m = cand; m; m &= m - 1) {
      const int x = std::countr_zero(m);
      std::int64_t a2 = 0, b = 0, c2 = 0;
      for (Mask u = w; u; u &= u - 1) {
        const Mask pm = pair_[x * n_ + std::countr_zero(u)];
        a2 += std::popcount(pm & w);
        b += std::popcount(pm & cand);
      }
      for (Mask y = cand; y; y &= y - 1) c2 += std::popcount(pair_[x * n_ + std::countr_zero(y)] & cand);
      s.push_back({a2 / 2, b, c2 / 2});
    }
    std::vector<std::int64_t> vals(s.size());
    for (int k = 1; k <= k_max; ++k) {
      const std::int64_t cap_b = static_cast<std::int64_t>(size) * (k - 1);
      const std::int64_t cap_c = choose(k - 1, 2);
      for (std::size_t i = 0; i < s.size(); ++i)
        vals[i] = 6 * s[i].a + 3 * std::min(s[i].b, cap_b) + 2 * std::min(s[i].c, cap_c);
      std::nth_element(vals.begin(), vals.begin() + (k - 1), vals.end(), std::greater<>());
      std::int64_t sum = 0;
      for (int i = 0; i < k; ++i) sum += vals[i];
      const std::int64_t ub6 = std::min<std::int64_t>(6 * choose(size + k, 3), 6 * f2 + sum);
      const std::int64_t lhs = ub6 * target.den;
      const std::int64_t rhs = 6 * target.num * (size + k);
      if (strict ? lhs > rhs : lhs >= rhs) return true;
    }
    return false;
  }

  // Phase 1: the maximum ratio. Roots restricted to positions p with p % stride == offset.
  void maximize(int offset, int stride) { max_dfs(0, 0, 0, 0, offset, stride); }

  // Phase 2: the lexicographically smallest W with ratio == target.
  std::optional<Mask> first_with_ratio(Fraction target) {
    target_ = target;
    found_.reset();
    lex_dfs(0, 0, 0, 0);
    return found_;
  }

  Fraction best() const { return best_; }
  Mask best_mask() const { return best_mask_; }
  bool has_best() const { return best_mask_ != 0; }
  void offer(Fraction ratio, Mask m) {
    if (ratio > best_) {
      best_ = ratio;
      best_mask_ = m;
    }
  }
  std::uint64_t visited() const { return visited_; }
  std::uint64_t pruned() const { return pruned_; }
  bool out_of_budget() const { return out_of_budget_; }
  void reset_budget() { used_ = 0; }

 private:
  bool tick() {
    ++visited_;
    if (++used_ > budget_) out_of_budget_ = true;
    return !out_of_budget_;
  }

  void max_dfs(Mask w, int size, int f2, int next, int offset, int stride) {
    if (!tick()) return;
    if (f2 > 0) offer(Fraction{f2, size}, w);
    if (size == cap_) return;
    Mask cand = 0;
    for (int j = next; j < n_; ++j) cand |= bit(order_[j]);
    if (!promising(w, size, f2, cand, best_, true)) {
      ++pruned_;
      return;
    }
    for (int j = next; j < n_ && !out_of_budget_; ++j) {
      if (size == 0 && j % stride != offset) continue;
      const int x = order_[j];
      max_dfs(w | bit(x), size + 1, f2 + gain(x, w), j + 1, offset, stride);
    }
  }

  void lex_dfs(Mask w, int size, int f2, int next) {
    if (found_ || !tick()) return;
    if (f2 > 0 && Fraction{f2, size} == target_) {
      found_ = w;
      return;
    }
    if (size == cap_) return;
    Mask cand = 0;
    for (int x = next; x < n_; ++x) cand |= bit(x);
    if (!promising(w, size, f2, cand, target_, false)) {
      ++pruned_;
      return;
    }
    for (int x = next; x < n_ && !found_ && !out_of_budget_; ++x) lex_dfs(w | bit(x), size + 1, f2 + gain(x, w), x + 1);
  }

  int n_;
  int cap_;
  std::uint64_t budget_;
  std::vector<Mask> pair_;
  std::vector<int> order_;
  Fraction best_{0, 1};
  Mask best_mask_ = 0;
  Fraction target_;
  std::optional<Mask> found_;
  std::uint64_t visited_ = 0;
  std::uint64_t pruned_ = 0;
  std::uint64_t used_ = 0;
  bool out_of_budget_ = false;
};

std::vector<int> mask_vertices(Mask m) {
  std::vector<int> out;
  for (; m; m &= m - 1) out.push_back(std::countr_zero(m));
  return out;
}

}  // namespace

DensityReport densest_subcomplex(const Complex2& c, int max_vertices, Fraction threshold, const ScanOptions& options) {
  if (max_vertices < 3) throw InputError("max_vertices must be at least 3");
  if (threshold.den <= 0) throw InputError("threshold denominator must be positive");
  DensityReport rep;
  rep.n = c.n();
  rep.max_vertices = max_vertices;
  rep.threshold = threshold;
  const int cap = std::min(max_vertices, c.n());

  const int workers = std::max(1, options.threads);
  std::vector<Scanner> scanners;
  for (int w = 0; w < workers; ++w) scanners.emplace_back(c, cap, options.node_budget / workers + 1);
  if (workers == 1) {
    scanners[0].maximize(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back([&, w] { scanners[w].maximize(w, workers); });
    for (auto& t : pool) t.join();
  }
  Scanner& lead = scanners[0];
  bool out_of_budget = false;
  for (auto& s : scanners) {
    if (s.has_best()) lead.offer(s.best(), s.best_mask());
    out_of_budget = out_of_budget || s.out_of_budget();
  }
  std::uint64_t visited = 0, pruned = 0;
  for (auto& s : scanners) {
    visited += s.visited();
    pruned += s.pruned();
  }

  if (lead.has_best()) {
    // Canonical tie-break among maximizers: smallest sorted vertex list.
    Scanner lex(c, cap, options.node_budget);
    auto m = lex.first_with_ratio(lead.best());
    visited += lex.visited();
    pruned += lex.pruned();
    out_of_budget = out_of_budget || lex.out_of_budget();
    const Mask chosen = m ? *m : lead.best_mask();
    rep.vertices = mask_vertices(chosen);
    rep.f0 = static_cast<int>(rep.vertices.size());
    rep.f2 = induced_face_count(c, rep.vertices);
    rep.ratio = Fraction{rep.f2, rep.f0};
  }
  rep.visited = visited;
  rep.pruned = pruned;
  rep.exhaustive = !out_of_budget;
  rep.pass = rep.ratio < threshold;
  return rep;
}

DensityReport hyperbolicity_certificate(const Complex2& c, int max_vertices, const ScanOptions& options) {
  auto rep = densest_subcomplex(c, max_vertices, kHyperbolicityThreshold, options);
  rep.kind = "hyperbolicity";
  return rep;
}

DensityReport asphericity_certificate(const Complex2& c, int max_vertices, const ScanOptions& options) {
  auto rep = densest_subcomplex(c, max_vertices, kAsphericityThreshold, options);
  rep.kind = "asphericity";
  rep.tetrahedron_free = !has_tetrahedron_boundary(c);
  rep.pass = rep.pass && *rep.tetrahedron_free;
  return rep;
}

int induced_face_count(const Complex2& c, std::span<const int> vertices) {
  std::vector<char> in(c.n(), 0);
  for (int v : vertices) {
    if (v < 0 || v >= c.n()) throw InputError("vertex out of range");
    in[v] = 1;
  }
  int count = 0;
  for (const auto& t : c.triangles()) count += in[t.v[0]] && in[t.v[1]] && in[t.v[2]];
  return count;
}

bool has_tetrahedron_boundary(const Complex2& c) {
  const int n = c.n();
  for (const auto& t : c.triangles()) {
    for (int d = t.v[2] + 1; d < n; ++d) {
      if (c.contains(triangle_index(make_triangle(t.v[0], t.v[1], d), n)) &&
          c.contains(triangle_index(make_triangle(t.v[0], t.v[2], d), n)) &&
          c.contains(triangle_index(make_triangle(t.v[1], t.v[2], d), n)))
        return true;
    }
  }
  return false;
}

std::vector<int> trim_to_threshold(const Complex2& c, std::span<const int> vertices, Fraction threshold) {
  std::vector<char> in(c.n(), 0);
  for (int v : vertices) in.at(v) = 1;
  std::vector<int> faces;
  for (int f : c.faces()) {
    const auto t = index_triangle(f, c.n());
    if (in[t.v[0]] && in[t.v[1]] && in[t.v[2]]) faces.push_back(f);
  }
  const std::int64_t f0 = static_cast<std::int64_t>(vertices.size());
  const std::int64_t target = (threshold.num * f0 + threshold.den - 1) / threshold.den;
  if (static_cast<std::int64_t>(faces.size()) < target)
    throw InputError("vertex set does not reach the threshold");
  while (static_cast<std::int64_t>(faces.size()) > target) faces.pop_back();
  return faces;
}

UnionBound union_bound_value(int n, int max_vertices) {
  if (n < 1 || max_vertices < 1) throw InputError("union bound needs n >= 1 and C' >= 1");
  UnionBound out;
  out.exact = 0;
  BigInt a, b, pow3, pown;
  for (int k = 1; k <= max_vertices; ++k) {
    const unsigned long m = static_cast<unsigned long>((3 * k + 1) / 2);
    mpz_bin_uiui(a.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(choose(k, 3)), m);
    mpz_ui_pow_ui(pow3.get_mpz_t(), 3, m);
    mpz_ui_pow_ui(pown.get_mpz_t(), static_cast<unsigned long>(n), m);
    Rational term(a * b * pow3, pown);
    term.canonicalize();
    out.exact += term;
    out.terms.push_back(term);
  }
  out.value = out.exact.get_d();
  return out;
}

std::string report_json(const DensityReport& r) {
  nlohmann::json j;
  j["kind"] = r.kind;
  j["complex_id"] = r.complex_id;
  j["n"] = r.n;
  j["max_vertices"] = r.max_vertices;
  j["vertices"] = nlohmann::json::array();
  for (int v : r.vertices) j["vertices"].push_back(v + 1);
  j["f0"] = r.f0;
  j["f2"] = r.f2;
  j["ratio"] = r.ratio.to_string();
  j["ratio_value"] = r.ratio.value();
  j["threshold"] = r.threshold.to_string();
  j["pass"] = r.pass;
  j["exhaustive"] = r.exhaustive;
  if (r.tetrahedron_free) j["tetrahedron_free"] = *r.tetrahedron_free;
  j["scan"] = {{"subcomplexes", "induced"},
               {"visited", r.visited},
               {"pruned", r.pruned},
               {"note", "an induced subcomplex has the most faces among subcomplexes on its vertex set"}};
  return j.dump(2);
}

}  // namespace hypertree
