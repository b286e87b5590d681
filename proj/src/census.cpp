#include "hypertree/census.hpp"

#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "hypertree/boundary.hpp"
#include "hypertree/errors.hpp"
#include "json.hpp"

namespace hypertree {

namespace {

constexpr int kHardCap = 7;

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("census elimination overflowed int64");
  return r;
}

std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) throw std::overflow_error("census elimination overflowed int64");
  return r;
}

// Backtracking over triangles in index order. Columns are taken in the
// star-reduced coordinates (rows of edges avoiding vertex 0), where column
// independence is the same as for the full boundary because projecting the
// cycle space onto those coordinates is injective.
class Enumerator {
 public:
  explicit Enumerator(int n) : n_(n), big_n_(triangle_count(n)), r_(tree_size(n)), vecs_(big_n_) {
    for (int f = 0; f < big_n_; ++f) {
      vecs_[f].assign(r_, 0);
      for (const auto& [row, sign] : boundary_column(f, n)) {
        const int rr = reduced_row(row, n);
        if (rr >= 0) vecs_[f][rr] = sign;
      }
    }
  }

  int size() const { return big_n_; }

  /// All 2-trees whose smallest face is `first`.
  template <typename Visit>
  void run_partition(int first, Visit&& visit) {
    basis_.clear();
    pivots_.clear();
    chosen_.clear();
    if (r_ == 0) return;
    if (big_n_ - first < r_) return;
    auto v = vecs_[first];
    if (!reduce(v, basis_.size())) return;
    push(std::move(v), first);
    if (feasible(first + 1)) dfs(first + 1, false, visit);
  }

 private:
  // Reduces v against the first `k` basis vectors. True if v stays nonzero.
  bool reduce(std::vector<std::int64_t>& v, std::size_t k) const {
    for (std::size_t b = 0; b < k; ++b) {
      const int p = pivots_[b];
      if (v[p] == 0) continue;
      const auto& bv = basis_[b];
      const std::int64_t g = std::gcd(bv[p], v[p]);
      const std::int64_t alpha = bv[p] / g;
      const std::int64_t beta = v[p] / g;
      std::int64_t content = 0;
      for (int i = 0; i < r_; ++i) {
        v[i] = checked_sub(checked_mul(alpha, v[i]), checked_mul(beta, bv[i]));
        content = std::gcd(content, v[i]);
      }
      if (content > 1)
        for (auto& x : v) x /= content;
    }
    for (auto x : v)
      if (x != 0) return true;
    return false;
  }

  void push(std::vector<std::int64_t> v, int face) {
    int p = 0;
    while (v[p] == 0) ++p;
    basis_.push_back(std::move(v));
    pivots_.push_back(p);
    chosen_.push_back(face);
  }

  void pop() {
    basis_.pop_back();
    pivots_.pop_back();
    chosen_.pop_back();
  }

  // Can the current basis be completed from triangles t..N-1?
  bool feasible(int t) {
    const int need = r_ - static_cast<int>(basis_.size());
    if (big_n_ - t < need) return false;
    const std::size_t base = basis_.size();
    int found = 0;
    for (int f = t; f < big_n_ && found < need; ++f) {
      if (big_n_ - f < need - found) break;
      auto v = vecs_[f];
      if (reduce(v, basis_.size())) {
        int p = 0;
        while (v[p] == 0) ++p;
        basis_.push_back(std::move(v));
        pivots_.push_back(p);
        ++found;
      }
    }
    basis_.resize(base);
    pivots_.resize(base);
    return found == need;
  }

  template <typename Visit>
  void dfs(int t, bool check, Visit& visit) {
    if (static_cast<int>(chosen_.size()) == r_) {
      visit(chosen_);
      return;
    }
    if (check && !feasible(t)) return;
    auto v = vecs_[t];
    if (reduce(v, basis_.size())) {
      push(std::move(v), t);
      dfs(t + 1, false, visit);
      pop();
    }
    dfs(t + 1, true, visit);
  }

  int n_;
  int big_n_;
  int r_;
  std::vector<std::vector<std::int64_t>> vecs_;
  std::vector<std::vector<std::int64_t>> basis_;
  std::vector<int> pivots_;
  std::vector<int> chosen_;
};

std::string estimated_cost(int n) {
  const double raw = std::lgamma(triangle_count(n) + 1.0) - std::lgamma(tree_size(n) + 1.0) -
                     std::lgamma(triangle_count(n) - tree_size(n) + 1.0);
  std::ostringstream s;
  s << "about 10^" << static_cast<int>(raw / std::log(10.0)) << " raw face subsets (C(" << triangle_count(n)
    << "," << tree_size(n) << "))";
  return s.str();
}

struct Partial {
  std::uint64_t total = 0;
  BigInt kalai_sum = 0;
  std::map<std::vector<BigInt>, HistogramEntry> histogram;
  std::vector<CensusRecord> records;
};

void tally(Partial& acc, const Complex2& c, bool keep) {
  const H1 h = h1(c);
  if (h.betti1 != 0) throw ContractViolation("enumerated complex has betti1 != 0");
  const BigInt order = h.torsion.order();
  const BigInt sq = order * order;
  ++acc.total;
  acc.kalai_sum += sq;
  auto& entry = acc.histogram[h.torsion.factors()];
  if (entry.count == 0) entry.group = h.torsion;
  ++entry.count;
  entry.weighted += sq;
  if (keep) acc.records.push_back({c.face_set(), order});
}

void merge(Partial& into, Partial&& from) {
  into.total += from.total;
  into.kalai_sum += from.kalai_sum;
  for (auto& [k, e] : from.histogram) {
    auto& dst = into.histogram[k];
    if (dst.count == 0) dst.group = e.group;
    dst.count += e.count;
    dst.weighted += e.weighted;
  }
  for (auto& r : from.records) into.records.push_back(std::move(r));
}

std::filesystem::path cache_file(const std::filesystem::path& dir, int n) {
  return dir / ("census-n" + std::to_string(n) + "-v" + std::to_string(kCensusFormatVersion) + ".json");
}

}  // namespace

void check_census_feasible(int n, const CensusOptions& options) {
  if (n < 1) throw InputError("census needs n >= 1");
  if (n <= options.cap) return;
  if (n == options.cap + 1 && n <= kHardCap && options.allow_larger) {
    if (options.warn)
      options.warn("census at n=" + std::to_string(n) + " is expensive: " + estimated_cost(n) +
                   " before pruning; streaming without per-complex storage is advised");
    return;
  }
  throw ResourceError("census refused for n=" + std::to_string(n) + " (cap " + std::to_string(options.cap) +
                      "): " + estimated_cost(n));
}

void enumerate_2trees(int n, const std::function<void(const Complex2&)>& visit, const CensusOptions& options) {
  check_census_feasible(n, options);
  if (n < 3) return;
  Enumerator e(n);
  for (int first = 0; first < e.size(); ++first)
    e.run_partition(first, [&](const std::vector<int>& faces) { visit(Complex2(n, std::span<const int>(faces))); });
}

BigInt kalai_target(int n) {
  BigInt out;
  mpz_ui_pow_ui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(choose(n - 2, 2)));
  return out;
}

CensusResult verify_kalai(int n, const CensusOptions& options) {
  check_census_feasible(n, options);
  if (options.cache_dir && !options.keep_records) {
    std::ifstream in(cache_file(*options.cache_dir, n));
    if (in) {
      std::stringstream ss;
      ss << in.rdbuf();
      try {
        auto cached = census_from_summary_json(ss.str());
        if (cached.n == n) return cached;
      } catch (const std::exception&) {
        // stale or corrupt cache: recompute
      }
    }
  }

  CensusResult out;
  out.n = n;
  out.kalai_target = kalai_target(n);
  if (n < 3) {
    // C(n-1,2) = 0 faces: the empty complex is the unique 2-tree.
    out.total = 1;
    out.kalai_sum = 1;
    auto& e = out.histogram[{}];
    e.count = 1;
    e.weighted = 1;
    if (options.keep_records) out.records.push_back({FaceSet(triangle_count(n)), BigInt(1)});
    return out;
  }

  const int big_n = triangle_count(n);
  const int workers = std::max(1, std::min(options.threads, big_n));
  std::vector<Partial> parts(big_n);
  auto work = [&](int w) {
    Enumerator e(n);
    for (int first = w; first < big_n; first += workers)
      e.run_partition(first, [&](const std::vector<int>& faces) {
        tally(parts[first], Complex2(n, std::span<const int>(faces)), options.keep_records);
      });
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        try {
          work(w);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    for (auto& t : pool) t.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }
  Partial all;
  for (auto& p : parts) merge(all, std::move(p));
  out.total = all.total;
  out.kalai_sum = std::move(all.kalai_sum);
  out.histogram = std::move(all.histogram);
  out.records = std::move(all.records);

  if (options.cache_dir) {
    std::error_code ec;
    std::filesystem::create_directories(*options.cache_dir, ec);
    std::ofstream f(cache_file(*options.cache_dir, n));
    if (f) f << census_summary_json(out);
  }
  return out;
}

ContainmentCount containment_counts(const CensusResult& census, std::span<const int> faces, bool weighted) {
  if (census.records.empty() && census.total > 0)
    throw InputError("containment query needs a census with per-complex records");
  FaceSet want(triangle_count(census.n));
  for (int f : faces) {
    if (f < 0 || f >= want.capacity()) throw InputError("invalid face index " + std::to_string(f));
    want.set(f);
  }
  ContainmentCount out;
  out.weighted_count = 0;
  for (const auto& rec : census.records) {
    if (!rec.faces.contains_all(want)) continue;
    ++out.count;
    out.weighted_count += rec.h1_order * rec.h1_order;
  }
  if (weighted) {
    out.probability = Rational(out.weighted_count, census.kalai_target);
  } else {
    out.probability = Rational(BigInt(static_cast<unsigned long>(out.count)),
                               BigInt(static_cast<unsigned long>(census.total)));
  }
  out.probability.canonicalize();
  return out;
}

ContainmentCount containment_counts(int n, std::span<const int> faces, bool weighted, const CensusOptions& options) {
  CensusOptions o = options;
  o.keep_records = true;
  return containment_counts(verify_kalai(n, o), faces, weighted);
}

CountBound count_bound_check(const CensusResult& census) {
  CountBound out;
  out.exact = census.total;
  out.bound = std::pow(std::exp(1.0) * census.n / 3.0, static_cast<double>(tree_size(census.n)));
  out.ratio = static_cast<double>(out.exact) / out.bound;
  out.holds = static_cast<double>(out.exact) <= out.bound;
  return out;
}

CountBound count_bound_check(int n, const CensusOptions& options) {
  CensusOptions o = options;
  o.keep_records = false;
  return count_bound_check(verify_kalai(n, o));
}

TrivialH1Probability trivial_h1_probability(const CensusResult& census) {
  TrivialH1Probability out;
  std::uint64_t trivial = 0;
  if (auto it = census.histogram.find({}); it != census.histogram.end()) trivial = it->second.count;
  out.exact = Rational(BigInt(static_cast<unsigned long>(trivial)), census.kalai_target);
  out.exact.canonicalize();
  const int n = census.n;
  out.bound = std::pow(std::exp(1.0) / 3.0, static_cast<double>(tree_size(n))) * std::pow(n, n - 2.0);
  return out;
}

TrivialH1Probability trivial_h1_probability(int n, const CensusOptions& options) {
  CensusOptions o = options;
  o.keep_records = false;
  return trivial_h1_probability(verify_kalai(n, o));
}

namespace {

std::string factors_label(const std::vector<BigInt>& factors) {
  std::string s = "[";
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (i) s += ",";
    s += factors[i].get_str();
  }
  return s + "]";
}

}  // namespace

void write_histogram_csv(const CensusResult& census, std::ostream& out) {
  out << "torsion_factors,count,weighted_count\n";
  for (const auto& [key, e] : census.histogram)
    out << '"' << factors_label(key) << "\"," << e.count << ',' << e.weighted.get_str() << '\n';
}

std::string census_summary_json(const CensusResult& census) {
  nlohmann::json j;
  j["format"] = "hypertree-census";
  j["version"] = kCensusFormatVersion;
  j["n"] = census.n;
  j["total"] = census.total;
  j["kalai_sum"] = census.kalai_sum.get_str();
  j["kalai_target"] = census.kalai_target.get_str();
  j["kalai_pass"] = census.kalai_pass();
  j["histogram"] = nlohmann::json::array();
  for (const auto& [key, e] : census.histogram) {
    nlohmann::json row;
    row["factors"] = nlohmann::json::array();
    for (const auto& f : key) row["factors"].push_back(f.get_str());
    row["count"] = e.count;
    row["weighted_count"] = e.weighted.get_str();
    j["histogram"].push_back(row);
  }
  return j.dump(2) + "\n";
}

CensusResult census_from_summary_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  if (j.at("format") != "hypertree-census" || j.at("version") != kCensusFormatVersion)
    throw InputError("unsupported census summary format");
  CensusResult out;
  out.n = j.at("n").get<int>();
  out.total = j.at("total").get<std::uint64_t>();
  out.kalai_sum = BigInt(j.at("kalai_sum").get<std::string>());
  out.kalai_target = kalai_target(out.n);
  for (const auto& row : j.at("histogram")) {
    std::vector<BigInt> key;
    for (const auto& f : row.at("factors")) key.emplace_back(f.get<std::string>());
    auto& e = out.histogram[key];
    e.group = TorsionGroup(key);
    e.count = row.at("count").get<std::uint64_t>();
    e.weighted = BigInt(row.at("weighted_count").get<std::string>());
  }
  return out;
}

}  // namespace hypertree
