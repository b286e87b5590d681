#include "hypertree/sampler.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <thread>

#include "hypertree/boundary.hpp"
#include "hypertree/errors.hpp"

namespace hypertree {

const char* to_string(Method m) { return m == Method::Dpp ? "dpp" : "mh"; }

Method parse_method(const std::string& s) {
  if (s == "dpp") return Method::Dpp;
  if (s == "mh") return Method::Mh;
  throw InputError("unknown sampling method '" + s + "' (expected dpp or mh)");
}

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

// Sequential conditioning in LDL^T form: after choosing item i with
// probability d_i / (remaining rank), row e = K[i,:] minus the projections on
// earlier rows, and d_l -= e_l^2 / d_i. No square roots, so it stays rational.
std::vector<int> chain_rule_exact(const DppKernel& k, Rng& rng) {
  const int big_n = k.size();
  const int r = k.rank();
  std::vector<Rational> d(big_n);
  for (int l = 0; l < big_n; ++l) d[l] = k.entry_exact(l, l);
  std::vector<std::vector<Rational>> rows;
  std::vector<Rational> pivots;
  std::vector<int> chosen;
  std::vector<Rational> coef;
  Rational total;
  for (int t = 0; t < r; ++t) {
    total = 0;
    for (const auto& x : d) total += x;
    const int i = static_cast<int>(choose_exact(d, total, rng));
    coef.resize(t);
    for (int s = 0; s < t; ++s) coef[s] = rows[s][i] / pivots[s];
    std::vector<Rational> e(big_n);
    for (int l = 0; l < big_n; ++l) {
      if (d[l] == 0) continue;
      e[l] = k.entry_exact(i, l);
      for (int s = 0; s < t; ++s)
        if (coef[s] != 0 && rows[s][l] != 0) e[l] -= coef[s] * rows[s][l];
    }
    const Rational piv = d[i];
    for (int l = 0; l < big_n; ++l)
      if (e[l] != 0) d[l] -= e[l] * e[l] / piv;
    d[i] = 0;
    rows.push_back(std::move(e));
    pivots.push_back(piv);
    chosen.push_back(i);
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

std::vector<int> chain_rule_float(const DppKernel& k, Rng& rng) {
  const int big_n = k.size();
  const int r = k.rank();
  std::vector<double> d(big_n);
  for (int l = 0; l < big_n; ++l) d[l] = k.entry(l, l);
  std::vector<std::vector<double>> rows;
  rows.reserve(r);
  std::vector<double> pivots;
  std::vector<int> chosen;
  std::vector<char> taken(big_n, 0);
  std::vector<double> coef;
  for (int t = 0; t < r; ++t) {
    double total = 0.0;
    for (int l = 0; l < big_n; ++l)
      if (!taken[l] && d[l] > 0) total += d[l];
    const double u = rng.uniform01() * total;
    int i = -1;
    double acc = 0.0;
    for (int l = 0; l < big_n; ++l) {
      if (taken[l] || d[l] <= 0) continue;
      i = l;
      acc += d[l];
      if (u < acc) break;
    }
    if (i < 0) break;
    coef.resize(t);
    for (int s = 0; s < t; ++s) coef[s] = rows[s][i] / pivots[s];
    std::vector<double> e(big_n, 0.0);
    for (int l = 0; l < big_n; ++l) {
      if (taken[l]) continue;
      double v = k.entry(i, l);
      for (int s = 0; s < t; ++s) v -= coef[s] * rows[s][l];
      e[l] = v;
    }
    const double piv = d[i];
    for (int l = 0; l < big_n; ++l)
      if (!taken[l]) d[l] -= e[l] * e[l] / piv;
    taken[i] = 1;
    d[i] = 0.0;
    rows.push_back(std::move(e));
    pivots.push_back(piv);
    chosen.push_back(i);
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

// Fills homology fields; returns false if the faces are not a 2-tree.
bool finish_record(SampleRecord& rec, const Complex2& c) {
  const int r = tree_size(c.n());
  if (c.size() != r) return false;
  if (c.n() < 3) return false;
  const auto snf = smith_normal_form(BoundaryMatrix(c.n(), c.faces()).to_int_matrix());
  if (snf.rank != r) return false;
  rec.complex = c;
  rec.h1_factors.clear();
  rec.h1_order = 1;
  for (const auto& f : snf.invariant_factors) {
    rec.h1_order *= f;
    if (f != 1) rec.h1_factors.push_back(f);
  }
  return true;
}

}  // namespace

SampleRecord sample_dpp(const DppKernel& kernel, Rng& rng, const DppOptions& options) {
  const auto start = Clock::now();
  SampleRecord rec;
  rec.n = kernel.n();
  rec.seed = rng.seed();
  rec.method = Method::Dpp;
  if (kernel.backend() == KernelBackend::Rational) {
    const auto faces = chain_rule_exact(kernel, rng);
    if (!finish_record(rec, Complex2(kernel.n(), std::span<const int>(faces))))
      throw ContractViolation("exact DPP sampler produced a non-basis; kernel is not the 2-tree projection");
  } else {
    for (int attempt = 0;; ++attempt) {
      if (attempt > options.retry_budget)
        throw NumericalFailure("float DPP sampler failed the exact 2-tree check " +
                               std::to_string(attempt) + " times");
      const auto faces = chain_rule_float(kernel, rng);
      if (static_cast<int>(faces.size()) != kernel.rank()) continue;
      if (finish_record(rec, Complex2(kernel.n(), std::span<const int>(faces)))) break;
    }
  }
  rec.ms = elapsed_ms(start);
  return rec;
}

MhChain::MhChain(int n, std::optional<Complex2> initial) {
  if (n < 3) throw InputError("MH chain needs n >= 3");
  Complex2 start = initial ? std::move(*initial) : cone_tree(n);
  if (start.n() != n) throw InputError("initial complex has the wrong vertex count");
  if (!is_2tree(start)) throw InputError("initial complex is not a 2-tree");
  state_.h1_order = h1_order(start);
  state_.current = std::move(start);
}

void MhChain::step(Rng& rng) {
  ++state_.steps;
  const Complex2& cur = state_.current;
  const int n = cur.n();
  const int r = cur.size();
  const int big_n = triangle_count(n);
  if (big_n == r) return;  // n = 3: the single 2-tree, nothing to exchange

  const int removed = cur.faces()[rng.below(static_cast<std::uint64_t>(r))];
  auto j = static_cast<int>(rng.below(static_cast<std::uint64_t>(big_n - r)));
  int added = -1;
  for (int f = 0; f < big_n; ++f) {
    if (cur.contains(f)) continue;
    if (j-- == 0) {
      added = f;
      break;
    }
  }

  Complex2 next = cur.exchanged(removed, added);
  const auto snf = smith_normal_form(BoundaryMatrix(n, next.faces()).to_int_matrix());
  if (snf.rank != r) return;
  ++state_.valid;
  BigInt order = 1;
  for (const auto& f : snf.invariant_factors) order *= f;
  if (order < state_.h1_order) {
    const Rational ratio(order * order, state_.h1_order * state_.h1_order);
    if (!bernoulli_exact(ratio, rng)) return;
  }
  state_.current = std::move(next);
  state_.h1_order = std::move(order);
  ++state_.accepted;
}

MhState mh_chain(int n, std::uint64_t steps, Rng& rng, std::optional<Complex2> initial,
                 const std::function<void(const MhState&)>& observe) {
  MhChain chain(n, std::move(initial));
  for (std::uint64_t s = 0; s < steps; ++s) {
    chain.step(rng);
    if (observe) observe(chain.state());
  }
  return chain.state();
}

namespace {

std::vector<std::size_t> shares(std::size_t count, int workers) {
  std::vector<std::size_t> out(workers, count / workers);
  for (std::size_t w = 0; w < count % workers; ++w) ++out[w];
  return out;
}

template <typename Work>
std::vector<SampleRecord> run_workers(std::size_t count, int workers, Work work) {
  if (workers < 1) throw InputError("worker count must be positive");
  const auto share = shares(count, workers);
  std::vector<std::vector<SampleRecord>> parts(workers);
  std::vector<std::exception_ptr> errors(workers);
  auto body = [&](int w) {
    try {
      parts[w] = work(w, share[w]);
    } catch (...) {
      errors[w] = std::current_exception();
    }
  };
  if (workers == 1) {
    body(0);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(body, w);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  std::vector<SampleRecord> out;
  out.reserve(count);
  for (auto& p : parts)
    for (auto& rec : p) out.push_back(std::move(rec));
  return out;
}

}  // namespace

std::vector<SampleRecord> sample_batch(const DppKernel& kernel, std::size_t count, std::uint64_t seed,
                                       const BatchOptions& options) {
  return run_workers(count, options.workers, [&](int w, std::size_t m) {
    Rng rng(seed + static_cast<std::uint64_t>(w));
    std::vector<SampleRecord> out;
    for (std::size_t i = 0; i < m; ++i) {
      out.push_back(sample_dpp(kernel, rng, options.dpp));
      if (!options.timing) out.back().ms = 0.0;
    }
    return out;
  });
}

std::vector<SampleRecord> sample_batch(int n, std::size_t count, Method method, std::uint64_t seed,
                                       const BatchOptions& options) {
  if (method == Method::Dpp) return sample_batch(build_kernel(n, options.backend, options.kernel), count, seed, options);
  if (options.mh_steps == 0) throw InputError("mh_steps must be positive");
  return run_workers(count, options.workers, [&](int w, std::size_t m) {
    Rng rng(seed + static_cast<std::uint64_t>(w));
    MhChain chain(n);
    std::vector<SampleRecord> out;
    for (std::size_t i = 0; i < m; ++i) {
      const auto start = Clock::now();
      for (std::uint64_t s = 0; s < options.mh_steps; ++s) chain.step(rng);
      SampleRecord rec;
      rec.n = n;
      rec.seed = rng.seed();
      rec.method = Method::Mh;
      rec.complex = chain.state().current;
      rec.h1_order = chain.state().h1_order;
      rec.h1_factors = h1(rec.complex).torsion.factors();
      rec.ms = options.timing ? elapsed_ms(start) : 0.0;
      out.push_back(std::move(rec));
    }
    return out;
  });
}

BatchMeans batch_means(const std::vector<double>& series, int batches) {
  BatchMeans out;
  if (series.empty() || batches < 2) return out;
  const std::size_t len = series.size() / static_cast<std::size_t>(batches);
  if (len == 0) return out;
  std::vector<double> means(batches, 0.0);
  for (int b = 0; b < batches; ++b) {
    double s = 0.0;
    for (std::size_t i = 0; i < len; ++i) s += series[b * len + i];
    means[b] = s / static_cast<double>(len);
  }
  double mean = 0.0;
  for (double m : means) mean += m;
  mean /= batches;
  double var = 0.0;
  for (double m : means) var += (m - mean) * (m - mean);
  var /= (batches - 1);
  out.mean = mean;
  out.std_error = std::sqrt(var / batches);
  out.batches = batches;
  return out;
}

}  // namespace hypertree
