#include "hypertree/kernel.hpp"

#include <cmath>
#include <string>

#include "hypertree/errors.hpp"

namespace hypertree {

const char* to_string(KernelBackend b) { return b == KernelBackend::Rational ? "rational" : "float"; }

KernelBackend default_backend(int n) { return n <= 10 ? KernelBackend::Rational : KernelBackend::Float; }

std::size_t kernel_memory_estimate(int n, KernelBackend backend) {
  const std::size_t big_n = static_cast<std::size_t>(triangle_count(n));
  const std::size_t r = static_cast<std::size_t>(tree_size(n));
  const std::size_t per_entry = backend == KernelBackend::Rational ? 96 : 8;
  // Gram inverse, plus the N x r elimination rows kept by the sequential sampler.
  return (r * r + big_n * r + big_n) * per_entry;
}

FacePairInfo face_pair_info(int s, int t, int n) {
  const auto a = index_triangle(s, n);
  const auto b = index_triangle(t, n);
  int shared = 0;
  for (int x : a.v) shared += b.contains(x);
  if (shared != 2) return {shared, 1};
  int sign = 1;
  const auto ca = boundary_column(s, n);
  const auto cb = boundary_column(t, n);
  for (const auto& [ra, sa] : ca)
    for (const auto& [rb, sb] : cb)
      if (ra == rb) sign = sa * sb;
  return {2, sign};
}

const std::array<Rational, 4>& DppKernel::orbit_values_exact() const {
  if (backend_ != KernelBackend::Rational) throw ContractViolation("exact orbit values need the rational backend");
  return orbit_exact_;
}

Rational DppKernel::factored_entry_exact(int s, int t) const {
  if (backend_ != KernelBackend::Rational) throw ContractViolation("exact entries need the rational backend");
  Rational acc = 0;
  for (const auto& [a, sa] : columns_[s])
    for (const auto& [b, sb] : columns_[t]) {
      if (sa * sb > 0)
        acc += gram_inverse_exact_[a][b];
      else
        acc -= gram_inverse_exact_[a][b];
    }
  return acc;
}

double DppKernel::factored_entry(int s, int t) const {
  if (backend_ == KernelBackend::Rational) return factored_entry_exact(s, t).get_d();
  double acc = 0.0;
  for (const auto& [a, sa] : columns_[s])
    for (const auto& [b, sb] : columns_[t]) acc += sa * sb * gram_inverse_(a, b);
  return acc;
}

Rational DppKernel::entry_exact(int s, int t) const {
  if (backend_ != KernelBackend::Rational) throw ContractViolation("exact entries need the rational backend");
  if (!compressed_) return factored_entry_exact(s, t);
  if (s == t) return orbit_exact_[3];
  const auto info = face_pair_info(s, t, n_);
  return info.sign > 0 ? orbit_exact_[info.shared] : Rational(-orbit_exact_[info.shared]);
}

double DppKernel::entry(int s, int t) const {
  if (!compressed_) return factored_entry(s, t);
  if (s == t) return orbit_float_[3];
  const auto info = face_pair_info(s, t, n_);
  return info.sign * orbit_float_[info.shared];
}

std::vector<std::vector<Rational>> DppKernel::dense_exact() const {
  const int big_n = size();
  std::vector<std::vector<Rational>> k(big_n, std::vector<Rational>(big_n));
  for (int s = 0; s < big_n; ++s)
    for (int t = s; t < big_n; ++t) k[s][t] = k[t][s] = entry_exact(s, t);
  return k;
}

Eigen::MatrixXd DppKernel::dense() const {
  const int big_n = size();
  Eigen::MatrixXd k(big_n, big_n);
  for (int s = 0; s < big_n; ++s)
    for (int t = s; t < big_n; ++t) k(s, t) = k(t, s) = entry(s, t);
  return k;
}

DppKernel build_kernel(int n, KernelBackend backend, const KernelOptions& options) {
  if (n < 3) throw InputError("kernel needs n >= 3");
  if (n > kMaxVertices) throw InputError("kernel: n too large");
  const std::size_t need = kernel_memory_estimate(n, backend);
  if (need > options.memory_budget_bytes)
    throw ResourceError("kernel for n=" + std::to_string(n) + " (" + to_string(backend) + ") needs about " +
                        std::to_string(need >> 20) + " MiB, budget is " +
                        std::to_string(options.memory_budget_bytes >> 20) + " MiB");

  DppKernel k;
  k.n_ = n;
  k.backend_ = backend;
  const int big_n = triangle_count(n);
  const int r = tree_size(n);

  k.columns_.resize(big_n);
  for (int f = 0; f < big_n; ++f)
    for (const auto& [row, sign] : boundary_column(f, n)) {
      const int rr = reduced_row(row, n);
      if (rr >= 0) k.columns_[f].emplace_back(rr, sign);
    }

  std::vector<std::vector<BigInt>> gram(r, std::vector<BigInt>(r, BigInt(0)));
  for (const auto& col : k.columns_)
    for (const auto& [a, sa] : col)
      for (const auto& [b, sb] : col) gram[a][b] += sa * sb;

  if (backend == KernelBackend::Rational) {
    k.gram_inverse_exact_ = inverse_over_q(gram);
  } else {
    Eigen::MatrixXd g(r, r);
    for (int a = 0; a < r; ++a)
      for (int b = 0; b < r; ++b) g(a, b) = gram[a][b].get_d();
    k.gram_inverse_ = g.ldlt().solve(Eigen::MatrixXd::Identity(r, r));
  }

  // Orbit representatives relative to triangle {0,1,2}.
  std::array<int, 4> rep{-1, -1, -1, 0};
  if (n >= 6) rep[0] = triangle_index(3, 4, 5, n);
  if (n >= 5) rep[1] = triangle_index(0, 3, 4, n);
  if (n >= 4) rep[2] = triangle_index(0, 1, 3, n);
  for (int o = 0; o < 4; ++o) {
    if (backend == KernelBackend::Rational) {
      k.orbit_exact_[o] = rep[o] < 0 ? Rational(0) : k.factored_entry_exact(0, rep[o]);
      if (rep[o] >= 0 && o == 2) k.orbit_exact_[o] *= face_pair_info(0, rep[o], n).sign;
      k.orbit_float_[o] = k.orbit_exact_[o].get_d();
    } else {
      k.orbit_float_[o] = rep[o] < 0 ? 0.0 : k.factored_entry(0, rep[o]);
      if (rep[o] >= 0 && o == 2) k.orbit_float_[o] *= face_pair_info(0, rep[o], n).sign;
    }
  }

  // Confirm the orbit rule. Exhaustive on the rational backend; on the float
  // backend exhaustive up to 5000 triangles, otherwise diagonal plus sampled rows.
  bool ok = true;
  auto rows_to_check = [&]() {
    std::vector<int> rows;
    if (backend == KernelBackend::Rational || big_n <= 5000) {
      for (int s = 0; s < big_n; ++s) rows.push_back(s);
    } else {
      for (int s = 0; s < big_n; s += big_n / 16) rows.push_back(s);
    }
    return rows;
  }();
  for (int s : rows_to_check) {
    for (int t = 0; t < big_n && ok; ++t) {
      if (backend == KernelBackend::Rational && t < s) continue;
      const auto info = s == t ? FacePairInfo{3, 1} : face_pair_info(s, t, n);
      if (backend == KernelBackend::Rational) {
        Rational expect = info.sign > 0 ? k.orbit_exact_[info.shared] : Rational(-k.orbit_exact_[info.shared]);
        ok = k.factored_entry_exact(s, t) == expect;
      } else {
        ok = std::abs(k.factored_entry(s, t) - info.sign * k.orbit_float_[info.shared]) <= 1e-9;
      }
    }
    if (!ok) break;
  }
  if (ok && backend == KernelBackend::Float)
    for (int s = 0; s < big_n && ok; ++s) ok = std::abs(k.factored_entry(s, s) - k.orbit_float_[3]) <= 1e-9;
  k.compressed_ = ok;
  return k;
}

ContainmentProbability containment_probability(const DppKernel& k, std::span<const int> faces) {
  const int m = static_cast<int>(faces.size());
  for (int i = 0; i < m; ++i) {
    if (faces[i] < 0 || faces[i] >= k.size()) throw InputError("invalid face index");
    for (int j = 0; j < i; ++j)
      if (faces[i] == faces[j]) throw InputError("repeated face in containment query");
  }
  ContainmentProbability out;
  out.bound = std::pow(3.0 / k.n(), m);
  if (k.backend() == KernelBackend::Rational) {
    std::vector<std::vector<Rational>> sub(m, std::vector<Rational>(m));
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) sub[i][j] = k.entry_exact(faces[i], faces[j]);
    out.exact = determinant(std::move(sub));
    out.has_exact = true;
    out.value = out.exact.get_d();
  } else {
    Eigen::MatrixXd sub(m, m);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) sub(i, j) = k.entry(faces[i], faces[j]);
    out.value = m == 0 ? 1.0 : sub.determinant();
  }
  return out;
}

}  // namespace hypertree
