#include "hypertree/int_matrix.hpp"

#include <algorithm>
#include <limits>
#include <map>

#include "hypertree/errors.hpp"

namespace hypertree {

IntMatrix::IntMatrix(int rows, int cols)
    : IntMatrix(rows, cols,
                rows < kDenseLimit && cols < kDenseLimit ? Layout::Dense : Layout::Sparse) {}

IntMatrix::IntMatrix(int rows, int cols, Layout layout) : rows_(rows), cols_(cols), layout_(layout) {
  if (rows < 0 || cols < 0) throw InputError("negative matrix dimension");
  if (layout_ == Layout::Dense)
    dense_.assign(static_cast<std::size_t>(rows) * cols, BigInt(0));
  else
    sparse_.resize(rows);
}

IntMatrix IntMatrix::identity(int k) {
  IntMatrix m(k, k);
  for (int i = 0; i < k; ++i) m.set(i, i, 1);
  return m;
}

IntMatrix IntMatrix::diagonal(const std::vector<BigInt>& d) {
  const int k = static_cast<int>(d.size());
  IntMatrix m(k, k);
  for (int i = 0; i < k; ++i) m.set(i, i, d[i]);
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<long>>& rows) {
  const int r = static_cast<int>(rows.size());
  const int c = r == 0 ? 0 : static_cast<int>(rows[0].size());
  IntMatrix m(r, c);
  for (int i = 0; i < r; ++i) {
    if (static_cast<int>(rows[i].size()) != c) throw InputError("ragged matrix literal");
    for (int j = 0; j < c; ++j)
      if (rows[i][j] != 0) m.set(i, j, BigInt(rows[i][j]));
  }
  return m;
}

BigInt IntMatrix::get(int r, int c) const {
  if (layout_ == Layout::Dense) return dense_[static_cast<std::size_t>(r) * cols_ + c];
  const auto& row = sparse_[r];
  auto it = std::lower_bound(row.begin(), row.end(), c,
                             [](const auto& e, int col) { return e.first < col; });
  if (it != row.end() && it->first == c) return it->second;
  return 0;
}

void IntMatrix::set(int r, int c, const BigInt& v) {
  if (r < 0 || r >= rows_ || c < 0 || c >= cols_) throw InputError("matrix index out of range");
  if (layout_ == Layout::Dense) {
    dense_[static_cast<std::size_t>(r) * cols_ + c] = v;
    return;
  }
  auto& row = sparse_[r];
  auto it = std::lower_bound(row.begin(), row.end(), c,
                             [](const auto& e, int col) { return e.first < col; });
  if (it != row.end() && it->first == c) {
    if (v == 0)
      row.erase(it);
    else
      it->second = v;
  } else if (v != 0) {
    row.insert(it, {c, v});
  }
}

std::vector<SparseRow> IntMatrix::sparse_rows() const {
  if (layout_ == Layout::Sparse) return sparse_;
  std::vector<SparseRow> out(rows_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) {
      const auto& v = dense_[static_cast<std::size_t>(r) * cols_ + c];
      if (v != 0) out[r].emplace_back(c, v);
    }
  return out;
}

std::vector<std::vector<BigInt>> IntMatrix::dense_rows() const {
  std::vector<std::vector<BigInt>> out(rows_, std::vector<BigInt>(cols_, BigInt(0)));
  for (int r = 0; r < rows_; ++r) {
    if (layout_ == Layout::Dense) {
      for (int c = 0; c < cols_; ++c) out[r][c] = dense_[static_cast<std::size_t>(r) * cols_ + c];
    } else {
      for (const auto& [c, v] : sparse_[r]) out[r][c] = v;
    }
  }
  return out;
}

std::int64_t IntMatrix::nonzeros() const {
  std::int64_t nnz = 0;
  if (layout_ == Layout::Dense) {
    for (const auto& v : dense_) nnz += (v != 0);
  } else {
    for (const auto& row : sparse_) nnz += static_cast<std::int64_t>(row.size());
  }
  return nnz;
}

IntMatrix IntMatrix::transposed() const {
  IntMatrix t(cols_, rows_);
  const auto rows = sparse_rows();
  for (int r = 0; r < rows_; ++r)
    for (const auto& [c, v] : rows[r]) t.set(c, r, v);
  return t;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols_ != b.rows_) throw InputError("matrix product dimension mismatch");
  IntMatrix out(a.rows_, b.cols_);
  const auto ar = a.sparse_rows();
  const auto br = b.sparse_rows();
  for (int i = 0; i < a.rows_; ++i) {
    std::map<int, BigInt> acc;
    for (const auto& [k, v] : ar[i])
      for (const auto& [j, w] : br[k]) acc[j] += v * w;
    for (const auto& [j, v] : acc)
      if (v != 0) out.set(i, j, v);
  }
  return out;
}

bool operator==(const IntMatrix& a, const IntMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.sparse_rows() == b.sparse_rows();
}

namespace {

int cmpabs(const BigInt& a, const BigInt& b) { return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t()); }

// Row-wise elimination workspace shared by the rank and SNF routines.
class Workspace {
 public:
  explicit Workspace(const IntMatrix& m)
      : rows_(m.sparse_rows()), col_rows_(m.cols()), col_nnz_(m.cols(), 0), row_alive_(m.rows(), true) {
    for (int r = 0; r < m.rows(); ++r)
      for (const auto& [c, v] : rows_[r]) {
        col_rows_[c].push_back(r);
        ++col_nnz_[c];
      }
  }

  int row_count() const { return static_cast<int>(rows_.size()); }
  bool alive(int r) const { return row_alive_[r] && !rows_[r].empty(); }
  const SparseRow& row(int r) const { return rows_[r]; }
  int col_nnz(int c) const { return col_nnz_[c]; }

  /// Entry value of row r at column c, or nullptr.
  const BigInt* find(int r, int c) const {
    const auto& row = rows_[r];
    auto it = std::lower_bound(row.begin(), row.end(), c,
                               [](const auto& e, int col) { return e.first < col; });
    return (it != row.end() && it->first == c) ? &it->second : nullptr;
  }

  /// Rows other than `pivot` with a nonzero in column c.
  std::vector<int> rows_in_column(int c, int pivot) {
    auto& list = col_rows_[c];
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
    std::vector<int> out;
    std::vector<int> keep;
    for (int r : list) {
      if (!row_alive_[r] || find(r, c) == nullptr) continue;
      keep.push_back(r);
      if (r != pivot) out.push_back(r);
    }
    list = std::move(keep);
    return out;
  }

  /// rows_[target] <- alpha * rows_[target] - beta * rows_[pivot]
  void combine(int target, const BigInt& alpha, int pivot, const BigInt& beta) {
    const SparseRow& t = rows_[target];
    const SparseRow& p = rows_[pivot];
    SparseRow out;
    out.reserve(t.size() + p.size());
    std::size_t i = 0, j = 0;
    BigInt v;
    while (i < t.size() || j < p.size()) {
      if (j == p.size() || (i < t.size() && t[i].first < p[j].first)) {
        v = alpha * t[i].second;
        out.emplace_back(t[i].first, v);
        ++i;
      } else if (i == t.size() || p[j].first < t[i].first) {
        v = -beta * p[j].second;
        ++col_nnz_[p[j].first];
        col_rows_[p[j].first].push_back(target);
        out.emplace_back(p[j].first, v);
        ++j;
      } else {
        v = alpha * t[i].second - beta * p[j].second;
        if (v != 0)
          out.emplace_back(t[i].first, v);
        else
          --col_nnz_[t[i].first];
        ++i;
        ++j;
      }
    }
    rows_[target] = std::move(out);
  }

  /// Divides row r by the gcd of its entries.
  void make_primitive(int r) {
    auto& row = rows_[r];
    if (row.empty()) return;
    BigInt g = 0;
    for (const auto& e : row) {
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), e.second.get_mpz_t());
      if (g == 1) return;
    }
    for (auto& e : row) mpz_divexact(e.second.get_mpz_t(), e.second.get_mpz_t(), g.get_mpz_t());
  }

  /// Removes row r and column c from the active matrix. Column c must be
  /// zero outside row r.
  void retire(int r, int c) {
    for (const auto& e : rows_[r]) --col_nnz_[e.first];
    rows_[r].clear();
    row_alive_[r] = false;
    col_nnz_[c] = 0;
    col_rows_[c].clear();
  }


 private:
  std::vector<SparseRow> rows_;
  std::vector<std::vector<int>> col_rows_;
  std::vector<int> col_nnz_;
  std::vector<bool> row_alive_;
};

struct Pivot {
  int row = -1;
  int col = -1;
};

// Smallest |entry|, ties broken by Markowitz cost. If units_only, only
// entries equal to +-1 qualify.
Pivot choose_pivot(const Workspace& w, bool units_only) {
  Pivot best;
  const BigInt* best_val = nullptr;
  std::int64_t best_cost = std::numeric_limits<std::int64_t>::max();
  for (int r = 0; r < w.row_count(); ++r) {
    if (!w.alive(r)) continue;
    const auto& row = w.row(r);
    const std::int64_t rn = static_cast<std::int64_t>(row.size()) - 1;
    for (const auto& [c, v] : row) {
      const bool unit = (v == 1 || v == -1);
      if (units_only && !unit) continue;
      const std::int64_t cost = rn * (w.col_nnz(c) - 1);
      int cmp = best_val == nullptr ? -1 : cmpabs(v, *best_val);
      if (cmp < 0 || (cmp == 0 && cost < best_cost)) {
        best = {r, c};
        best_val = &v;
        best_cost = cost;
        if (unit && cost == 0) return best;
      }
    }
  }
  return best;
}

// Dense SNF of a small block. Returns the nonzero diagonal (absolute values)
// in divisibility order.
std::vector<BigInt> dense_snf(std::vector<std::vector<BigInt>> a) {
  const int m = static_cast<int>(a.size());
  const int k = m == 0 ? 0 : static_cast<int>(a[0].size());
  std::vector<BigInt> diag;
  BigInt q;

  auto find_min = [&](int t, int& pi, int& pj) {
    pi = pj = -1;
    for (int i = t; i < m; ++i)
      for (int j = t; j < k; ++j)
        if (a[i][j] != 0 && (pi < 0 || cmpabs(a[i][j], a[pi][pj]) < 0)) {
          pi = i;
          pj = j;
        }
  };
  auto swap_cols = [&](int x, int y) {
    if (x == y) return;
    for (int i = 0; i < m; ++i) std::swap(a[i][x], a[i][y]);
  };

  for (int t = 0; t < std::min(m, k); ++t) {
    int pi, pj;
    find_min(t, pi, pj);
    if (pi < 0) break;
    std::swap(a[t], a[pi]);
    swap_cols(t, pj);

    for (;;) {
      bool dirty = false;
      for (int i = t + 1; i < m; ++i) {
        if (a[i][t] == 0) continue;
        mpz_tdiv_q(q.get_mpz_t(), a[i][t].get_mpz_t(), a[t][t].get_mpz_t());
        if (q != 0)
          for (int j = t; j < k; ++j)
            if (a[t][j] != 0) a[i][j] -= q * a[t][j];
        if (a[i][t] != 0) dirty = true;
      }
      for (int j = t + 1; j < k; ++j) {
        if (a[t][j] == 0) continue;
        mpz_tdiv_q(q.get_mpz_t(), a[t][j].get_mpz_t(), a[t][t].get_mpz_t());
        if (q != 0)
          for (int i = t; i < m; ++i)
            if (a[i][t] != 0) a[i][j] -= q * a[i][t];
        if (a[t][j] != 0) dirty = true;
      }
      if (dirty) {
        // Move the smallest remainder in row/column t to the pivot.
        int bi = t, bj = t;
        for (int i = t + 1; i < m; ++i)
          if (a[i][t] != 0 && cmpabs(a[i][t], a[bi][bj]) < 0) bi = i, bj = t;
        for (int j = t + 1; j < k; ++j)
          if (a[t][j] != 0 && cmpabs(a[t][j], a[bi][bj]) < 0) bi = t, bj = j;
        std::swap(a[t], a[bi]);
        swap_cols(t, bj);
        continue;
      }
      int bad = -1;
      for (int i = t + 1; i < m && bad < 0; ++i)
        for (int j = t + 1; j < k; ++j)
          if (a[i][j] != 0 && !mpz_divisible_p(a[i][j].get_mpz_t(), a[t][t].get_mpz_t())) {
            bad = i;
            break;
          }
      if (bad < 0) break;
      for (int j = t; j < k; ++j) a[t][j] += a[bad][j];
    }
    diag.push_back(abs(a[t][t]));
  }
  return diag;
}

}  // namespace

int rank_over_q(const IntMatrix& m) {
  Workspace w(m);
  int rank = 0;
  for (;;) {
    const Pivot p = choose_pivot(w, false);
    if (p.row < 0) break;
    const BigInt pv = *w.find(p.row, p.col);
    for (int r : w.rows_in_column(p.col, p.row)) {
      BigInt b = *w.find(r, p.col);
      BigInt g = gcd(pv, b);
      w.combine(r, pv / g, p.row, b / g);
      w.make_primitive(r);
    }
    w.retire(p.row, p.col);
    ++rank;
  }
  return rank;
}

SnfResult smith_normal_form(const IntMatrix& m) {
  Workspace w(m);
  SnfResult out;
  int units = 0;
  for (;;) {
    const Pivot p = choose_pivot(w, true);
    if (p.row < 0) break;
    // a = +-1 is its own inverse, so row_r -= (b * a) * row_p clears column.
    const BigInt a = *w.find(p.row, p.col);
    for (int r : w.rows_in_column(p.col, p.row)) {
      BigInt b = *w.find(r, p.col) * a;
      w.combine(r, 1, p.row, b);
    }
    // Column operations against the pivot clear the rest of its row without
    // touching any other row, so row and column simply leave the matrix.
    w.retire(p.row, p.col);
    ++units;
  }

  std::vector<int> rows;
  std::vector<int> col_map(m.cols(), -1);
  int ncols = 0;
  for (int r = 0; r < w.row_count(); ++r) {
    if (!w.alive(r)) continue;
    rows.push_back(r);
    for (const auto& e : w.row(r))
      if (col_map[e.first] < 0) col_map[e.first] = ncols++;
  }
  std::vector<std::vector<BigInt>> block(rows.size(), std::vector<BigInt>(ncols, BigInt(0)));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (const auto& [c, v] : w.row(rows[i])) block[i][col_map[c]] = v;

  out.invariant_factors.assign(units, BigInt(1));
  for (auto& d : dense_snf(std::move(block))) out.invariant_factors.push_back(std::move(d));
  out.rank = static_cast<int>(out.invariant_factors.size());
  return out;
}

std::vector<std::vector<Rational>> inverse_over_q(const std::vector<std::vector<BigInt>>& m) {
  const int k = static_cast<int>(m.size());
  for (const auto& row : m)
    if (static_cast<int>(row.size()) != k) throw InputError("inverse of a non-square matrix");
  std::vector<std::vector<Rational>> a(k, std::vector<Rational>(2 * k));
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) a[i][j] = m[i][j];
    a[i][k + i] = 1;
  }
  Rational f;
  for (int c = 0; c < k; ++c) {
    int piv = -1;
    for (int r = c; r < k; ++r)
      if (a[r][c] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) throw InputError("matrix is singular");
    std::swap(a[c], a[piv]);
    const Rational inv = 1 / a[c][c];
    for (int j = c; j < 2 * k; ++j)
      if (a[c][j] != 0) a[c][j] *= inv;
    for (int r = 0; r < k; ++r) {
      if (r == c || a[r][c] == 0) continue;
      f = a[r][c];
      for (int j = c; j < 2 * k; ++j)
        if (a[c][j] != 0) a[r][j] -= f * a[c][j];
    }
  }
  std::vector<std::vector<Rational>> inv(k, std::vector<Rational>(k));
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) inv[i][j] = a[i][k + j];
  return inv;
}

Rational determinant(std::vector<std::vector<Rational>> m) {
  const int k = static_cast<int>(m.size());
  Rational det = 1;
  Rational f;
  for (int c = 0; c < k; ++c) {
    int piv = -1;
    for (int r = c; r < k; ++r)
      if (m[r][c] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) return 0;
    if (piv != c) {
      std::swap(m[c], m[piv]);
      det = -det;
    }
    det *= m[c][c];
    for (int r = c + 1; r < k; ++r) {
      if (m[r][c] == 0) continue;
      f = m[r][c] / m[c][c];
      for (int j = c; j < k; ++j) m[r][j] -= f * m[c][j];
    }
  }
  return det;
}

}  // namespace hypertree
