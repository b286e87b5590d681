#include "hypertree/complex.hpp"

#include <algorithm>
#include <string>

#include "hypertree/errors.hpp"

namespace hypertree {

namespace {

void check_n(int n) {
  if (n < 1 || n > kMaxVertices)
    throw InputError("vertex count " + std::to_string(n) + " outside [1, " +
                     std::to_string(kMaxVertices) + "]");
}

}  // namespace

int edge_index(int i, int j, int n) {
  if (!(0 <= i && i < j && j < n))
    throw InputError("edge (" + std::to_string(i) + "," + std::to_string(j) + ") invalid for n=" +
                     std::to_string(n));
  return static_cast<int>(choose(n, 2) - choose(n - i, 2) + (j - i - 1));
}

Edge index_edge(int index, int n) {
  if (index < 0 || index >= edge_count(n))
    throw InputError("edge index " + std::to_string(index) + " out of range");
  int i = 0;
  int offset = 0;
  while (offset + (n - 1 - i) <= index) {
    offset += n - 1 - i;
    ++i;
  }
  return {i, i + 1 + (index - offset)};
}

int triangle_index(int i, int j, int k, int n) {
  if (!(0 <= i && i < j && j < k && k < n))
    throw InputError("triangle (" + std::to_string(i) + "," + std::to_string(j) + "," +
                     std::to_string(k) + ") invalid for n=" + std::to_string(n));
  // triples with first vertex < i, then pairs (j', k') under i with j' < j, then k.
  return static_cast<int>(choose(n, 3) - choose(n - i, 3) + choose(n - i - 1, 2) - choose(n - j, 2) +
                          (k - j - 1));
}

Triangle index_triangle(int index, int n) {
  if (index < 0 || index >= triangle_count(n))
    throw InputError("triangle index " + std::to_string(index) + " out of range for n=" +
                     std::to_string(n));
  int i = 0;
  int offset = 0;
  while (offset + choose(n - 1 - i, 2) <= index) {
    offset += static_cast<int>(choose(n - 1 - i, 2));
    ++i;
  }
  int j = i + 1;
  while (offset + (n - 1 - j) <= index) {
    offset += n - 1 - j;
    ++j;
  }
  return Triangle{{i, j, j + 1 + (index - offset)}};
}

Triangle make_triangle(int a, int b, int c) {
  std::array<int, 3> v{a, b, c};
  std::sort(v.begin(), v.end());
  if (v[0] == v[1] || v[1] == v[2]) throw InputError("degenerate triangle: repeated vertex");
  return Triangle{v};
}

std::vector<int> FaceSet::indices() const {
  std::vector<int> out;
  for (std::size_t w = 0; w < words_.size(); ++w) {
    std::uint64_t bits = words_[w];
    while (bits) {
      out.push_back(static_cast<int>(w * 64) + std::countr_zero(bits));
      bits &= bits - 1;
    }
  }
  return out;
}

Complex2::Complex2(int n, std::span<const int> face_indices) : n_(n) {
  check_n(n);
  const int cap = triangle_count(n);
  faces_ = FaceSet(cap);
  for (int f : face_indices) {
    if (f < 0 || f >= cap)
      throw InputError("face index " + std::to_string(f) + " out of range for n=" + std::to_string(n));
    if (faces_.test(f)) throw InputError("duplicate face index " + std::to_string(f));
    faces_.set(f);
  }
  indices_ = faces_.indices();
}

Complex2::Complex2(int n, std::span<const Triangle> faces) : n_(n) {
  check_n(n);
  faces_ = FaceSet(triangle_count(n));
  for (const auto& t : faces) {
    const int f = triangle_index(t, n);
    if (faces_.test(f)) throw InputError("duplicate face index " + std::to_string(f));
    faces_.set(f);
  }
  indices_ = faces_.indices();
}

Complex2::Complex2(int n, FaceSet faces) : n_(n), faces_(std::move(faces)) {
  check_n(n);
  if (faces_.capacity() != triangle_count(n)) throw InputError("face set capacity does not match n");
  indices_ = faces_.indices();
}

std::vector<Triangle> Complex2::triangles() const {
  std::vector<Triangle> out;
  out.reserve(indices_.size());
  for (int f : indices_) out.push_back(index_triangle(f, n_));
  return out;
}

Complex2 Complex2::exchanged(int removed, int added) const {
  if (!contains(removed)) throw InputError("exchange removes a face that is not present");
  if (added < 0 || added >= faces_.capacity() || contains(added))
    throw InputError("exchange adds an invalid or present face");
  FaceSet next = faces_;
  next.reset(removed);
  next.set(added);
  return Complex2(n_, std::move(next));
}

Complex2 Complex2::relabeled(std::span<const int> perm) const {
  if (static_cast<int>(perm.size()) != n_) throw InputError("permutation has wrong length");
  std::vector<Triangle> out;
  out.reserve(indices_.size());
  for (int f : indices_) {
    const auto t = index_triangle(f, n_);
    out.push_back(make_triangle(perm[t.v[0]], perm[t.v[1]], perm[t.v[2]]));
  }
  return Complex2(n_, std::span<const Triangle>(out));
}

Complex2 cone_tree(int n) {
  std::vector<int> faces;
  for (int j = 1; j < n; ++j)
    for (int k = j + 1; k < n; ++k) faces.push_back(triangle_index(0, j, k, n));
  return Complex2(n, std::span<const int>(faces));
}

Complex2 projective_plane6() {
  // Central triangle 123, the three triangles on its edges, and six around the hexagon.
  static constexpr int kFaces[10][3] = {{1, 2, 3}, {1, 2, 5}, {1, 3, 6}, {2, 3, 4}, {1, 4, 5},
                                        {1, 4, 6}, {3, 5, 6}, {3, 4, 5}, {2, 4, 6}, {2, 5, 6}};
  std::vector<Triangle> t;
  for (const auto& f : kFaces) t.push_back(make_triangle(f[0] - 1, f[1] - 1, f[2] - 1));
  return Complex2(6, std::span<const Triangle>(t));
}

}  // namespace hypertree
