#pragma once

// Canonical indexing of edges and triangles on the vertex set {0, ..., n-1},
// and the Complex2 value type (a 2-complex with complete 1-skeleton).
//
// Vertices are 0-based everywhere in the library. Files and the Python
// bindings use 1-based labels and convert at the boundary.

#include <array>
#include <bit>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace hypertree {

/// Binomial coefficient for small arguments. Returns 0 when k < 0 or k > n.
constexpr std::int64_t choose(std::int64_t n, std::int64_t k) {
  if (k < 0 || n < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  std::int64_t r = 1;
  for (std::int64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

constexpr int edge_count(int n) { return static_cast<int>(choose(n, 2)); }
constexpr int triangle_count(int n) { return static_cast<int>(choose(n, 3)); }
/// Number of faces of any 2-tree on n vertices, C(n-1, 2).
constexpr int tree_size(int n) { return static_cast<int>(choose(n - 1, 2)); }

/// Largest n accepted by Complex2. C(64,3) = 41664 face slots.
inline constexpr int kMaxVertices = 64;

struct Edge {
  int lo = 0;
  int hi = 0;
  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Strictly increasing vertex triple (0-based).
struct Triangle {
  std::array<int, 3> v{};

  friend bool operator==(const Triangle&, const Triangle&) = default;
  friend auto operator<=>(const Triangle&, const Triangle&) = default;

  bool contains(int vertex) const { return v[0] == vertex || v[1] == vertex || v[2] == vertex; }
};

/// Lexicographic rank of the edge {i < j}. Throws InputError on bad input.
int edge_index(int i, int j, int n);
Edge index_edge(int index, int n);

/// Lexicographic rank of the triple i < j < k among all C(n,3) triples.
/// Throws InputError if the triple is not strictly increasing or out of range.
int triangle_index(int i, int j, int k, int n);
inline int triangle_index(const Triangle& t, int n) { return triangle_index(t.v[0], t.v[1], t.v[2], n); }
Triangle index_triangle(int index, int n);

/// Sorts an unordered triple of distinct vertices. Throws InputError on a repeat.
Triangle make_triangle(int a, int b, int c);

/// Fixed-capacity bitset over the C(n,3) face slots.
class FaceSet {
 public:
  FaceSet() = default;
  explicit FaceSet(int capacity) : capacity_(capacity), words_((capacity + 63) / 64, 0) {}

  int capacity() const { return capacity_; }

  bool test(int i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
  void set(int i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(int i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }

  int count() const {
    int c = 0;
    for (auto w : words_) c += std::popcount(w);
    return c;
  }

  /// True if every bit of `other` is also set here.
  bool contains_all(const FaceSet& other) const {
    for (std::size_t w = 0; w < words_.size(); ++w)
      if ((other.words_[w] & ~words_[w]) != 0) return false;
    return true;
  }

  std::vector<int> indices() const;
  std::span<const std::uint64_t> words() const { return words_; }

  friend bool operator==(const FaceSet&, const FaceSet&) = default;
  friend auto operator<=>(const FaceSet&, const FaceSet&) = default;

 private:
  int capacity_ = 0;
  std::vector<std::uint64_t> words_;
};

/// A 2-dimensional simplicial complex on n vertices whose 1-skeleton is the
/// complete graph. Only the triangles are stored. Immutable after construction.
class Complex2 {
 public:
  Complex2() = default;
  /// Throws InputError if n is out of range or a face index is invalid.
  /// Duplicate indices are rejected.
  Complex2(int n, std::span<const int> face_indices);
  Complex2(int n, std::span<const Triangle> faces);
  Complex2(int n, FaceSet faces);

  int n() const { return n_; }
  int size() const { return static_cast<int>(indices_.size()); }
  bool contains(int face_index) const { return faces_.test(face_index); }
  const FaceSet& face_set() const { return faces_; }
  /// Face indices in increasing order.
  const std::vector<int>& faces() const { return indices_; }
  std::vector<Triangle> triangles() const;

  /// The complex with `removed` deleted and `added` inserted.
  Complex2 exchanged(int removed, int added) const;
  /// Image under a vertex permutation (perm[v] is the new label of v).
  Complex2 relabeled(std::span<const int> perm) const;

  friend bool operator==(const Complex2& a, const Complex2& b) {
    return a.n_ == b.n_ && a.faces_ == b.faces_;
  }

 private:
  int n_ = 0;
  FaceSet faces_;
  std::vector<int> indices_;
};

/// The cone 2-tree {0, j, k} for all 1 <= j < k < n.
Complex2 cone_tree(int n);

/// The 6-vertex real projective plane (labels 1..6 mapped to 0..5).
Complex2 projective_plane6();

}  // namespace hypertree
