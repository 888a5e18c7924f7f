#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <vector>

namespace stackyfan {

/// n * Delta^r, realized on the hyperplane x_1 + ... + x_{r+1} = n.
struct DilatedSimplex {
  int r = 0;
  std::int64_t n = 1;

  int ambient_dim() const { return r + 1; }
  friend bool operator==(const DilatedSimplex&, const DilatedSimplex&) = default;
};

/// A lattice point of a dilated simplex, as nonnegative barycentric integers.
struct SimplexPoint {
  std::vector<std::int64_t> coords;

  std::int64_t level() const;
  friend auto operator<=>(const SimplexPoint&, const SimplexPoint&) = default;
};

/// A coordinate face { p : p_i = 0 for i outside support }, 0-based indices.
struct FaceSelector {
  std::vector<int> support;

  FaceSelector() = default;
  FaceSelector(std::initializer_list<int> s);
  explicit FaceSelector(std::vector<int> s);

  int dim() const { return static_cast<int>(support.size()) - 1; }
  bool contains(const SimplexPoint& p) const;
  friend bool operator==(const FaceSelector&, const FaceSelector&) = default;
};

/// Bijection of {0, ..., k-1}; image[i] is where i is sent.
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<int> image);
  static Permutation identity(int k);
  static Permutation transposition(int k, int a, int b);
  /// The cycle a_0 -> a_1 -> ... -> a_0.
  static Permutation cycle(int k, const std::vector<int>& elements);

  int size() const { return static_cast<int>(image_.size()); }
  int operator()(int i) const { return image_[static_cast<std::size_t>(i)]; }
  const std::vector<int>& image() const { return image_; }

  /// (a * b)(i) = a(b(i))
  friend Permutation operator*(const Permutation& a, const Permutation& b);
  Permutation inverse() const;
  bool is_identity() const;

  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  std::vector<int> image_;
};

/// All (r+1)! permutations in lexicographic order of their image vectors.
std::vector<Permutation> all_permutations(int k);
/// Adjacent transpositions (i, i+1); they generate S_k.
std::vector<Permutation> symmetric_group_generators(int k);

/// All C(n+r, r) lattice points in lexicographic order. The position of a
/// point in this list is its canonical index everywhere in the library.
std::vector<SimplexPoint> lattice_points(const DilatedSimplex& s);
std::size_t lattice_point_count(const DilatedSimplex& s);

/// Points with every coordinate >= 1.
std::vector<SimplexPoint> interior_points(const DilatedSimplex& s);

/// Canonical index of a point (its rank in lattice_points).
std::size_t point_index(const DilatedSimplex& s, const SimplexPoint& p);
bool is_lattice_point(const DilatedSimplex& s, const SimplexPoint& p);

/// Drops the coordinates outside the support; the point must lie on the face.
SimplexPoint restrict_point(const SimplexPoint& p, const FaceSelector& f);

/// (g . p)_{g(i)} = p_i.
SimplexPoint apply_symmetry(const Permutation& g, const SimplexPoint& p);

}  // namespace stackyfan
