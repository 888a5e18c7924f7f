#pragma once

#include "stackyfan/integer.hpp"
#include "stackyfan/lattice.hpp"
#include "stackyfan/linalg.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace stackyfan {

using QPoint = linalg::QVector;

/// { x : <normal, x> = offset } inside the affine hull of a dilated simplex.
/// The normal is primitive, sums to zero and has a positive first nonzero
/// entry, so equal hyperplanes have equal representations.
struct RationalHyperplane {
  IntVector normal;
  Rational offset;

  Rational evaluate(const QPoint& x) const;
  /// The same hyperplane after dilating the simplex by f.
  RationalHyperplane scaled(const Rational& f) const;

  friend bool operator==(const RationalHyperplane&, const RationalHyperplane&) = default;
  friend bool operator<(const RationalHyperplane& a, const RationalHyperplane& b);
};

/// Normalized representation of { x : <a, x> = c } on the hyperplane sum = level.
/// Throws DomainError when a is constant (no hyperplane).
RationalHyperplane make_hyperplane(const std::vector<Integer>& a, const Rational& c, const Rational& level);

/// { x : <normal, x> >= offset }
struct Halfspace {
  QPoint normal;
  Rational offset;

  Rational slack(const QPoint& x) const;
};

/// A full-dimensional rational polytope inside the hyperplane
/// x_1 + ... + x_{r+1} = level, kept in both H- and V-representation.
class RationalPolytope {
 public:
  /// level * Delta^r.
  static RationalPolytope simplex(int r, const Rational& level);
  /// Polytope cut out of the simplex by extra halfspaces; nullopt when the
  /// result is not full-dimensional.
  static std::optional<RationalPolytope> from_halfspaces(int r, const Rational& level, std::vector<Halfspace> extra);
  /// Simplex spanned by r + 1 affinely independent points of the level
  /// hyperplane; throws DomainError otherwise.
  static RationalPolytope simplex_hull(int r, const Rational& level, std::vector<QPoint> vertices);

  int r() const { return r_; }
  const Rational& level() const { return level_; }
  /// Irredundant facet inequalities.
  const std::vector<Halfspace>& facets() const { return facets_; }
  /// Sorted vertex list.
  const std::vector<QPoint>& vertices() const { return vertices_; }

  bool contains(const QPoint& x) const;
  QPoint centroid() const;
  /// Normalized volume relative to the lattice of the hyperplane.
  Rational volume() const;
  bool is_simplex() const { return vertices_.size() == static_cast<std::size_t>(r_ + 1); }
  /// Least common denominator of the vertex coordinates.
  Integer vertex_denominator() const;

  /// Both closed sides of h when h meets the interior; nullopt otherwise.
  std::optional<std::pair<RationalPolytope, RationalPolytope>> split(const RationalHyperplane& h) const;

  /// Lattice points (integral coordinates) in the closed polytope, sorted.
  std::vector<std::vector<std::int64_t>> lattice_points() const;

  friend bool operator==(const RationalPolytope& a, const RationalPolytope& b) { return a.vertices_ == b.vertices_; }

 private:
  RationalPolytope(int r, Rational level, std::vector<Halfspace> facets, std::vector<QPoint> vertices)
      : r_(r), level_(std::move(level)), facets_(std::move(facets)), vertices_(std::move(vertices)) {}
  static std::optional<RationalPolytope> build(int r, const Rational& level, std::vector<Halfspace> constraints);

  int r_ = 0;
  Rational level_;
  std::vector<Halfspace> facets_;
  std::vector<QPoint> vertices_;
};

/// Pulling triangulation of a lattice polytope: the first lattice point in
/// `before` order is coned over the recursively pulled facets avoiding it.
/// Points that end up unused are inserted afterwards with
/// stellar_subdivide. Vertices must be integral. Faces shared by several
/// polytopes triangulate identically when the same order is used, so the
/// union over a face-to-face complex is a triangulation.
class PullingTriangulator {
 public:
  using Point = std::vector<std::int64_t>;
  using Order = std::function<bool(const Point&, const Point&)>;

  explicit PullingTriangulator(Order before) : before_(std::move(before)) {}

  std::vector<std::vector<Point>> triangulate(const RationalPolytope& cell);

 private:
  Order before_;
  std::map<std::vector<QPoint>, std::vector<std::vector<QPoint>>> memo_;
};

/// Stellar subdivision at p of every simplex (given by its vertex points)
/// whose closure contains p; returns the number of simplices replaced.
std::size_t stellar_subdivide(std::vector<std::vector<std::vector<std::int64_t>>>& simplices,
                              const std::vector<std::int64_t>& p);

}  // namespace stackyfan
