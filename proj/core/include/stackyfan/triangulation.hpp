#pragma once

#include "stackyfan/integer.hpp"
#include "stackyfan/simplex.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace stackyfan {

/// Sorted canonical point indices of one maximal simplex.
using Cell = std::vector<int>;

/// A set of maximal cells on the lattice points of n * Delta^r.
struct Triangulation {
  int r = 0;
  std::int64_t n = 1;
  std::vector<Cell> cells;

  DilatedSimplex simplex() const { return {r, n}; }
  /// Sorts every cell and the cell list.
  Triangulation& normalize();

  friend bool operator==(const Triangulation&, const Triangulation&) = default;
};

enum class ViolationKind {
  wrong_arity,
  repeated_vertex,
  affinely_dependent,
  duplicate_cell,
  improper_intersection,
  volume_deficit,
  volume_excess,
};

std::string to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  std::vector<std::size_t> cells;
  std::string detail;
};

struct ValidityReport {
  std::vector<Violation> violations;
  Integer total_volume = 0;
  Integer expected_volume = 0;

  bool valid() const { return violations.empty(); }
};

/// Full certification: cells are affinely independent, pairwise meet in
/// common faces, and their normalized volumes add up to n^r.
/// Throws DomainError for out-of-range point indices.
ValidityReport validate(const Triangulation& t);

/// Normalized volume (r! times Euclidean volume in the lattice of the
/// hyperplane) of one cell.
Integer normalized_volume(const Triangulation& t, const Cell& cell);
/// normalized_volume of every cell, in cell order.
std::vector<Integer> cell_volumes(const Triangulation& t);

/// Every cell has normalized volume 1. Throws DomainError if t is invalid.
bool is_unimodular(const Triangulation& t);
/// Same, reusing a report previously computed by validate(t).
bool is_unimodular(const Triangulation& t, const ValidityReport& report);

/// Weaker check: every interior lattice point is a vertex of some cell.
bool uses_all_interior_points(const Triangulation& t);

/// Vertex set equals the full lattice point set.
bool uses_all_lattice_points(const Triangulation& t);

Triangulation trivial_triangulation(int r);

struct EnumerationOptions {
  std::size_t max_points = 35;
  /// Keep only the lexicographically least member of each S_{r+1}-orbit.
  bool symmetry_reduce = false;
  /// Refuse (BoundError) once more triangulations than this are found.
  std::size_t max_results = 200000;
};

/// Every unimodular triangulation of n * Delta^r, in deterministic search
/// order. Refuses (BoundError) instances with more than max_points points
/// or more than max_results triangulations.
std::vector<Triangulation> enumerate_unimodular(int r, std::int64_t n, const EnumerationOptions& options = {});

/// Image of t under a permutation of the simplex vertices (normalized).
Triangulation transform(const Triangulation& t, const Permutation& g);

/// Lexicographically least image of t under S_{r+1}.
Triangulation canonical_form(const Triangulation& t);

struct Orbit {
  Triangulation representative;
  /// Positions in the input list, ascending.
  std::vector<std::size_t> members;
};

/// Partition into S_{r+1}-orbits, ordered by canonical representative.
std::vector<Orbit> orbit_classes(const std::vector<Triangulation>& ts);

bool is_invariant(const Triangulation& t);
/// Same, reusing a report previously computed by validate(t).
bool is_invariant(const Triangulation& t, const ValidityReport& report);

/// Triangulation induced on a coordinate face, re-indexed in the face simplex.
Triangulation restrict_to_face(const Triangulation& t, const FaceSelector& face);

/// Witness for (fine.n, fine) >= (coarse.n, coarse): each fine cell is
/// assigned the least coarse cell whose dilation by `scale` contains it.
struct RefinementCertificate {
  int r = 0;
  std::int64_t fine_level = 1;
  std::int64_t coarse_level = 1;
  std::int64_t scale = 1;
  std::vector<std::size_t> map;
};

struct Refusal {
  enum class Reason { dimension_mismatch, divisibility, uncontained_cell };
  Reason reason;
  /// Offending fine cell for uncontained_cell.
  std::optional<std::size_t> cell;
  std::string message;
};

using RefinementOutcome = std::variant<RefinementCertificate, Refusal>;

RefinementOutcome refines(const Triangulation& fine, const Triangulation& coarse);

/// Re-checks every containment claimed by the certificate.
bool verify_certificate(const RefinementCertificate& cert, const Triangulation& fine, const Triangulation& coarse);

/// Certificate for fine >= coarse from fine >= mid and mid >= coarse.
RefinementCertificate compose(const RefinementCertificate& fine_mid, const RefinementCertificate& mid_coarse);

/// Subdivides each dilated cell by the hyperplanes where its own
/// barycentric coordinates are integral. Cells must be unimodular. The
/// result depends only on the cell vertex sets, so it inherits every
/// symmetry of t; for r <= 2 it is unimodular. For r = 3 the leftover
/// octahedra are split by pulling their least vertex in `pull_order`
/// (default: canonical index order).
Triangulation grid_subdivision(const Triangulation& t, std::int64_t d,
                               const std::vector<std::size_t>& pull_rank = {});

/// Whether two cells of the same triangulation meet in a common face.
bool cells_intersect_properly(const Triangulation& t, const Cell& a, const Cell& b);

}  // namespace stackyfan
