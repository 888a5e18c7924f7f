#pragma once

#include "stackyfan/error.hpp"
#include "stackyfan/integer.hpp"
#include "stackyfan/polytope.hpp"
#include "stackyfan/simplex.hpp"
#include "stackyfan/triangulation.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace stackyfan {

/// The C(r+1, 2) hyperplanes x_i = x_j (normal e_i - e_j, offset 0).
std::vector<RationalHyperplane> reflection_hyperplanes(int r);

/// Every hyperplane spanned by r affinely independent lattice points of
/// n * Delta^r (facets included), sorted and deduplicated. Offsets are at
/// level n. Refuses (BoundError) above max_points lattice points.
std::vector<RationalHyperplane> spanning_arrangement(int r, std::int64_t n, std::size_t max_points = 35);

/// lcm of the denominators of all vertices of the arrangement arr + refl
/// (together with the simplex facets) inside s, in level-n coordinates.
Integer common_denominator(const DilatedSimplex& s, const std::vector<RationalHyperplane>& arr,
                           const std::vector<RationalHyperplane>& refl);

/// Cells of `region` cut by every hyperplane (offsets already at the
/// region's level), in deterministic order.
std::vector<RationalPolytope> decompose(const RationalPolytope& region, const std::vector<RationalHyperplane>& cuts);

struct ChamberComplex {
  int r = 0;
  std::int64_t n = 1;
  std::int64_t m = 1;
  /// Cells at level m * n.
  std::vector<RationalPolytope> chambers;
  /// Pairs (i, j), i < j, of chambers sharing a facet.
  std::vector<std::pair<std::size_t, std::size_t>> adjacency;

  bool connected() const;
  /// Every chamber vertex is integral at level m * n.
  bool integral() const;
};

/// The reflection arrangement refined by the spanning arrangement, at level m * n.
ChamberComplex chamber_decomposition(int r, std::int64_t n, std::int64_t m, std::size_t max_points = 35);

/// Point x lies in the closed fundamental chamber x_1 >= x_2 >= ... >= x_{r+1}.
bool in_fundamental_chamber(const QPoint& x);

struct FaceCertificate {
  FaceSelector face;
  bool invariant = false;
  bool unimodular = false;
  /// Face triangulations of level n the restriction was compared with.
  std::size_t compared = 0;
  std::size_t refined = 0;
};

struct SymmetricCertificates {
  bool valid = false;
  bool invariant = false;
  bool unimodular = false;
  /// "enumerated" when compared against every unimodular triangulation of
  /// (r, n), "arrangement" when compared against the arrangement complex.
  std::string universality;
  std::vector<RefinementCertificate> refinements;
  std::size_t compared = 0;
  bool arrangement_refined = false;
  std::vector<FaceCertificate> faces;

  bool all_passed() const;
};

struct SymmetricRefinementResult {
  int r = 0;
  std::int64_t n = 1;
  std::int64_t m = 1;
  /// Triangulation at level m * n.
  Triangulation triangulation;
  std::vector<std::string> provenance;
  SymmetricCertificates certificates;
};

struct SymmetricRefinementOptions {
  std::size_t max_points = 35;
  /// Attempts m0, 2 m0, ..., max_retry * m0 before giving up.
  std::size_t max_retry = 8;
  /// Largest lattice point count of m * n * Delta^r that is attempted.
  std::size_t max_level_points = 200000;
  /// Accept the arrangement complex itself when it is already a unimodular
  /// triangulation.
  bool shortcut = true;
  bool certify = true;
};

/// Carries whatever the failed construction had reached.
class DilationBoundExceeded : public Error {
 public:
  DilationBoundExceeded(const std::string& what, std::vector<std::int64_t> attempted,
                        std::optional<Triangulation> last_attempt, std::vector<std::string> provenance)
      : Error(what),
        attempted_(std::move(attempted)),
        last_attempt_(std::move(last_attempt)),
        provenance_(std::move(provenance)) {}

  const std::vector<std::int64_t>& attempted_factors() const { return attempted_; }
  const std::optional<Triangulation>& last_attempt() const { return last_attempt_; }
  const std::vector<std::string>& provenance() const { return provenance_; }

 private:
  std::vector<std::int64_t> attempted_;
  std::optional<Triangulation> last_attempt_;
  std::vector<std::string> provenance_;
};

/// A unimodular, S_{r+1}-invariant triangulation of (m n) Delta^r refining
/// every unimodular triangulation of n Delta^r, with certificates.
SymmetricRefinementResult symmetric_unimodular_refinement(int r, std::int64_t n,
                                                          const SymmetricRefinementOptions& options = {});

/// Same construction with the shortcut disabled and an explicit starting
/// factor; exposed so the chamber path can be exercised where the shortcut
/// would apply.
SymmetricRefinementResult chamber_refinement(int r, std::int64_t n, std::int64_t m0,
                                             const SymmetricRefinementOptions& options = {});

/// Invariant unimodular refinement of an invariant unimodular T at level
/// d * n (grid subdivision of every cell). Rejects non-invariant input;
/// for r = 3 the result is checked and a failure is reported as DomainError.
Triangulation equivariant_dilation_refinement(const Triangulation& t, std::int64_t d);

/// Each cell of t (scaled to level n of the complex) lies in some cell.
bool refines_complex(const Triangulation& t, const std::vector<RationalPolytope>& cells);

}  // namespace stackyfan
