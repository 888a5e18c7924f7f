#pragma once

#include "stackyfan/error.hpp"
#include "stackyfan/simplex.hpp"
#include "stackyfan/symmetric_refinement.hpp"
#include "stackyfan/triangulation.hpp"

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace stackyfan {

/// A tower entry: a unimodular S_{r+1}-invariant triangulation at level k.
struct TowerIndex {
  std::int64_t level = 1;
  Triangulation triangulation;
};

struct CofinalTower {
  int r = 0;
  std::vector<TowerIndex> entries;
  /// certificates[i] witnesses entries[i + 1] >= entries[i].
  std::vector<RefinementCertificate> certificates;
  std::vector<std::string> provenance;

  std::vector<std::int64_t> levels() const;
};

/// Raised when a step of the tower cannot be built; carries the entries
/// built so far.
class TowerIncomplete : public Error {
 public:
  TowerIncomplete(const std::string& what, CofinalTower partial) : Error(what), partial_(std::move(partial)) {}
  const CofinalTower& partial() const { return partial_; }

 private:
  CofinalTower partial_;
};

/// k_1 = 1 with the trivial triangulation; step j runs the symmetric
/// refinement at level k_{j-1} (factor m), then dilates the level
/// k_{j-1} m result by j. Every entry is certified (unimodular, invariant,
/// divisibility, refinement of its predecessor).
CofinalTower build_tower(int r, std::size_t depth, const SymmetricRefinementOptions& options = {});

/// Re-checks every invariant of the tower, including the composed
/// certificate from the first to the last entry. Empty when all hold,
/// otherwise a description of the first failure.
std::optional<std::string> audit_tower(const CofinalTower& tower);

struct ProbeResult {
  /// 1-based tower index.
  std::size_t index = 0;
  std::int64_t level = 1;
  RefinementCertificate certificate;
};

/// Least tower entry refining the probe. DomainError for an ill-typed or
/// non-unimodular probe; BoundError asking to extend the tower when no
/// entry refines it.
ProbeResult cofinality_probe(const CofinalTower& tower, const Triangulation& probe);

/// A local chart; rank is the rank of its monoid (r + 1).
struct LocalChart {
  std::size_t id = 0;
  int rank = 1;
};

/// Identifies face_a of chart_a with face_b of chart_b; iso sends position i
/// of face_a's support to position iso(i) of face_b's support.
struct FaceGluing {
  std::size_t chart_a = 0;
  FaceSelector face_a;
  std::size_t chart_b = 0;
  FaceSelector face_b;
  Permutation iso;
};

/// The restriction of the entry for `rank` to the face on the first
/// `face_rank` coordinates.
TowerIndex face_entry(const TowerIndex& entry, int face_rank);

struct GluingCheck {
  std::size_t gluing = 0;
  /// Cells of the restricted face triangulation (both sides agree).
  std::size_t cells = 0;
};

struct GlobalSubdivision {
  std::int64_t level = 1;
  /// Triangulation used by each chart, in chart order.
  std::vector<Triangulation> charts;
  std::vector<GluingCheck> compatibility;
};

struct CompatibilityWitness {
  std::optional<std::size_t> gluing;
  /// First cell (in face coordinates) present on one side only.
  std::vector<SimplexPoint> cell;
  /// "a" when the cell comes from chart_a transported by iso, "b" otherwise.
  std::string side;
};

class CompatibilityError : public Error {
 public:
  CompatibilityError(const std::string& what, CompatibilityWitness witness)
      : Error(what), witness_(std::move(witness)) {}
  const CompatibilityWitness& witness() const { return witness_; }

 private:
  CompatibilityWitness witness_;
};

/// Assembles one triangulation per chart from the entries (keyed by rank)
/// and checks every gluing: both faces are restricted, side a is
/// transported by iso, and the cell sets must coincide. Malformed input
/// raises DomainError; the least failing gluing raises CompatibilityError.
GlobalSubdivision assemble_global(const std::vector<LocalChart>& charts, const std::vector<FaceGluing>& gluings,
                                  const std::map<int, TowerIndex>& entries);

}  // namespace stackyfan
