#include "stackyfan/error.hpp"
#include "stackyfan/triangulation.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <algorithm>

using namespace stackyfan;
using stackyfan::testing::medial;
using stackyfan::testing::midpoint_fan;

namespace {

bool has(const ValidityReport& report, ViolationKind kind) {
  return std::any_of(report.violations.begin(), report.violations.end(),
                     [&](const Violation& v) { return v.kind == kind; });
}

}  // namespace

TEST(Validate, AcceptsKnownTriangulations) {
  for (const auto& t : {medial(), midpoint_fan(), trivial_triangulation(3)}) {
    const auto report = validate(t);
    EXPECT_TRUE(report.valid());
    EXPECT_EQ(report.total_volume, report.expected_volume);
  }
}

TEST(Validate, DetectsEachViolationKind) {
  EXPECT_TRUE(has(validate(Triangulation{2, 2, {{0, 1}}}), ViolationKind::wrong_arity));
  EXPECT_TRUE(has(validate(Triangulation{2, 2, {{0, 0, 1}}}), ViolationKind::repeated_vertex));
  // (0,0,2), (0,1,1), (0,2,0) are collinear
  EXPECT_TRUE(has(validate(Triangulation{2, 2, {{0, 1, 2}}}), ViolationKind::affinely_dependent));
  auto twice = medial();
  twice.cells.push_back(twice.cells.front());
  EXPECT_TRUE(has(validate(twice), ViolationKind::duplicate_cell));
  auto overlap = medial();
  overlap.cells.push_back({1, 3, 5});
  EXPECT_TRUE(has(validate(overlap), ViolationKind::improper_intersection));
  EXPECT_TRUE(has(validate(overlap), ViolationKind::volume_excess));
  auto hole = medial();
  hole.cells.pop_back();
  EXPECT_TRUE(has(validate(hole), ViolationKind::volume_deficit));
  EXPECT_THROW(validate(Triangulation{2, 2, {{0, 1, 99}}}), DomainError);
}

TEST(Validate, NonUnimodularButValid) {
  const auto t = trivial_triangulation(2);
  Triangulation big{2, 2, {{0, 2, 5}}};
  EXPECT_TRUE(validate(big).valid());
  EXPECT_FALSE(is_unimodular(big));
  EXPECT_EQ(normalized_volume(big, big.cells[0]), 4);
  EXPECT_TRUE(is_unimodular(t));
  EXPECT_THROW(is_unimodular(Triangulation{2, 2, {{0, 1, 3}}}), DomainError);
}

TEST(Invariance, MedialIsInvariantMidpointFanIsNot) {
  EXPECT_TRUE(is_invariant(medial()));
  EXPECT_FALSE(is_invariant(midpoint_fan()));
  EXPECT_TRUE(is_invariant(trivial_triangulation(3)));
}

TEST(Symmetry, TransformAndCanonicalForm) {
  const auto t = midpoint_fan();
  // the apex (0,1,1) is fixed by swapping the last two coordinates only
  EXPECT_EQ(transform(t, Permutation::transposition(3, 1, 2)), t);
  const auto swap = Permutation::transposition(3, 0, 1);
  EXPECT_NE(transform(t, swap), t);
  EXPECT_EQ(transform(transform(t, swap), swap), t);
  EXPECT_EQ(canonical_form(transform(t, Permutation::cycle(3, {0, 1, 2}))), canonical_form(t));
  EXPECT_EQ(canonical_form(medial()), medial());
}

TEST(Symmetry, OrbitClasses) {
  const auto c = Permutation::cycle(3, {0, 1, 2});
  const std::vector<Triangulation> ts{midpoint_fan(), medial(), transform(midpoint_fan(), c),
                                      transform(midpoint_fan(), c * c)};
  const auto orbits = orbit_classes(ts);
  ASSERT_EQ(orbits.size(), 2u);
  std::vector<std::size_t> sizes{orbits[0].members.size(), orbits[1].members.size()};
  std::sort(sizes.begin(), sizes.end());
  EXPECT_EQ(sizes, (std::vector<std::size_t>{1, 3}));
}

TEST(PointUsage, InteriorAndAllPoints) {
  EXPECT_TRUE(uses_all_lattice_points(medial()));
  EXPECT_TRUE(uses_all_interior_points(medial()));
  EXPECT_FALSE(uses_all_lattice_points(Triangulation{2, 2, {{0, 2, 5}}}));
}

TEST(RestrictToFace, EdgesOfMedial) {
  for (const auto& face : {FaceSelector{0, 1}, FaceSelector{0, 2}, FaceSelector{1, 2}}) {
    const auto e = restrict_to_face(medial(), face);
    EXPECT_EQ(e.r, 1);
    EXPECT_EQ(e.cells, (std::vector<Cell>{{0, 1}, {1, 2}}));
  }
  const auto whole = restrict_to_face(medial(), FaceSelector{0, 1, 2});
  EXPECT_EQ(whole, medial());
  const auto vertex = restrict_to_face(medial(), FaceSelector{1});
  EXPECT_EQ(vertex.cells, (std::vector<Cell>{{0}}));
  EXPECT_THROW(restrict_to_face(medial(), FaceSelector{0, 3}), DomainError);
}

TEST(Refines, GridRefinesItsSource) {
  const auto fine = grid_subdivision(medial(), 3);
  auto outcome = refines(fine, medial());
  ASSERT_TRUE(std::holds_alternative<RefinementCertificate>(outcome));
  const auto& cert = std::get<RefinementCertificate>(outcome);
  EXPECT_EQ(cert.scale, 3);
  EXPECT_EQ(cert.map.size(), fine.cells.size());
  EXPECT_TRUE(verify_certificate(cert, fine, medial()));
  // every coarse cell receives exactly 3^2 fine cells
  for (std::size_t c = 0; c < medial().cells.size(); ++c)
    EXPECT_EQ(std::count(cert.map.begin(), cert.map.end(), c), 9);
}

TEST(Refines, RefusalReasons) {
  const auto divisibility = refines(grid_subdivision(medial(), 3), grid_subdivision(trivial_triangulation(2), 4));
  ASSERT_TRUE(std::holds_alternative<Refusal>(divisibility));
  EXPECT_EQ(std::get<Refusal>(divisibility).reason, Refusal::Reason::divisibility);
  const auto dim = refines(trivial_triangulation(2), trivial_triangulation(1));
  ASSERT_TRUE(std::holds_alternative<Refusal>(dim));
  EXPECT_EQ(std::get<Refusal>(dim).reason, Refusal::Reason::dimension_mismatch);
  // distinct triangulations of the same level are incomparable
  const auto same = refines(midpoint_fan(), medial());
  ASSERT_TRUE(std::holds_alternative<Refusal>(same));
  EXPECT_EQ(std::get<Refusal>(same).reason, Refusal::Reason::uncontained_cell);
  EXPECT_TRUE(std::get<Refusal>(same).cell.has_value());
}

TEST(Refines, ForgedCertificateFails) {
  const auto fine = grid_subdivision(medial(), 2);
  auto cert = std::get<RefinementCertificate>(refines(fine, medial()));
  cert.map[0] = (cert.map[0] + 1) % medial().cells.size();
  EXPECT_FALSE(verify_certificate(cert, fine, medial()));
}

TEST(Refines, CompositionIsTransitive) {
  const auto mid = grid_subdivision(medial(), 2);
  const auto fine = grid_subdivision(mid, 3);
  const auto a = std::get<RefinementCertificate>(refines(fine, mid));
  const auto b = std::get<RefinementCertificate>(refines(mid, medial()));
  const auto c = compose(a, b);
  EXPECT_EQ(c.scale, 6);
  EXPECT_TRUE(verify_certificate(c, fine, medial()));
  EXPECT_EQ(c.map, std::get<RefinementCertificate>(refines(fine, medial())).map);
}

TEST(GridSubdivision, CountsAndSymmetry) {
  for (int r = 1; r <= 2; ++r)
    for (int d = 1; d <= 5; ++d) {
      const auto g = grid_subdivision(trivial_triangulation(r), d);
      EXPECT_EQ(g.n, d);
      EXPECT_EQ(static_cast<long>(g.cells.size()), static_cast<long>(std::pow(d, r)));
      EXPECT_TRUE(is_unimodular(g));
      EXPECT_TRUE(is_invariant(g));
    }
  EXPECT_EQ(grid_subdivision(trivial_triangulation(2), 2), medial());
}

TEST(GridSubdivision, ThreeDimensionalIsUnimodularButNotInvariant) {
  const auto g = grid_subdivision(trivial_triangulation(3), 2);
  EXPECT_EQ(g.cells.size(), 8u);
  EXPECT_TRUE(is_unimodular(g));
  EXPECT_FALSE(is_invariant(g));
}

TEST(GridSubdivision, RejectsNonUnimodularInput) {
  EXPECT_THROW(grid_subdivision(Triangulation{2, 2, {{0, 2, 5}}}, 2), DomainError);
}

TEST(CellsIntersectProperly, SharedEdgeAndOverlap) {
  const auto t = medial();
  EXPECT_TRUE(cells_intersect_properly(t, {0, 1, 3}, {1, 3, 4}));
  EXPECT_FALSE(cells_intersect_properly(t, {1, 3, 4}, {1, 3, 5}));
}
