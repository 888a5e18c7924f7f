#include "stackyfan/error.hpp"
#include "stackyfan/tower.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

using namespace stackyfan;
using stackyfan::testing::medial;
using stackyfan::testing::midpoint_fan;

namespace {

const CofinalTower& plane_tower() {
  static const CofinalTower tower = build_tower(2, 3);
  return tower;
}

}  // namespace

TEST(Tower, SegmentLevelsAreFactorials) {
  const auto tower = build_tower(1, 4);
  EXPECT_EQ(tower.levels(), (std::vector<std::int64_t>{1, 2, 6, 24}));
  EXPECT_FALSE(audit_tower(tower).has_value());
}

TEST(Tower, PlaneLevels) {
  EXPECT_EQ(build_tower(2, 2).levels(), (std::vector<std::int64_t>{1, 2}));
  const auto& tower = plane_tower();
  EXPECT_EQ(tower.levels(), (std::vector<std::int64_t>{1, 2, 36}));
  EXPECT_EQ(tower.entries[1].triangulation, medial());
  EXPECT_FALSE(audit_tower(tower).has_value());
  ASSERT_EQ(tower.certificates.size(), 2u);
  const auto composed = compose(tower.certificates[1], tower.certificates[0]);
  EXPECT_TRUE(verify_certificate(composed, tower.entries[2].triangulation, tower.entries[0].triangulation));
}

TEST(Tower, DivisibilityLaws) {
  for (const auto* tower : {&plane_tower()}) {
    for (std::size_t i = 0; i < tower->entries.size(); ++i) {
      EXPECT_EQ(Integer(tower->entries[i].level) % factorial(static_cast<std::int64_t>(i + 1)), 0);
      if (i > 0) EXPECT_EQ(tower->entries[i].level % tower->entries[i - 1].level, 0);
    }
  }
}

TEST(Tower, AuditCatchesTampering) {
  auto tower = plane_tower();
  tower.entries[1].triangulation = midpoint_fan();
  EXPECT_TRUE(audit_tower(tower).has_value());
  auto forged = plane_tower();
  forged.certificates[1].map[0] = (forged.certificates[1].map[0] + 1) % 4;
  EXPECT_TRUE(audit_tower(forged).has_value());
}

TEST(Tower, FailuresCarryThePartialTower) {
  try {
    build_tower(3, 2);
    FAIL() << "expected TowerIncomplete";
  } catch (const TowerIncomplete& e) {
    EXPECT_EQ(e.partial().levels(), (std::vector<std::int64_t>{1}));
  }
  try {
    build_tower(2, 4);
    FAIL() << "expected TowerIncomplete";
  } catch (const TowerIncomplete& e) {
    EXPECT_EQ(e.partial().levels(), (std::vector<std::int64_t>{1, 2, 36}));
  }
  EXPECT_THROW(build_tower(2, 0), DomainError);
}

TEST(Tower, FaceCoherence) {
  const auto& top = plane_tower().entries.back();
  const auto edge = face_entry(top, 2);
  EXPECT_EQ(edge.triangulation.cells.size(), 36u);
  for (const auto& face : {FaceSelector{0, 1}, FaceSelector{0, 2}, FaceSelector{1, 2}})
    EXPECT_EQ(restrict_to_face(top.triangulation, face), edge.triangulation);
  EXPECT_EQ(face_entry(top, 1).triangulation.cells.size(), 1u);
  EXPECT_THROW(face_entry(top, 4), DomainError);
}

TEST(Cofinality, EveryLevelTwoTriangulationIsReached) {
  const auto& tower = plane_tower();
  EXPECT_EQ(cofinality_probe(tower, trivial_triangulation(2)).index, 1u);
  EXPECT_EQ(cofinality_probe(tower, medial()).index, 2u);
  const auto probe = cofinality_probe(tower, midpoint_fan());
  EXPECT_EQ(probe.index, 3u);
  EXPECT_EQ(probe.level, 36);
  EXPECT_TRUE(verify_certificate(probe.certificate, tower.entries[2].triangulation, midpoint_fan()));
}

TEST(Cofinality, Refusals) {
  const auto& tower = plane_tower();
  EXPECT_THROW(cofinality_probe(tower, Triangulation{1, 2, {{0, 1}, {1, 2}}}), DomainError);
  EXPECT_THROW(cofinality_probe(tower, Triangulation{2, 2, {{0, 2, 5}}}), DomainError);
  const auto shallow = build_tower(2, 2);
  EXPECT_THROW(cofinality_probe(shallow, midpoint_fan()), BoundError);
}

TEST(Gluing, NodalSegmentSelfGluedBySwap) {
  const auto tower = build_tower(1, 3);
  const std::vector<LocalChart> charts{{7, 2}};
  const std::vector<FaceGluing> gluings{{7, FaceSelector{0, 1}, 7, FaceSelector{0, 1}, Permutation::transposition(2, 0, 1)}};
  const auto g = assemble_global(charts, gluings, {{2, tower.entries.back()}});
  EXPECT_EQ(g.level, 6);
  ASSERT_EQ(g.compatibility.size(), 1u);
  EXPECT_EQ(g.compatibility[0].cells, 6u);
}

TEST(Gluing, TriangleSelfGluedByAThreeCycle) {
  const TowerIndex entry{12, symmetric_unimodular_refinement(2, 2).triangulation};
  const std::vector<LocalChart> charts{{0, 3}};
  const std::vector<FaceGluing> gluings{
      {0, FaceSelector{0, 1, 2}, 0, FaceSelector{0, 1, 2}, Permutation::cycle(3, {0, 1, 2})}};
  EXPECT_NO_THROW(assemble_global(charts, gluings, {{3, entry}}));
  try {
    assemble_global(charts, gluings, {{3, TowerIndex{2, midpoint_fan()}}});
    FAIL() << "expected CompatibilityError";
  } catch (const CompatibilityError& e) {
    ASSERT_TRUE(e.witness().gluing.has_value());
    EXPECT_EQ(*e.witness().gluing, 0u);
    EXPECT_EQ(e.witness().cell.size(), 3u);
  }
}

TEST(Gluing, MixedRanksAndLeastFailingGluing) {
  const auto& top = plane_tower().entries.back();
  const std::vector<LocalChart> charts{{0, 3}, {1, 2}, {2, 3}};
  const std::vector<FaceGluing> gluings{
      {0, FaceSelector{1, 2}, 1, FaceSelector{0, 1}, Permutation::transposition(2, 0, 1)},
      {0, FaceSelector{0, 1, 2}, 2, FaceSelector{0, 1, 2}, Permutation::transposition(3, 0, 2)},
      {2, FaceSelector{0}, 1, FaceSelector{1}, Permutation::identity(1)}};
  const auto g = assemble_global(charts, gluings, {{3, top}, {2, face_entry(top, 2)}});
  EXPECT_EQ(g.compatibility.size(), 3u);
  // a non-invariant rank-3 triangulation passes the edge gluing and breaks
  // the full-face gluing, reported even though a later one fails too
  std::vector<FaceGluing> twice = gluings;
  twice.push_back(twice[1]);
  try {
    assemble_global(charts, twice, {{3, TowerIndex{2, midpoint_fan()}}, {2, face_entry({2, midpoint_fan()}, 2)}});
    FAIL() << "expected CompatibilityError";
  } catch (const CompatibilityError& e) {
    EXPECT_EQ(*e.witness().gluing, 1u);
  }
}

TEST(Gluing, MalformedConfigurations) {
  const auto& top = plane_tower().entries.back();
  const std::map<int, TowerIndex> entries{{3, top}};
  EXPECT_THROW(assemble_global({{0, 3}}, {{0, FaceSelector{0, 1}, 5, FaceSelector{0, 1}, Permutation::identity(2)}},
                               entries),
               DomainError);
  EXPECT_THROW(assemble_global({{0, 3}}, {{0, FaceSelector{0, 1}, 0, FaceSelector{0, 1, 2}, Permutation::identity(2)}},
                               entries),
               DomainError);
  EXPECT_THROW(assemble_global({{0, 2}}, {}, entries), DomainError);
  EXPECT_THROW(assemble_global({{0, 3}, {0, 3}}, {}, entries), DomainError);
  EXPECT_THROW(assemble_global({{0, 3}}, {}, {{3, top}, {2, TowerIndex{2, Triangulation{1, 2, {{0, 1}, {1, 2}}}}}}),
               DomainError);
}
