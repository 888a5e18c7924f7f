#include "stackyfan/error.hpp"
#include "stackyfan/mckay.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

using namespace stackyfan;
using stackyfan::testing::kernel_order;
using stackyfan::testing::medial;

TEST(GroupOrder, MatchesTheBruteForceKernel) {
  for (int r = 0; r <= 3; ++r)
    for (int n = 1; n <= 6; ++n) EXPECT_EQ(group_order({r, n}), kernel_order(r, n)) << r << " " << n;
  EXPECT_EQ(group_order({1, 4}), 4);
  EXPECT_EQ(group_order({2, 3}), 9);
  EXPECT_THROW(group_order({1, 0}), DomainError);
}

TEST(StackyOrder, ModelLatticeMapHasTheGroupAsCokernel) {
  for (int r = 0; r <= 3; ++r)
    for (int n = 1; n <= 5; ++n) {
      const auto g = stacky_group_invariants(model_lattice_map({r, n}));
      EXPECT_EQ(g.order, group_order({r, n}));
    }
}

TEST(McKayCheck, Examples) {
  const auto medial_report = mckay_check({2, 2}, medial());
  EXPECT_TRUE(medial_report.verdict);
  EXPECT_EQ(medial_report.resolution_rank, 4);
  EXPECT_EQ(medial_report.group_order, 4);
  EXPECT_EQ(medial_report.stacky_order, 4);
  EXPECT_TRUE(medial_report.reason.empty());
  const auto segment = mckay_check({1, 3}, Triangulation{1, 3, {{0, 1}, {1, 2}, {2, 3}}});
  EXPECT_TRUE(segment.verdict);
  EXPECT_EQ(segment.resolution_rank, 3);
  for (int r = 0; r <= 3; ++r) EXPECT_TRUE(mckay_check({r, 1}, trivial_triangulation(r)).verdict);
}

TEST(McKayCheck, NonUnimodularInputIsRejectedWithAReason) {
  const auto report = mckay_check({2, 2}, Triangulation{2, 2, {{0, 2, 5}}});
  EXPECT_FALSE(report.verdict);
  EXPECT_EQ(report.reason, "not unimodular");
  const auto invalid = mckay_check({2, 2}, Triangulation{2, 2, {{0, 1, 3}}});
  EXPECT_FALSE(invalid.verdict);
  EXPECT_NE(invalid.reason.find("invalid"), std::string::npos);
  EXPECT_THROW(mckay_check({2, 3}, medial()), DomainError);
}

TEST(ExceptionalChain, InteriorPointsOfTheSegment) {
  EXPECT_EQ(exceptional_chain(1), 0);
  EXPECT_EQ(exceptional_chain(2), 1);
  EXPECT_EQ(exceptional_chain(5), 4);
  EXPECT_THROW(exceptional_chain(0), DomainError);
}

TEST(AnModel, ResolutionOfTheSurfaceSingularity) {
  const auto trivial = an_model(1);
  // equal up to ray order
  EXPECT_EQ(trivial.resolution.max_cones.size(), 1u);
  EXPECT_TRUE(subdivides(trivial.resolution, trivial.singular));
  EXPECT_TRUE(subdivides(trivial.singular, trivial.resolution));
  EXPECT_TRUE(is_smooth(trivial.singular).smooth);
  for (int n = 2; n <= 8; ++n) {
    const auto m = an_model(n);
    EXPECT_FALSE(is_smooth(m.singular).smooth);
    EXPECT_TRUE(is_smooth(m.resolution).smooth);
    EXPECT_TRUE(is_crepant(m.resolution, m.singular));
    EXPECT_EQ(m.resolution.max_cones.size(), static_cast<std::size_t>(n));
    EXPECT_EQ(m.chain, n - 1);
    EXPECT_EQ(static_cast<std::int64_t>(m.resolution.rays.size()) - 2, m.chain);
  }
}
