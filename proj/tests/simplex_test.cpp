#include "stackyfan/error.hpp"
#include "stackyfan/integer.hpp"
#include "stackyfan/simplex.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace stackyfan;

TEST(LatticePoints, CountIsBinomial) {
  for (int r = 0; r <= 3; ++r)
    for (int n = 1; n <= 6; ++n) {
      const DilatedSimplex s{r, n};
      EXPECT_EQ(lattice_point_count(s), static_cast<std::size_t>(binomial(n + r, r)));
      EXPECT_EQ(lattice_points(s).size(), lattice_point_count(s));
    }
}

TEST(LatticePoints, LexicographicAndIndexed) {
  const DilatedSimplex s{2, 3};
  const auto pts = lattice_points(s);
  EXPECT_TRUE(std::is_sorted(pts.begin(), pts.end()));
  for (std::size_t i = 0; i < pts.size(); ++i) {
    EXPECT_EQ(pts[i].level(), 3);
    EXPECT_EQ(point_index(s, pts[i]), i);
  }
  EXPECT_THROW(point_index(s, SimplexPoint{{1, 1, 0}}), DomainError);
}

TEST(InteriorPoints, SegmentAndTriangle) {
  EXPECT_EQ(interior_points({1, 5}).size(), 4u);
  EXPECT_EQ(interior_points({1, 1}).size(), 0u);
  EXPECT_EQ(interior_points({2, 3}).size(), 1u);
  EXPECT_EQ(interior_points({2, 2}).size(), 0u);
  EXPECT_EQ(interior_points({3, 4}).size(), 1u);
}

TEST(FaceSelector, RejectsEmptyAndRepeatedSupports) {
  EXPECT_THROW(FaceSelector(std::vector<int>{}), DomainError);
  EXPECT_THROW(FaceSelector({0, 0}), DomainError);
  const FaceSelector f{2, 0};
  EXPECT_EQ(f.support, (std::vector<int>{0, 2}));
  EXPECT_TRUE(f.contains(SimplexPoint{{1, 0, 1}}));
  EXPECT_FALSE(f.contains(SimplexPoint{{1, 1, 0}}));
  EXPECT_EQ(restrict_point(SimplexPoint{{1, 0, 1}}, f).coords, (std::vector<std::int64_t>{1, 1}));
}

TEST(Permutation, GroupLaws) {
  const auto all = all_permutations(4);
  EXPECT_EQ(all.size(), 24u);
  EXPECT_EQ(std::set<Permutation>(all.begin(), all.end()).size(), 24u);
  for (const auto& g : all) {
    EXPECT_TRUE((g * g.inverse()).is_identity());
    for (const auto& h : symmetric_group_generators(4)) EXPECT_EQ((g * h).inverse(), h.inverse() * g.inverse());
  }
  const auto c = Permutation::cycle(3, {0, 1, 2});
  EXPECT_EQ(c(0), 1);
  EXPECT_EQ(c(2), 0);
  EXPECT_THROW(Permutation(std::vector<int>{0, 0}), DomainError);
}

TEST(Permutation, ActsOnPoints) {
  const auto swap = Permutation::transposition(3, 0, 2);
  EXPECT_EQ(apply_symmetry(swap, SimplexPoint{{3, 1, 0}}).coords, (std::vector<std::int64_t>{0, 1, 3}));
  const auto c = Permutation::cycle(3, {0, 1, 2});
  // position i moves to c(i)
  EXPECT_EQ(apply_symmetry(c, SimplexPoint{{2, 1, 0}}).coords, (std::vector<std::int64_t>{0, 2, 1}));
  EXPECT_THROW(apply_symmetry(c, SimplexPoint{{1, 1}}), DomainError);
}
