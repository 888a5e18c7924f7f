#include "stackyfan/error.hpp"
#include "stackyfan/render.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

using namespace stackyfan;

namespace {

std::size_t occurrences(const std::string& text, const std::string& needle) {
  std::size_t count = 0;
  for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++count;
  return count;
}

}  // namespace

TEST(Render, MedialHasSixDotsAndNineEdges) {
  const auto svg = render_svg(stackyfan::testing::medial());
  EXPECT_EQ(occurrences(svg, "<circle"), 6u);
  EXPECT_EQ(occurrences(svg, "<line"), 9u);
  EXPECT_EQ(svg.rfind("<svg", 0), 0u);
}

TEST(Render, TrivialTriangle) {
  const auto svg = render_svg(trivial_triangulation(2));
  EXPECT_EQ(occurrences(svg, "<circle"), 3u);
  EXPECT_EQ(occurrences(svg, "<line"), 3u);
}

TEST(Render, SegmentAndPoint) {
  const auto seg = render_svg(Triangulation{1, 3, {{0, 1}, {1, 2}, {2, 3}}});
  EXPECT_EQ(occurrences(seg, "<circle"), 4u);
  EXPECT_EQ(occurrences(seg, "<line"), 3u);
  EXPECT_EQ(occurrences(render_svg(trivial_triangulation(0)), "<circle"), 1u);
}

TEST(Render, DeterministicWithHighlights) {
  RenderOptions options;
  options.highlight = {0, 2};
  const auto a = render_svg(stackyfan::testing::midpoint_fan(), options);
  EXPECT_EQ(a, render_svg(stackyfan::testing::midpoint_fan(), options));
  EXPECT_EQ(occurrences(a, "<polygon"), 2u);
}

TEST(Render, RefusesThreeDimensions) { EXPECT_THROW(render_svg(trivial_triangulation(3)), DomainError); }
