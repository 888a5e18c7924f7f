#pragma once

#include "stackyfan/triangulation.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace stackyfan {

struct RenderOptions {
  double width = 480;
  double height = 440;
  /// Cells (indices into the normalized cell list) to fill.
  std::vector<std::size_t> highlight;
};

/// Static SVG of a triangulation with r <= 2: lattice points as dots and
/// cell edges as lines, in a fixed equilateral embedding. DomainError for
/// r >= 3.
std::string render_svg(const Triangulation& t, const RenderOptions& options = {});

}  // namespace stackyfan
