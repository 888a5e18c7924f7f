#include "stackyfan/render.hpp"

#include "stackyfan/error.hpp"

#include <cmath>
#include <cstdio>
#include <set>
#include <utility>

namespace stackyfan {

namespace {

struct Xy {
  double x, y;
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

}  // namespace

std::string render_svg(const Triangulation& t, const RenderOptions& options) {
  if (t.r > 2) throw DomainError("render: only r <= 2 can be drawn, got r = " + std::to_string(t.r));
  Triangulation sorted = t;
  sorted.normalize();
  const double margin = 20;
  const double w = options.width - 2 * margin;
  const double h = options.height - 2 * margin;
  // Corners of the simplex; vertex i of Delta^r sits at corner i.
  std::vector<Xy> corners;
  if (t.r == 0) {
    corners = {{options.width / 2, options.height / 2}};
  } else if (t.r == 1) {
    corners = {{margin, options.height / 2}, {margin + w, options.height / 2}};
  } else {
    const double side = std::min(w, h * 2 / std::sqrt(3.0));
    const double x0 = (options.width - side) / 2;
    const double y0 = (options.height + side * std::sqrt(3.0) / 2) / 2;
    corners = {{x0, y0}, {x0 + side, y0}, {x0 + side / 2, y0 - side * std::sqrt(3.0) / 2}};
  }
  const auto pts = lattice_points(t.simplex());
  std::vector<Xy> xy;
  for (const auto& p : pts) {
    Xy q{0, 0};
    for (std::size_t i = 0; i < p.coords.size(); ++i) {
      const double l = static_cast<double>(p.coords[i]) / static_cast<double>(t.n);
      q.x += l * corners[i].x;
      q.y += l * corners[i].y;
    }
    xy.push_back(q);
  }
  for (const auto& c : sorted.cells)
    for (int i : c)
      if (i < 0 || static_cast<std::size_t>(i) >= pts.size()) throw DomainError("render: cell references a missing point");

  std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(options.width) + "\" height=\"" +
                    fmt(options.height) + "\" viewBox=\"0 0 " + fmt(options.width) + " " + fmt(options.height) +
                    "\">\n";
  svg += "<title>" + std::to_string(sorted.cells.size()) + " cells of " + std::to_string(t.n) + " Delta^" +
         std::to_string(t.r) + "</title>\n";
  const std::set<std::size_t> highlight(options.highlight.begin(), options.highlight.end());
  for (std::size_t c = 0; c < sorted.cells.size(); ++c) {
    if (!highlight.count(c) || t.r != 2) continue;
    svg += "<polygon class=\"highlight\" fill=\"#f6c85f\" points=\"";
    for (std::size_t k = 0; k < 3; ++k) {
      const auto& q = xy[static_cast<std::size_t>(sorted.cells[c][k])];
      svg += (k ? " " : "") + fmt(q.x) + "," + fmt(q.y);
    }
    svg += "\"/>\n";
  }
  std::set<std::pair<int, int>> edges;
  for (const auto& c : sorted.cells)
    for (std::size_t a = 0; a < c.size(); ++a)
      for (std::size_t b = a + 1; b < c.size(); ++b) edges.emplace(c[a], c[b]);
  for (const auto& [a, b] : edges) {
    const auto& p = xy[static_cast<std::size_t>(a)];
    const auto& q = xy[static_cast<std::size_t>(b)];
    svg += "<line class=\"edge\" x1=\"" + fmt(p.x) + "\" y1=\"" + fmt(p.y) + "\" x2=\"" + fmt(q.x) + "\" y2=\"" +
           fmt(q.y) + "\" stroke=\"#333\" stroke-width=\"1\"/>\n";
  }
  const double radius = std::max(1.0, std::min(4.0, 120.0 / static_cast<double>(t.n + 1)));
  for (const auto& q : xy)
    svg += "<circle class=\"point\" cx=\"" + fmt(q.x) + "\" cy=\"" + fmt(q.y) + "\" r=\"" + fmt(radius) +
           "\" fill=\"#1f4e79\"/>\n";
  return svg + "</svg>\n";
}

}  // namespace stackyfan
