#include "stackyfan/polytope.hpp"

#include "stackyfan/error.hpp"

#include <algorithm>
#include <set>

namespace stackyfan {

namespace {

Rational qdot(const QPoint& a, const QPoint& b) { return linalg::dot(a, b); }

QPoint to_q(const std::vector<std::int64_t>& p) {
  QPoint out;
  out.reserve(p.size());
  for (auto x : p) out.emplace_back(x);
  return out;
}

std::vector<std::int64_t> to_lattice(const QPoint& p) {
  std::vector<std::int64_t> out;
  out.reserve(p.size());
  for (const auto& x : p) {
    if (denominator(x) != 1) throw DomainError("pulling triangulation needs integral vertices");
    out.push_back(to_int64(numerator(x)));
  }
  return out;
}

Integer floor_of(const Rational& q) {
  Integer f = numerator(q) / denominator(q);
  if (numerator(q) < 0 && f * denominator(q) != numerator(q)) f -= 1;
  return f;
}

Integer ceil_of(const Rational& q) {
  Integer c = numerator(q) / denominator(q);
  if (numerator(q) > 0 && c * denominator(q) != numerator(q)) c += 1;
  return c;
}

// Points of `pts` on which h is tight.
std::vector<QPoint> tight(const std::vector<QPoint>& pts, const Halfspace& h) {
  std::vector<QPoint> out;
  for (const auto& p : pts)
    if (h.slack(p) == 0) out.push_back(p);
  return out;
}

// Recursive pulling over the face lattice. `points` are sorted by pulling
// order; faces of the current face are cut out by the ambient facet list.
std::vector<std::vector<QPoint>> pull_faces(const std::vector<QPoint>& points, int dim,
                                            const std::vector<Halfspace>& facets,
                                            std::map<std::vector<QPoint>, std::vector<std::vector<QPoint>>>& memo) {
  if (dim == 0) return {{points.front()}};
  if (auto it = memo.find(points); it != memo.end()) return it->second;
  const QPoint& apex = points.front();
  std::set<std::vector<QPoint>> seen;
  std::vector<std::vector<QPoint>> out;
  for (const auto& h : facets) {
    if (h.slack(apex) == 0) continue;
    auto face = tight(points, h);
    if (face.empty() || face.size() == points.size()) continue;
    if (linalg::affine_rank(face) != dim - 1) continue;
    if (!seen.insert(face).second) continue;
    for (auto& s : pull_faces(face, dim - 1, facets, memo)) {
      s.insert(s.begin(), apex);
      out.push_back(std::move(s));
    }
  }
  memo.emplace(points, out);
  return out;
}

}  // namespace

Rational RationalHyperplane::evaluate(const QPoint& x) const {
  Rational s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) s += Rational(normal[i]) * x[i];
  return s;
}

RationalHyperplane RationalHyperplane::scaled(const Rational& f) const { return {normal, offset * f}; }

bool operator<(const RationalHyperplane& a, const RationalHyperplane& b) {
  if (a.normal != b.normal) return a.normal < b.normal;
  return a.offset < b.offset;
}

RationalHyperplane make_hyperplane(const std::vector<Integer>& a, const Rational& c, const Rational& level) {
  const auto d = static_cast<std::int64_t>(a.size());
  Integer total = 0;
  for (const auto& x : a) total += x;
  // Adding multiples of (1, ..., 1) does not change the hyperplane on sum = level.
  std::vector<Integer> normal;
  for (const auto& x : a) normal.push_back(d * x - total);
  Rational offset = Rational(d) * c - Rational(total) * level;
  Integer g = 0;
  for (const auto& x : normal) g = gcd(g, x);
  if (g == 0) throw DomainError("make_hyperplane: normal is constant on the simplex");
  for (auto& x : normal) x /= g;
  offset /= Rational(g);
  const auto lead = std::find_if(normal.begin(), normal.end(), [](const Integer& x) { return x != 0; });
  if (*lead < 0) {
    for (auto& x : normal) x = -x;
    offset = -offset;
  }
  return {IntVector(std::move(normal)), offset};
}

Rational Halfspace::slack(const QPoint& x) const { return qdot(normal, x) - offset; }

RationalPolytope RationalPolytope::simplex(int r, const Rational& level) {
  if (r < 0 || level <= 0) throw DomainError("simplex needs r >= 0 and a positive level");
  auto p = from_halfspaces(r, level, {});
  return std::move(*p);
}

std::optional<RationalPolytope> RationalPolytope::from_halfspaces(int r, const Rational& level,
                                                                  std::vector<Halfspace> extra) {
  if (r < 0) throw DomainError("polytope dimension must be nonnegative");
  const std::size_t k = static_cast<std::size_t>(r + 1);
  std::vector<Halfspace> constraints;
  for (std::size_t i = 0; i < k; ++i) {
    QPoint e(k, Rational(0));
    e[i] = 1;
    constraints.push_back(Halfspace{e, 0});
  }
  for (auto& h : extra) {
    if (h.normal.size() != k) throw DomainError("halfspace dimension mismatch");
    constraints.push_back(std::move(h));
  }
  return build(r, level, std::move(constraints));
}

RationalPolytope RationalPolytope::simplex_hull(int r, const Rational& level, std::vector<QPoint> vertices) {
  const std::size_t k = static_cast<std::size_t>(r + 1);
  if (r < 0 || vertices.size() != k) throw DomainError("simplex_hull needs r + 1 vertices");
  for (const auto& v : vertices) {
    Rational s = 0;
    for (const auto& x : v) s += x;
    if (v.size() != k || s != level) throw DomainError("simplex_hull: vertex off the level hyperplane");
  }
  if (linalg::affine_rank(vertices) != r) throw DomainError("simplex_hull: vertices are affinely dependent");
  std::vector<Halfspace> facets;
  for (std::size_t omit = 0; omit < k && r > 0; ++omit) {
    // Normal orthogonal to the facet's edge vectors and to (1, ..., 1).
    linalg::QMatrix rows;
    const QPoint* base = nullptr;
    for (std::size_t j = 0; j < k; ++j) {
      if (j == omit) continue;
      if (!base) {
        base = &vertices[j];
        continue;
      }
      QPoint d(k);
      for (std::size_t c = 0; c < k; ++c) d[c] = vertices[j][c] - (*base)[c];
      rows.push_back(std::move(d));
    }
    rows.emplace_back(k, Rational(1));
    QPoint normal = linalg::nullspace(rows, k).front();
    Rational offset = qdot(normal, *base);
    if (qdot(normal, vertices[omit]) < offset) {
      for (auto& x : normal) x = -x;
      offset = -offset;
    }
    facets.push_back({std::move(normal), offset});
  }
  std::sort(vertices.begin(), vertices.end());
  return RationalPolytope(r, level, std::move(facets), std::move(vertices));
}

std::optional<RationalPolytope> RationalPolytope::build(int r, const Rational& level,
                                                        std::vector<Halfspace> constraints) {
  const std::size_t k = static_cast<std::size_t>(r + 1);
  if (r == 0) {
    for (const auto& c : constraints)
      if (c.slack(QPoint{level}) < 0) return std::nullopt;
    return RationalPolytope(0, level, {}, {QPoint{level}});
  }

  // Vertices: r tight constraints plus the level equation.
  std::set<QPoint> verts;
  const std::size_t m = constraints.size();
  std::vector<std::size_t> pick;
  auto rec = [&](auto&& self, std::size_t start) -> void {
    if (pick.size() == static_cast<std::size_t>(r)) {
      linalg::QMatrix a;
      linalg::QVector b;
      for (auto i : pick) {
        a.push_back(constraints[i].normal);
        b.push_back(constraints[i].offset);
      }
      a.emplace_back(k, Rational(1));
      b.push_back(level);
      auto x = linalg::solve(std::move(a), std::move(b));
      if (!x) return;
      for (const auto& c : constraints)
        if (c.slack(*x) < 0) return;
      verts.insert(std::move(*x));
      return;
    }
    for (std::size_t i = start; i + (static_cast<std::size_t>(r) - pick.size()) <= m; ++i) {
      pick.push_back(i);
      self(self, i + 1);
      pick.pop_back();
    }
  };
  rec(rec, 0);
  std::vector<QPoint> vertices(verts.begin(), verts.end());
  if (linalg::affine_rank(vertices) != r) return std::nullopt;

  std::vector<Halfspace> facets;
  std::set<std::vector<QPoint>> facet_sets;
  for (auto& c : constraints) {
    auto on = tight(vertices, c);
    if (linalg::affine_rank(on) != r - 1) continue;
    if (!facet_sets.insert(on).second) continue;
    facets.push_back(std::move(c));
  }
  return RationalPolytope(r, level, std::move(facets), std::move(vertices));
}

bool RationalPolytope::contains(const QPoint& x) const {
  if (x.size() != static_cast<std::size_t>(r_ + 1)) return false;
  Rational s = 0;
  for (const auto& v : x) s += v;
  if (s != level_) return false;
  return std::all_of(facets_.begin(), facets_.end(), [&](const Halfspace& h) { return h.slack(x) >= 0; });
}

QPoint RationalPolytope::centroid() const {
  QPoint c(static_cast<std::size_t>(r_ + 1), Rational(0));
  for (const auto& v : vertices_)
    for (std::size_t i = 0; i < c.size(); ++i) c[i] += v[i];
  for (auto& x : c) x /= Rational(static_cast<std::int64_t>(vertices_.size()));
  return c;
}

Rational RationalPolytope::volume() const {
  if (r_ == 0) return 1;
  std::map<std::vector<QPoint>, std::vector<std::vector<QPoint>>> memo;
  Rational total = 0;
  for (const auto& s : pull_faces(vertices_, r_, facets_, memo)) {
    linalg::QMatrix m(static_cast<std::size_t>(r_), linalg::QVector(static_cast<std::size_t>(r_)));
    for (int i = 0; i < r_; ++i)
      for (int j = 0; j < r_; ++j)
        m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
            s[static_cast<std::size_t>(i + 1)][static_cast<std::size_t>(j)] - s[0][static_cast<std::size_t>(j)];
    // Determinant via elimination over Q.
    Rational det = 1;
    for (std::size_t c = 0; c < m.size(); ++c) {
      std::size_t p = c;
      while (p < m.size() && m[p][c] == 0) ++p;
      if (p == m.size()) {
        det = 0;
        break;
      }
      if (p != c) {
        std::swap(m[p], m[c]);
        det = -det;
      }
      det *= m[c][c];
      for (std::size_t i = c + 1; i < m.size(); ++i) {
        const Rational f = m[i][c] / m[c][c];
        for (std::size_t j = c; j < m.size(); ++j) m[i][j] -= f * m[c][j];
      }
    }
    total += det < 0 ? Rational(-det) : det;
  }
  return total;
}

Integer RationalPolytope::vertex_denominator() const {
  Integer d = 1;
  for (const auto& v : vertices_)
    for (const auto& x : v) d = lcm(d, denominator(x));
  return d;
}

std::optional<std::pair<RationalPolytope, RationalPolytope>> RationalPolytope::split(
    const RationalHyperplane& h) const {
  bool above = false;
  bool below = false;
  for (const auto& v : vertices_) {
    const Rational s = h.evaluate(v) - h.offset;
    above = above || s > 0;
    below = below || s < 0;
  }
  if (!above || !below) return std::nullopt;
  QPoint n;
  for (const auto& x : h.normal) n.emplace_back(x);
  QPoint neg;
  for (const auto& x : n) neg.push_back(-x);
  auto side = [&](Halfspace extra) {
    std::vector<Halfspace> cs = facets_;
    cs.push_back(std::move(extra));
    auto p = build(r_, level_, std::move(cs));
    if (!p) throw Error("split produced a degenerate side");
    return std::move(*p);
  };
  return std::pair{side(Halfspace{n, h.offset}), side(Halfspace{neg, -h.offset})};
}

std::vector<std::vector<std::int64_t>> RationalPolytope::lattice_points() const {
  std::vector<std::vector<std::int64_t>> out;
  if (denominator(level_) != 1) return out;
  const std::int64_t level = to_int64(numerator(level_));
  const std::size_t k = static_cast<std::size_t>(r_ + 1);
  std::vector<std::int64_t> lo(k), hi(k);
  for (std::size_t i = 0; i < k; ++i) {
    Rational mn = vertices_.front()[i];
    Rational mx = mn;
    for (const auto& v : vertices_) {
      mn = std::min(mn, v[i]);
      mx = std::max(mx, v[i]);
    }
    lo[i] = to_int64(ceil_of(mn));
    hi[i] = to_int64(floor_of(mx));
  }
  std::vector<std::int64_t> cur(k, 0);
  auto rec = [&](auto&& self, std::size_t i, std::int64_t left) -> void {
    if (i + 1 == k) {
      if (left < lo[i] || left > hi[i]) return;
      cur[i] = left;
      if (contains(to_q(cur))) out.push_back(cur);
      return;
    }
    for (std::int64_t x = lo[i]; x <= std::min(hi[i], left); ++x) {
      cur[i] = x;
      self(self, i + 1, left - x);
    }
  };
  rec(rec, 0, level);
  return out;
}

std::vector<std::vector<PullingTriangulator::Point>> PullingTriangulator::triangulate(const RationalPolytope& cell) {
  for (const auto& v : cell.vertices()) (void)to_lattice(v);
  auto pts = cell.lattice_points();
  std::stable_sort(pts.begin(), pts.end(), before_);
  std::vector<QPoint> q;
  q.reserve(pts.size());
  for (const auto& p : pts) q.push_back(to_q(p));
  std::vector<std::vector<Point>> out;
  for (const auto& s : pull_faces(q, cell.r(), cell.facets(), memo_)) {
    std::vector<Point> simplex;
    for (const auto& p : s) simplex.push_back(to_lattice(p));
    out.push_back(std::move(simplex));
  }
  return out;
}

std::size_t stellar_subdivide(std::vector<std::vector<std::vector<std::int64_t>>>& simplices,
                              const std::vector<std::int64_t>& p) {
  const QPoint q = to_q(p);
  std::vector<std::vector<std::vector<std::int64_t>>> out;
  std::size_t replaced = 0;
  for (auto& s : simplices) {
    const std::size_t k = s.size();
    bool maybe = true;
    for (std::size_t j = 0; j < p.size() && maybe; ++j) {
      std::int64_t lo = s[0][j];
      std::int64_t hi = s[0][j];
      for (const auto& v : s) {
        lo = std::min(lo, v[j]);
        hi = std::max(hi, v[j]);
      }
      maybe = lo <= p[j] && p[j] <= hi;
    }
    std::optional<QPoint> lambda;
    if (maybe) {
      // Barycentric coordinates: the vertices are linearly independent
      // because they all lie on one level hyperplane.
      linalg::QMatrix a(p.size(), linalg::QVector(k));
      for (std::size_t j = 0; j < p.size(); ++j)
        for (std::size_t v = 0; v < k; ++v) a[j][v] = Rational(s[v][j]);
      // Keep k independent rows (coordinates) for a square system.
      linalg::QMatrix sq;
      linalg::QVector rhs;
      for (std::size_t j = 0; j < p.size() && sq.size() < k; ++j) {
        sq.push_back(a[j]);
        rhs.push_back(q[j]);
        if (linalg::rank(sq) < sq.size()) {
          sq.pop_back();
          rhs.pop_back();
        }
      }
      if (sq.size() == k) lambda = linalg::solve(sq, rhs);
      if (lambda) {
        for (std::size_t j = 0; j < p.size() && lambda; ++j)
          if (linalg::dot(a[j], *lambda) != q[j]) lambda.reset();
      }
      if (lambda && std::any_of(lambda->begin(), lambda->end(), [](const Rational& x) { return x < 0; }))
        lambda.reset();
    }
    if (!lambda) {
      out.push_back(std::move(s));
      continue;
    }
    ++replaced;
    for (std::size_t v = 0; v < k; ++v) {
      if ((*lambda)[v] == 0) continue;
      auto t = s;
      t[v] = p;
      out.push_back(std::move(t));
    }
  }
  simplices = std::move(out);
  return replaced;
}

}  // namespace stackyfan
