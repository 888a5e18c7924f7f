#include "stackyfan/fan.hpp"

#include "lattice_geometry.hpp"
#include "stackyfan/error.hpp"
#include "stackyfan/symmetric_refinement.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace stackyfan {

namespace {

linalg::QVector to_q(const IntVector& v) {
  linalg::QVector out;
  for (const auto& x : v) out.emplace_back(x);
  return out;
}

// Coefficients of v in the basis given by the generators (columns of G^T).
std::optional<linalg::QVector> cone_coefficients(const std::vector<IntVector>& gens, const IntVector& v) {
  const std::size_t k = gens.size();
  linalg::QMatrix a(v.size(), linalg::QVector(k));
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = 0; j < k; ++j) a[i][j] = Rational(gens[j][i]);
  if (k != v.size()) return std::nullopt;
  return linalg::solve(std::move(a), to_q(v));
}

bool nonnegative(const linalg::QVector& c) {
  return std::all_of(c.begin(), c.end(), [](const Rational& x) { return x >= 0; });
}

void require_simplicial(const Fan& f) {
  for (std::size_t c = 0; c < f.max_cones.size(); ++c) {
    const auto gens = f.generators(c);
    if (gens.size() != f.dim()) throw DomainError("cone " + std::to_string(c) + " is not full-dimensional simplicial");
    if (determinant(IntMatrix::from_rows(gens)) == 0)
      throw DomainError("cone " + std::to_string(c) + " has linearly dependent generators");
  }
}

// Index of the least cone of f containing v, if any.
std::optional<std::size_t> containing_cone(const Fan& f, const IntVector& v) {
  for (std::size_t c = 0; c < f.max_cones.size(); ++c) {
    const auto coeffs = cone_coefficients(f.generators(c), v);
    if (coeffs && nonnegative(*coeffs)) return c;
  }
  return std::nullopt;
}

// The linear functional equal to 1 on the generators of a simplicial cone.
linalg::QVector height_functional(const std::vector<IntVector>& gens) {
  linalg::QMatrix a;
  for (const auto& g : gens) a.push_back(to_q(g));
  const std::size_t d = gens.size();
  return *linalg::solve(std::move(a), linalg::QVector(d, Rational(1)));
}

// Slices of the cones by { sum = 1 }, scaled to a common integral level.
struct IntegralSlices {
  std::int64_t level = 1;
  std::vector<detail::Coords> points;
  std::vector<std::vector<int>> cells;
};

IntegralSlices integral_slices(const Fan& f) {
  std::vector<linalg::QVector> scaled;
  for (const auto& ray : f.rays) {
    const Integer s = ray.sum();
    if (s <= 0) throw DomainError("fan support leaves the half-space sum > 0");
    linalg::QVector p;
    for (const auto& x : ray) p.push_back(Rational(x) / Rational(s));
    scaled.push_back(std::move(p));
  }
  Integer den = 1;
  for (const auto& p : scaled)
    for (const auto& x : p) den = lcm(den, denominator(x));
  IntegralSlices out;
  out.level = to_int64(den);
  for (const auto& p : scaled) {
    detail::Coords c;
    for (const auto& x : p) c.push_back(to_int64(numerator(x * den)));
    out.points.push_back(std::move(c));
  }
  for (const auto& cone : f.max_cones) {
    std::vector<int> c;
    for (auto i : cone) c.push_back(static_cast<int>(i));
    out.cells.push_back(std::move(c));
  }
  return out;
}

// Sum of slice volumes relative to the common level `level`; zero when some
// cone is degenerate.
Rational slice_volume(const IntegralSlices& s, std::size_t r, std::vector<std::vector<const detail::Coords*>>* cells) {
  Rational total = 0;
  const Rational scale(power(Integer(s.level), static_cast<unsigned>(r)));
  for (const auto& c : s.cells) {
    std::vector<const detail::Coords*> pts;
    for (int i : c) pts.push_back(&s.points[static_cast<std::size_t>(i)]);
    const Integer v = abs(detail::simplex_volume<Integer>(pts));
    if (v == 0) return 0;
    total += Rational(v) / scale;
    if (cells) cells->push_back(std::move(pts));
  }
  return total;
}

}  // namespace

std::vector<IntVector> Fan::generators(std::size_t cone) const {
  std::vector<IntVector> out;
  for (auto i : max_cones.at(cone)) {
    if (i >= rays.size()) throw DomainError("cone references a missing ray");
    out.push_back(rays[i]);
  }
  return out;
}

Fan& Fan::normalize() {
  for (auto& c : max_cones) std::sort(c.begin(), c.end());
  std::sort(max_cones.begin(), max_cones.end());
  return *this;
}

Fan orthant_fan(int r, std::int64_t n) {
  if (r < 0 || n < 1) throw DomainError("orthant_fan needs r >= 0 and n >= 1");
  const auto d = static_cast<std::size_t>(r + 1);
  Fan f{CongruenceLattice{d, Integer(n)}, {}, {{}}};
  for (std::size_t i = 0; i < d; ++i) {
    // n e_i is the first multiple of e_i with coordinate sum divisible by n.
    f.rays.push_back(Integer(n) * IntVector::unit(d, i));
    f.max_cones[0].push_back(i);
  }
  return f;
}

Fan cone_over_triangulation(const Triangulation& t) {
  const auto report = validate(t);
  if (!report.valid())
    throw DomainError("cone_over_triangulation: invalid triangulation (" + to_string(report.violations.front().kind) +
                      ")");
  const auto pts = lattice_points(t.simplex());
  std::set<int> used;
  for (const auto& c : t.cells) used.insert(c.begin(), c.end());
  std::map<int, std::size_t> ray_of;
  Fan f{CongruenceLattice{static_cast<std::size_t>(t.r + 1), Integer(t.n)}, {}, {}};
  for (int i : used) {
    ray_of[i] = f.rays.size();
    std::vector<Integer> v;
    for (auto x : pts[static_cast<std::size_t>(i)].coords) v.emplace_back(x);
    f.rays.emplace_back(std::move(v));
  }
  for (const auto& c : t.cells) {
    std::vector<std::size_t> cone;
    for (int i : c) cone.push_back(ray_of[i]);
    f.max_cones.push_back(std::move(cone));
  }
  return f.normalize();
}

SmoothnessReport is_smooth(const Fan& f) {
  require_simplicial(f);
  const BasisLattice basis = to_basis(Lattice{f.lattice});
  SmoothnessReport report{true, {}};
  for (std::size_t c = 0; c < f.max_cones.size(); ++c) {
    const auto coords = coordinates_in(IntMatrix::from_rows(f.generators(c)), basis);
    if (!coords) throw DomainError("cone " + std::to_string(c) + " has a generator outside the lattice");
    ConeWitness w{c, smith_normal_form(*coords).divisors, 1, false};
    for (const auto& d : w.divisors) w.index *= d;
    w.smooth = w.index == 1;
    report.smooth = report.smooth && w.smooth;
    report.cones.push_back(std::move(w));
  }
  return report;
}

bool subdivides(const Fan& sub, const Fan& base) {
  if (sub.dim() != base.dim() || sub.max_cones.empty() || base.max_cones.empty()) return false;
  require_simplicial(base);
  try {
    require_simplicial(sub);
  } catch (const DomainError&) {
    return false;
  }
  for (std::size_t c = 0; c < sub.max_cones.size(); ++c) {
    const auto gens = sub.generators(c);
    bool inside = false;
    for (std::size_t b = 0; b < base.max_cones.size() && !inside; ++b) {
      const auto base_gens = base.generators(b);
      inside = std::all_of(gens.begin(), gens.end(), [&](const IntVector& g) {
        const auto coeffs = cone_coefficients(base_gens, g);
        return coeffs && nonnegative(*coeffs);
      });
    }
    if (!inside) return false;
  }
  const std::size_t r = sub.dim() - 1;
  if (r == 0) return true;
  const auto base_slices = integral_slices(base);
  const auto sub_slices = integral_slices(sub);
  std::vector<std::vector<const detail::Coords*>> cells;
  const Rational covered = slice_volume(sub_slices, r, &cells);
  if (covered == 0 || covered != slice_volume(base_slices, r, nullptr)) return false;
  for (std::size_t i = 0; i < cells.size(); ++i)
    for (std::size_t j = i + 1; j < cells.size(); ++j)
      if (!detail::intersect_properly<Integer>(sub_slices.cells[i], cells[i], sub_slices.cells[j], cells[j]))
        return false;
  return true;
}

bool is_crepant(const Fan& sub, const Fan& base) {
  if (!(sub.lattice == base.lattice)) throw DomainError("is_crepant: fans live in different lattices");
  if (!subdivides(sub, base)) throw DomainError("is_crepant: not a subdivision of the base fan");
  for (const auto& ray : sub.rays) {
    const auto cone = containing_cone(base, ray);
    if (!cone) continue;  // unused ray outside the support
    const Integer k = primitive_scale(ray, sub.lattice);
    IntVector primitive = ray;
    for (std::size_t i = 0; i < primitive.size(); ++i) primitive[i] /= k;
    if (linalg::dot(height_functional(base.generators(*cone)), to_q(primitive)) != 1) return false;
  }
  return true;
}

GroupInvariants stacky_group_invariants(const IntMatrix& f) {
  if (f.rows() == 0 || f.rows() != f.cols()) throw DomainError("lattice map must be square with finite cokernel");
  if (rank(f) != f.rows()) throw DomainError("lattice map is rank deficient");
  GroupInvariants g;
  for (const auto& d : smith_normal_form(f).divisors) {
    if (d >= 2) g.divisors.push_back(d);
    g.order *= d;
  }
  return g;
}

Fan star_subdivision(const Fan& f, const IntVector& rho) {
  if (rho.size() != f.dim()) throw DomainError("star_subdivision: ray has the wrong dimension");
  if (rho.is_zero() || !f.lattice.contains(rho) || !is_primitive(rho, f.lattice))
    throw DomainError("star_subdivision: ray is not primitive in the fan's lattice");
  if (std::find(f.rays.begin(), f.rays.end(), rho) != f.rays.end()) return f;
  require_simplicial(f);
  Fan out{f.lattice, f.rays, {}};
  const std::size_t new_ray = out.rays.size();
  out.rays.push_back(rho);
  bool inside = false;
  for (std::size_t c = 0; c < f.max_cones.size(); ++c) {
    const auto coeffs = cone_coefficients(f.generators(c), rho);
    if (!coeffs || !nonnegative(*coeffs)) {
      out.max_cones.push_back(f.max_cones[c]);
      continue;
    }
    inside = true;
    for (std::size_t i = 0; i < coeffs->size(); ++i) {
      if ((*coeffs)[i] == 0) continue;
      auto cone = f.max_cones[c];
      cone[i] = new_ray;
      out.max_cones.push_back(std::move(cone));
    }
  }
  if (!inside) throw DomainError("star_subdivision: ray lies outside the support");
  return out.normalize();
}

RationalSubdivision slice_to_subdivision(const Fan& f) {
  const std::int64_t n = to_int64(f.lattice.modulus);
  const int r = static_cast<int>(f.dim()) - 1;
  if (!subdivides(f, orthant_fan(r, n))) throw DomainError("slice_to_subdivision: fan does not subdivide the orthant");
  RationalSubdivision out{r, n, {}};
  for (std::size_t c = 0; c < f.max_cones.size(); ++c) {
    std::vector<QPoint> verts;
    for (const auto& g : f.generators(c)) {
      const Integer s = g.sum();
      QPoint p;
      for (const auto& x : g) p.push_back(Rational(x * n) / Rational(s));
      verts.push_back(std::move(p));
    }
    out.cells.push_back(RationalPolytope::simplex_hull(r, Rational(n), std::move(verts)));
  }
  return out;
}

Domination dominate_subdivision(const Fan& f, std::size_t max_retry) {
  const auto slice = slice_to_subdivision(f);
  const int r = slice.r;
  if (r == 0) return {slice.n, Triangulation{0, slice.n, {{0}}}, {0}};
  Integer den = 1;
  for (const auto& c : slice.cells) den = lcm(den, c.vertex_denominator());
  const std::int64_t k0 = to_int64(den);
  std::vector<std::int64_t> attempted;
  std::optional<Triangulation> last;
  for (std::size_t a = 1; a <= std::max<std::size_t>(1, max_retry); ++a) {
    const std::int64_t k = k0 * static_cast<std::int64_t>(a);
    const std::int64_t level = slice.n * k;
    attempted.push_back(k);
    std::vector<RationalPolytope> cells;
    for (const auto& c : slice.cells) {
      std::vector<QPoint> verts = c.vertices();
      for (auto& v : verts)
        for (auto& x : v) x *= k;
      cells.push_back(RationalPolytope::simplex_hull(r, Rational(level), std::move(verts)));
    }
    PullingTriangulator pulling([](const auto& p, const auto& q) { return p < q; });
    std::vector<std::vector<std::vector<std::int64_t>>> simplices;
    std::set<std::vector<std::int64_t>> all_points;
    for (const auto& c : cells) {
      for (auto& s : pulling.triangulate(c)) simplices.push_back(std::move(s));
      for (auto& p : c.lattice_points()) all_points.insert(std::move(p));
    }
    std::set<std::vector<std::int64_t>> used;
    for (const auto& s : simplices) used.insert(s.begin(), s.end());
    for (const auto& p : all_points)
      if (!used.count(p)) stellar_subdivide(simplices, p);
    const DilatedSimplex target{r, level};
    Triangulation t{r, level, {}};
    for (const auto& s : simplices) {
      Cell c;
      for (const auto& p : s) c.push_back(static_cast<int>(point_index(target, SimplexPoint{p})));
      t.cells.push_back(std::move(c));
    }
    t.normalize();
    const auto volumes = cell_volumes(t);
    const bool unimodular = std::all_of(volumes.begin(), volumes.end(), [](const Integer& v) { return v == 1; }) &&
                            Integer(t.cells.size()) == power(Integer(level), static_cast<unsigned>(r)) &&
                            validate(t).valid();
    if (!unimodular) {
      last = std::move(t);
      continue;
    }
    Domination out{level, std::move(t), {}};
    const auto pts = lattice_points(target);
    for (const auto& cell : out.triangulation.cells) {
      std::optional<std::size_t> owner;
      for (std::size_t c = 0; c < cells.size() && !owner; ++c) {
        const bool inside = std::all_of(cell.begin(), cell.end(), [&](int i) {
          QPoint q;
          for (auto x : pts[static_cast<std::size_t>(i)].coords) q.emplace_back(x);
          return cells[c].contains(q);
        });
        if (inside) owner = c;
      }
      if (!owner) throw Error("dominate_subdivision: cell escaped every cone");
      out.containing_cone.push_back(*owner);
    }
    return out;
  }
  throw DilationBoundExceeded("dilation bound exceeded: no unimodular refinement of the slice for the attempted scales",
                              attempted, last, {});
}

}  // namespace stackyfan
