#include "stackyfan/symmetric_refinement.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace stackyfan {

namespace {

QPoint to_q(const std::vector<std::int64_t>& p) {
  QPoint out;
  for (auto x : p) out.emplace_back(x);
  return out;
}

std::vector<RationalHyperplane> facet_hyperplanes(int r, std::int64_t n) {
  std::vector<RationalHyperplane> out;
  const auto k = static_cast<std::size_t>(r + 1);
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<Integer> a(k, 0);
    a[i] = 1;
    out.push_back(make_hyperplane(a, 0, Rational(n)));
  }
  return out;
}

std::vector<RationalHyperplane> scaled_all(const std::vector<RationalHyperplane>& hs, std::int64_t f) {
  std::vector<RationalHyperplane> out;
  out.reserve(hs.size());
  for (const auto& h : hs) out.push_back(h.scaled(Rational(f)));
  return out;
}

void check_level(int r, std::int64_t level, std::size_t max_level_points, const char* what) {
  const Integer count = binomial(level + r, r);
  if (count > Integer(max_level_points))
    throw BoundError(std::string(what) + ": level " + std::to_string(level) + " has " + count.str() +
                     " lattice points, above the bound of " + std::to_string(max_level_points));
}

// Pulling order that depends only on the orbit first: sorted coordinate
// multiset (descending) ascending, then the point itself.
bool orbit_order(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b) {
  auto ka = a;
  auto kb = b;
  std::sort(ka.begin(), ka.end(), std::greater<>());
  std::sort(kb.begin(), kb.end(), std::greater<>());
  if (ka != kb) return ka < kb;
  return a < b;
}

Triangulation cells_to_triangulation(int r, std::int64_t level,
                                     const std::vector<std::vector<std::vector<std::int64_t>>>& simplices) {
  const DilatedSimplex s{r, level};
  std::set<Cell> cells;
  for (const auto& simplex : simplices) {
    Cell c;
    for (const auto& p : simplex) c.push_back(static_cast<int>(point_index(s, SimplexPoint{p})));
    std::sort(c.begin(), c.end());
    cells.insert(std::move(c));
  }
  return Triangulation{r, level, std::vector<Cell>(cells.begin(), cells.end())};
}

// The arrangement complex is a unimodular triangulation after scaling by l.
std::optional<Triangulation> complex_as_triangulation(int r, std::int64_t n, std::int64_t l,
                                                      const std::vector<RationalPolytope>& cells) {
  std::vector<std::vector<std::vector<std::int64_t>>> simplices;
  for (const auto& c : cells) {
    if (!c.is_simplex()) return std::nullopt;
    if (c.volume() * Rational(power(Integer(l), static_cast<unsigned>(r))) != 1) return std::nullopt;
    std::vector<std::vector<std::int64_t>> pts;
    for (const auto& v : c.vertices()) {
      std::vector<std::int64_t> p;
      for (const auto& x : v) {
        const Rational y = x * l;
        if (denominator(y) != 1) return std::nullopt;
        p.push_back(to_int64(numerator(y)));
      }
      pts.push_back(std::move(p));
    }
    simplices.push_back(std::move(pts));
  }
  return cells_to_triangulation(r, n * l, simplices);
}

std::vector<std::vector<int>> proper_supports(int r) {
  std::vector<std::vector<int>> out;
  const int k = r + 1;
  for (unsigned mask = 1; mask + 1 < (1u << k); ++mask) {
    std::vector<int> s;
    for (int i = 0; i < k; ++i)
      if (mask >> i & 1u) s.push_back(i);
    out.push_back(std::move(s));
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.size() < b.size(); });
  return out;
}

std::optional<std::vector<Triangulation>> try_enumerate(int r, std::int64_t n, std::size_t max_points) {
  try {
    return enumerate_unimodular(r, n, {max_points, false});
  } catch (const BoundError&) {
    return std::nullopt;
  }
}

void certify(SymmetricRefinementResult& res, const SymmetricRefinementOptions& options,
             const std::vector<RationalHyperplane>& arr) {
  auto& c = res.certificates;
  const Triangulation& t = res.triangulation;
  const auto report = validate(t);
  c.valid = report.valid();
  if (!c.valid) return;
  c.invariant = is_invariant(t, report);
  c.unimodular = is_unimodular(t, report);
  if (auto all = try_enumerate(res.r, res.n, options.max_points)) {
    c.universality = "enumerated";
    c.compared = all->size();
    for (const auto& coarse : *all) {
      const auto outcome = refines(t, coarse);
      if (const auto* cert = std::get_if<RefinementCertificate>(&outcome)) c.refinements.push_back(*cert);
    }
  } else {
    c.universality = "arrangement";
  }
  if (res.r >= 1) c.arrangement_refined = refines_complex(t, decompose(RationalPolytope::simplex(res.r, res.n), arr));
  std::map<int, std::optional<std::vector<Triangulation>>> by_dim;
  for (const auto& support : proper_supports(res.r)) {
    FaceCertificate fc;
    fc.face = FaceSelector(support);
    const Triangulation restricted = restrict_to_face(t, fc.face);
    const auto face_report = validate(restricted);
    if (!face_report.valid()) {
      c.faces.push_back(std::move(fc));
      continue;
    }
    fc.invariant = is_invariant(restricted, face_report);
    fc.unimodular = is_unimodular(restricted, face_report);
    const int s = fc.face.dim();
    if (!by_dim.count(s)) by_dim[s] = try_enumerate(s, res.n, options.max_points);
    if (const auto& list = by_dim[s]) {
      fc.compared = list->size();
      for (const auto& coarse : *list)
        if (std::holds_alternative<RefinementCertificate>(refines(restricted, coarse))) ++fc.refined;
    }
    c.faces.push_back(std::move(fc));
  }
}

}  // namespace

bool SymmetricCertificates::all_passed() const {
  if (!valid || !invariant || !unimodular) return false;
  if (universality == "enumerated" && refinements.size() != compared) return false;
  if (universality == "arrangement" && !arrangement_refined) return false;
  return std::all_of(faces.begin(), faces.end(), [](const FaceCertificate& f) {
    return f.invariant && f.unimodular && f.refined == f.compared;
  });
}

std::vector<RationalHyperplane> reflection_hyperplanes(int r) {
  if (r < 0) throw DomainError("reflection_hyperplanes needs r >= 0");
  const auto k = static_cast<std::size_t>(r + 1);
  std::vector<RationalHyperplane> out;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) {
      std::vector<Integer> a(k, 0);
      a[i] = 1;
      a[j] = -1;
      out.push_back({IntVector(a), 0});
    }
  return out;
}

std::vector<RationalHyperplane> spanning_arrangement(int r, std::int64_t n, std::size_t max_points) {
  if (r < 1 || n < 1) throw DomainError("spanning_arrangement needs r >= 1 and n >= 1");
  const DilatedSimplex s{r, n};
  const std::size_t count = lattice_point_count(s);
  if (count > max_points)
    throw BoundError("spanning_arrangement: " + std::to_string(count) + " lattice points exceed the bound of " +
                     std::to_string(max_points));
  std::vector<QPoint> pts;
  for (const auto& p : lattice_points(s)) pts.push_back(to_q(p.coords));
  const auto k = static_cast<std::size_t>(r + 1);
  std::set<RationalHyperplane> found;
  std::vector<std::size_t> pick;
  auto rec = [&](auto&& self, std::size_t start) -> void {
    if (pick.size() == static_cast<std::size_t>(r)) {
      linalg::QMatrix rows;
      for (std::size_t i = 1; i < pick.size(); ++i) {
        QPoint d(k);
        for (std::size_t j = 0; j < k; ++j) d[j] = pts[pick[i]][j] - pts[pick[0]][j];
        rows.push_back(std::move(d));
      }
      rows.emplace_back(k, Rational(1));
      const auto ns = linalg::nullspace(rows, k);
      if (ns.size() != 1) return;
      const auto a = linalg::primitive_integer(ns.front());
      Rational offset = 0;
      for (std::size_t j = 0; j < k; ++j) offset += Rational(a[j]) * pts[pick[0]][j];
      found.insert(make_hyperplane(a, offset, Rational(n)));
      return;
    }
    for (std::size_t i = start; i + (static_cast<std::size_t>(r) - pick.size()) <= pts.size(); ++i) {
      pick.push_back(i);
      self(self, i + 1);
      pick.pop_back();
    }
  };
  rec(rec, 0);
  return {found.begin(), found.end()};
}

Integer common_denominator(const DilatedSimplex& s, const std::vector<RationalHyperplane>& arr,
                           const std::vector<RationalHyperplane>& refl) {
  if (s.r < 1) return 1;
  std::set<RationalHyperplane> all(arr.begin(), arr.end());
  all.insert(refl.begin(), refl.end());
  for (auto& f : facet_hyperplanes(s.r, s.n)) all.insert(f);
  const std::vector<RationalHyperplane> hs(all.begin(), all.end());
  const auto k = static_cast<std::size_t>(s.r + 1);
  Integer den = 1;
  std::vector<std::size_t> pick;
  auto rec = [&](auto&& self, std::size_t start) -> void {
    if (pick.size() == static_cast<std::size_t>(s.r)) {
      linalg::QMatrix a;
      linalg::QVector b;
      for (auto i : pick) {
        QPoint row;
        for (const auto& x : hs[i].normal) row.emplace_back(x);
        a.push_back(std::move(row));
        b.push_back(hs[i].offset);
      }
      a.emplace_back(k, Rational(1));
      b.emplace_back(s.n);
      const auto x = linalg::solve(std::move(a), std::move(b));
      if (!x) return;
      if (std::any_of(x->begin(), x->end(), [](const Rational& v) { return v < 0; })) return;
      for (const auto& v : *x) den = lcm(den, denominator(v));
      return;
    }
    for (std::size_t i = start; i + (static_cast<std::size_t>(s.r) - pick.size()) <= hs.size(); ++i) {
      pick.push_back(i);
      self(self, i + 1);
      pick.pop_back();
    }
  };
  rec(rec, 0);
  return den;
}

std::vector<RationalPolytope> decompose(const RationalPolytope& region, const std::vector<RationalHyperplane>& cuts) {
  std::vector<RationalPolytope> cells{region};
  for (const auto& h : cuts) {
    std::vector<RationalPolytope> next;
    next.reserve(cells.size());
    for (auto& c : cells) {
      if (auto parts = c.split(h)) {
        next.push_back(std::move(parts->first));
        next.push_back(std::move(parts->second));
      } else {
        next.push_back(std::move(c));
      }
    }
    cells = std::move(next);
  }
  std::sort(cells.begin(), cells.end(),
            [](const RationalPolytope& a, const RationalPolytope& b) { return a.vertices() < b.vertices(); });
  return cells;
}

bool ChamberComplex::connected() const {
  if (chambers.empty()) return false;
  std::vector<std::vector<std::size_t>> adj(chambers.size());
  for (const auto& [i, j] : adjacency) {
    adj[i].push_back(j);
    adj[j].push_back(i);
  }
  std::vector<bool> seen(chambers.size(), false);
  std::vector<std::size_t> stack{0};
  seen[0] = true;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const auto v = stack.back();
    stack.pop_back();
    for (auto w : adj[v])
      if (!seen[w]) {
        seen[w] = true;
        ++reached;
        stack.push_back(w);
      }
  }
  return reached == chambers.size();
}

bool ChamberComplex::integral() const {
  return std::all_of(chambers.begin(), chambers.end(),
                     [](const RationalPolytope& c) { return c.vertex_denominator() == 1; });
}

ChamberComplex chamber_decomposition(int r, std::int64_t n, std::int64_t m, std::size_t max_points) {
  if (m < 1) throw DomainError("chamber_decomposition needs m >= 1");
  ChamberComplex cx{r, n, m, {}, {}};
  const RationalPolytope simplex = RationalPolytope::simplex(r, Rational(m * n));
  if (r == 0) {
    cx.chambers.push_back(simplex);
    return cx;
  }
  auto cuts = reflection_hyperplanes(r);
  for (auto& h : spanning_arrangement(r, n, max_points)) cuts.push_back(h);
  cx.chambers = decompose(simplex, scaled_all(cuts, m));
  for (std::size_t i = 0; i < cx.chambers.size(); ++i)
    for (std::size_t j = i + 1; j < cx.chambers.size(); ++j) {
      std::vector<QPoint> shared;
      const auto& a = cx.chambers[i].vertices();
      const auto& b = cx.chambers[j].vertices();
      std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(shared));
      if (linalg::affine_rank(shared) == r - 1) cx.adjacency.emplace_back(i, j);
    }
  return cx;
}

bool in_fundamental_chamber(const QPoint& x) {
  for (std::size_t i = 0; i + 1 < x.size(); ++i)
    if (x[i] < x[i + 1]) return false;
  return true;
}

bool refines_complex(const Triangulation& t, const std::vector<RationalPolytope>& cells) {
  if (cells.empty()) return false;
  const Rational scale = Rational(t.n) / cells.front().level();
  const auto pts = lattice_points(t.simplex());
  for (const auto& cell : t.cells) {
    std::vector<QPoint> verts;
    for (int i : cell) {
      QPoint q = to_q(pts[static_cast<std::size_t>(i)].coords);
      for (auto& x : q) x /= scale;
      verts.push_back(std::move(q));
    }
    const bool inside = std::any_of(cells.begin(), cells.end(), [&](const RationalPolytope& c) {
      return std::all_of(verts.begin(), verts.end(), [&](const QPoint& v) { return c.contains(v); });
    });
    if (!inside) return false;
  }
  return true;
}

SymmetricRefinementResult chamber_refinement(int r, std::int64_t n, std::int64_t m0,
                                             const SymmetricRefinementOptions& options) {
  if (r < 1 || r > 3) throw DomainError("chamber_refinement supports 1 <= r <= 3");
  if (m0 < 1) throw DomainError("chamber_refinement needs m0 >= 1");
  SymmetricRefinementResult res{r, n, m0, {}, {}, {}};
  const auto arr = spanning_arrangement(r, n, options.max_points);
  res.provenance.push_back("spanning arrangement: " + std::to_string(arr.size()) + " hyperplanes");
  std::vector<std::int64_t> attempted;
  std::optional<Triangulation> last;
  for (std::size_t k = 1; k <= std::max<std::size_t>(1, options.max_retry); ++k) {
    const std::int64_t m = m0 * static_cast<std::int64_t>(k);
    const std::int64_t level = m * n;
    try {
      check_level(r, level, options.max_level_points, "symmetric refinement");
    } catch (const BoundError& e) {
      throw DilationBoundExceeded(std::string("dilation bound exceeded: ") + e.what(), attempted, last,
                                  res.provenance);
    }
    attempted.push_back(m);
    // Fundamental chamber x_1 >= ... >= x_{r+1}, cut by the arrangement.
    std::vector<Halfspace> walls;
    for (int i = 0; i < r; ++i) {
      QPoint a(static_cast<std::size_t>(r + 1), Rational(0));
      a[static_cast<std::size_t>(i)] = 1;
      a[static_cast<std::size_t>(i + 1)] = -1;
      walls.push_back({a, 0});
    }
    const auto fundamental = RationalPolytope::from_halfspaces(r, Rational(level), walls);
    const auto cells = decompose(*fundamental, scaled_all(arr, m));
    bool integral = std::all_of(cells.begin(), cells.end(),
                                [](const RationalPolytope& c) { return c.vertex_denominator() == 1; });
    if (!integral) {
      res.provenance.push_back("m = " + std::to_string(m) + ": chamber vertices not integral");
      continue;
    }
    PullingTriangulator pulling(orbit_order);
    std::vector<std::vector<std::vector<std::int64_t>>> simplices;
    std::set<std::vector<std::int64_t>> all_points;
    for (const auto& c : cells) {
      for (auto& s : pulling.triangulate(c)) simplices.push_back(std::move(s));
      for (auto& p : c.lattice_points()) all_points.insert(std::move(p));
    }
    std::vector<std::vector<std::int64_t>> order(all_points.begin(), all_points.end());
    std::stable_sort(order.begin(), order.end(), orbit_order);
    std::set<std::vector<std::int64_t>> used;
    for (const auto& s : simplices) used.insert(s.begin(), s.end());
    for (const auto& p : order)
      if (!used.count(p)) stellar_subdivide(simplices, p);
    std::vector<std::vector<std::vector<std::int64_t>>> transported;
    for (const auto& g : all_permutations(r + 1))
      for (const auto& s : simplices) {
        std::vector<std::vector<std::int64_t>> image;
        for (const auto& p : s) image.push_back(apply_symmetry(g, SimplexPoint{p}).coords);
        transported.push_back(std::move(image));
      }
    Triangulation t = cells_to_triangulation(r, level, transported);
    res.provenance.push_back("m = " + std::to_string(m) + ": fundamental chamber cut into " +
                             std::to_string(cells.size()) + " cells, " + std::to_string(simplices.size()) +
                             " simplices, " + std::to_string(t.cells.size()) + " after transport");
    // Volumes first: a non-unimodular cell is found without the pairwise checks.
    const Integer expected = power(Integer(level), static_cast<unsigned>(r));
    const auto volumes = cell_volumes(t);
    bool ok = t.cells.size() == static_cast<std::size_t>(to_int64(expected)) &&
              std::all_of(volumes.begin(), volumes.end(), [](const Integer& v) { return v == 1; });
    if (ok) {
      const auto report = validate(t);
      ok = report.valid() && is_unimodular(t, report) && is_invariant(t, report);
    }
    if (!ok) {
      res.provenance.push_back("m = " + std::to_string(m) + ": transported pulling triangulation not unimodular");
      last = std::move(t);
      continue;
    }
    res.m = m;
    res.triangulation = std::move(t);
    if (options.certify) certify(res, options, arr);
    return res;
  }
  throw DilationBoundExceeded("dilation bound exceeded: no unimodular chamber triangulation for m in " +
                                  std::to_string(m0) + " .. " +
                                  std::to_string(m0 * static_cast<std::int64_t>(options.max_retry)),
                              attempted, last, res.provenance);
}

SymmetricRefinementResult symmetric_unimodular_refinement(int r, std::int64_t n,
                                                          const SymmetricRefinementOptions& options) {
  if (r < 0 || n < 1) throw DomainError("symmetric_unimodular_refinement needs r >= 0 and n >= 1");
  if (r > 3) throw DomainError("symmetric_unimodular_refinement supports r <= 3");
  if (r == 0) {
    SymmetricRefinementResult res{0, n, 1, Triangulation{0, n, {{0}}}, {"point simplex"}, {}};
    if (options.certify) certify(res, options, {});
    return res;
  }
  const auto arr = spanning_arrangement(r, n, options.max_points);
  const DilatedSimplex s{r, n};
  const Integer l = common_denominator(s, arr, {});
  const Integer m0 = common_denominator(s, arr, reflection_hyperplanes(r));
  const std::int64_t l64 = to_int64(l);
  const std::int64_t m64 = to_int64(m0);
  std::vector<std::string> provenance{"spanning arrangement: " + std::to_string(arr.size()) + " hyperplanes",
                                      "arrangement denominator l = " + l.str(),
                                      "chamber denominator m = " + m0.str()};
  check_level(r, l64 * n, options.max_level_points, "symmetric refinement");
  if (options.shortcut) {
    const auto complex = decompose(RationalPolytope::simplex(r, Rational(n)), arr);
    if (auto t = complex_as_triangulation(r, n, l64, complex); t && is_invariant(*t)) {
      SymmetricRefinementResult res{r, n, l64, std::move(*t), provenance, {}};
      res.provenance.push_back("arrangement complex (" + std::to_string(complex.size()) +
                               " cells) is already a unimodular triangulation at level " + std::to_string(l64 * n));
      if (options.certify) certify(res, options, arr);
      return res;
    }
    provenance.push_back("arrangement complex (" + std::to_string(complex.size()) +
                         " cells) is not a unimodular triangulation");
  }
  auto res = chamber_refinement(r, n, m64, options);
  provenance.insert(provenance.end(), res.provenance.begin() + 1, res.provenance.end());
  res.provenance = std::move(provenance);
  return res;
}

Triangulation equivariant_dilation_refinement(const Triangulation& t, std::int64_t d) {
  if (d < 1) throw DomainError("equivariant_dilation_refinement needs d >= 1");
  if (!is_invariant(t)) throw DomainError("equivariant_dilation_refinement: input is not S_{r+1}-invariant");
  if (!is_unimodular(t)) throw DomainError("equivariant_dilation_refinement: input is not unimodular");
  if (d == 1) {
    Triangulation out = t;
    return out.normalize();
  }
  Triangulation out = grid_subdivision(t, d);
  if (t.r >= 3) {
    const auto report = validate(out);
    if (!report.valid() || !is_unimodular(out, report) || !is_invariant(out, report))
      throw DomainError("equivariant_dilation_refinement: grid subdivision at r = " + std::to_string(t.r) +
                        " is not an invariant unimodular triangulation (octahedra have no invariant split)");
  }
  return out;
}

}  // namespace stackyfan
