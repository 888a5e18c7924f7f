#include "stackyfan/triangulation.hpp"

#include "lattice_geometry.hpp"
#include "stackyfan/error.hpp"
#include "stackyfan/linalg.hpp"
#include "stackyfan/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <set>
#include <unordered_map>

namespace stackyfan {

using detail::Coords;

namespace {

struct PointTable {
  DilatedSimplex simplex;
  std::vector<Coords> coords;

  explicit PointTable(const DilatedSimplex& s) : simplex(s) {
    for (auto& p : lattice_points(s)) coords.push_back(std::move(p.coords));
  }

  bool wide() const { return detail::fits_wide(simplex.n, coords.empty() ? 0 : coords.front().size()); }

  std::vector<const Coords*> of(const Cell& cell) const {
    std::vector<const Coords*> out;
    out.reserve(cell.size());
    for (int i : cell) out.push_back(&coords[static_cast<std::size_t>(i)]);
    return out;
  }

  int index_of(const Coords& c) const {
    return static_cast<int>(point_index(simplex, SimplexPoint{c}));
  }
};

void check_indices(const Triangulation& t, std::size_t point_count) {
  if (t.r < 0 || t.n < 1) throw DomainError("triangulation needs r >= 0 and n >= 1");
  for (const auto& cell : t.cells)
    for (int i : cell)
      if (i < 0 || static_cast<std::size_t>(i) >= point_count)
        throw DomainError("cell references point index " + std::to_string(i) + " outside 0.." +
                          std::to_string(point_count - 1));
}

Integer cell_volume(const PointTable& table, const Cell& cell) {
  const auto pts = table.of(cell);
  if (table.wide()) {
    const detail::Wide v = detail::simplex_volume<detail::Wide>(pts);
    const auto mag = static_cast<std::int64_t>(v < 0 ? -v : v);
    return Integer(mag);
  }
  return abs(detail::simplex_volume<Integer>(pts));
}

bool proper_pair(const PointTable& table, const Cell& a, const Cell& b) {
  if (table.wide()) return detail::intersect_properly<detail::Wide>(a, table.of(a), b, table.of(b));
  return detail::intersect_properly<Integer>(a, table.of(a), b, table.of(b));
}

struct Box {
  Coords lo, hi;
};

Box box_of(const std::vector<const Coords*>& pts) {
  Box b{*pts.front(), *pts.front()};
  for (const auto* p : pts)
    for (std::size_t j = 0; j < p->size(); ++j) {
      b.lo[j] = std::min(b.lo[j], (*p)[j]);
      b.hi[j] = std::max(b.hi[j], (*p)[j]);
    }
  return b;
}

bool boxes_meet(const Box& a, const Box& b) {
  for (std::size_t j = 0; j < a.lo.size(); ++j)
    if (a.hi[j] < b.lo[j] || b.hi[j] < a.lo[j]) return false;
  return true;
}

// Barycentric containment of x in the simplex with vertices w (all at the same level).
template <class T>
bool simplex_contains(const std::vector<Coords>& w, const Coords& x) {
  const std::size_t r = w.size() - 1;
  if (r == 0) return w[0] == x;
  std::vector<std::vector<T>> m(r, std::vector<T>(r));
  for (std::size_t k = 0; k < r; ++k)
    for (std::size_t j = 0; j < r; ++j) m[j][k] = detail::to_scalar<T>(w[k + 1][j]) - detail::to_scalar<T>(w[0][j]);
  const T d = detail::det(m);
  if (d == 0) return false;
  const int ds = detail::sign_of(d);
  T rest = d;
  for (std::size_t k = 0; k < r; ++k) {
    auto mk = m;
    for (std::size_t j = 0; j < r; ++j) mk[j][k] = detail::to_scalar<T>(x[j]) - detail::to_scalar<T>(w[0][j]);
    const T lk = detail::det(std::move(mk));
    if (detail::sign_of(lk) * ds < 0) return false;
    rest -= lk;
  }
  return detail::sign_of(rest) * ds >= 0;
}

bool contains_all(const std::vector<Coords>& w, const std::vector<const Coords*>& xs, bool wide) {
  for (const auto* x : xs) {
    const bool in = wide ? simplex_contains<detail::Wide>(w, *x) : simplex_contains<Integer>(w, *x);
    if (!in) return false;
  }
  return true;
}

}  // namespace

// ---------------------------------------------------------------- basics

Triangulation& Triangulation::normalize() {
  for (auto& c : cells) std::sort(c.begin(), c.end());
  std::sort(cells.begin(), cells.end());
  return *this;
}

std::string to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::wrong_arity: return "wrong_arity";
    case ViolationKind::repeated_vertex: return "repeated_vertex";
    case ViolationKind::affinely_dependent: return "affinely_dependent";
    case ViolationKind::duplicate_cell: return "duplicate_cell";
    case ViolationKind::improper_intersection: return "improper_intersection";
    case ViolationKind::volume_deficit: return "volume_deficit";
    case ViolationKind::volume_excess: return "volume_excess";
  }
  return "unknown";
}

Triangulation trivial_triangulation(int r) {
  Triangulation t{r, 1, {}};
  Cell c(static_cast<std::size_t>(r + 1));
  for (int i = 0; i <= r; ++i) c[static_cast<std::size_t>(i)] = i;
  t.cells.push_back(std::move(c));
  return t;
}

Integer normalized_volume(const Triangulation& t, const Cell& cell) {
  const PointTable table(t.simplex());
  check_indices(Triangulation{t.r, t.n, {cell}}, table.coords.size());
  if (cell.size() != static_cast<std::size_t>(t.r + 1)) throw DomainError("cell has the wrong number of vertices");
  return cell_volume(table, cell);
}

std::vector<Integer> cell_volumes(const Triangulation& t) {
  const PointTable table(t.simplex());
  check_indices(t, table.coords.size());
  std::vector<Integer> out;
  out.reserve(t.cells.size());
  for (const auto& c : t.cells) {
    if (c.size() != static_cast<std::size_t>(t.r + 1)) throw DomainError("cell has the wrong number of vertices");
    out.push_back(cell_volume(table, c));
  }
  return out;
}

ValidityReport validate(const Triangulation& t) {
  const PointTable table(t.simplex());
  check_indices(t, table.coords.size());
  ValidityReport report;
  report.expected_volume = power(Integer(t.n), static_cast<unsigned>(t.r));

  const std::size_t k = static_cast<std::size_t>(t.r + 1);
  std::vector<bool> usable(t.cells.size(), false);
  for (std::size_t i = 0; i < t.cells.size(); ++i) {
    const Cell& c = t.cells[i];
    if (c.size() != k) {
      report.violations.push_back({ViolationKind::wrong_arity, {i}, "cell has " + std::to_string(c.size()) + " vertices"});
      continue;
    }
    Cell sorted = c;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      report.violations.push_back({ViolationKind::repeated_vertex, {i}, ""});
      continue;
    }
    const Integer vol = cell_volume(table, c);
    if (vol == 0) {
      report.violations.push_back({ViolationKind::affinely_dependent, {i}, ""});
      continue;
    }
    report.total_volume += vol;
    usable[i] = true;
  }

  std::map<Cell, std::size_t> seen;
  for (std::size_t i = 0; i < t.cells.size(); ++i) {
    if (!usable[i]) continue;
    Cell sorted = t.cells[i];
    std::sort(sorted.begin(), sorted.end());
    auto [it, inserted] = seen.emplace(sorted, i);
    if (!inserted) {
      report.violations.push_back({ViolationKind::duplicate_cell, {it->second, i}, ""});
      usable[i] = false;
    }
  }

  std::vector<Box> boxes(t.cells.size());
  for (std::size_t i = 0; i < t.cells.size(); ++i)
    if (usable[i]) boxes[i] = box_of(table.of(t.cells[i]));
  auto bad_pairs = parallel_map(t.cells.size(), [&](std::size_t i) {
    std::vector<std::size_t> partners;
    if (!usable[i]) return partners;
    for (std::size_t j = i + 1; j < t.cells.size(); ++j) {
      if (!usable[j] || !boxes_meet(boxes[i], boxes[j])) continue;
      if (!proper_pair(table, t.cells[i], t.cells[j])) partners.push_back(j);
    }
    return partners;
  });
  for (std::size_t i = 0; i < bad_pairs.size(); ++i)
    for (auto j : bad_pairs[i]) report.violations.push_back({ViolationKind::improper_intersection, {i, j}, ""});

  // Duplicates are already reported; their volume is counted once for the cover check.
  Integer covered = 0;
  for (std::size_t i = 0; i < t.cells.size(); ++i)
    if (usable[i]) covered += cell_volume(table, t.cells[i]);
  if (covered < report.expected_volume)
    report.violations.push_back({ViolationKind::volume_deficit, {},
                                 "cells cover volume " + covered.str() + " of " + report.expected_volume.str()});
  else if (covered > report.expected_volume)
    report.violations.push_back({ViolationKind::volume_excess, {},
                                 "cells cover volume " + covered.str() + " of " + report.expected_volume.str()});
  return report;
}


bool is_unimodular(const Triangulation& t) { return is_unimodular(t, validate(t)); }

bool is_unimodular(const Triangulation& t, const ValidityReport& report) {
  if (!report.valid())
    throw DomainError(std::string("is_unimodular: invalid triangulation (") +
                      to_string(report.violations.front().kind) + ")");
  const PointTable table(t.simplex());
  return std::all_of(t.cells.begin(), t.cells.end(), [&](const Cell& c) { return cell_volume(table, c) == 1; });
}

bool uses_all_interior_points(const Triangulation& t) {
  const DilatedSimplex s = t.simplex();
  std::set<int> used;
  for (const auto& c : t.cells) used.insert(c.begin(), c.end());
  for (const auto& p : interior_points(s))
    if (!used.count(static_cast<int>(point_index(s, p)))) return false;
  return true;
}

bool uses_all_lattice_points(const Triangulation& t) {
  std::set<int> used;
  for (const auto& c : t.cells) used.insert(c.begin(), c.end());
  return used.size() == lattice_point_count(t.simplex());
}

bool cells_intersect_properly(const Triangulation& t, const Cell& a, const Cell& b) {
  const PointTable table(t.simplex());
  check_indices(Triangulation{t.r, t.n, {a, b}}, table.coords.size());
  return proper_pair(table, a, b);
}

// ---------------------------------------------------------------- symmetry

namespace {

std::vector<int> point_permutation(const PointTable& table, const Permutation& g) {
  std::vector<int> out(table.coords.size());
  for (std::size_t i = 0; i < table.coords.size(); ++i)
    out[i] = table.index_of(apply_symmetry(g, SimplexPoint{table.coords[i]}).coords);
  return out;
}

std::vector<Cell> mapped_cells(const std::vector<Cell>& cells, const std::vector<int>& map) {
  std::vector<Cell> out;
  out.reserve(cells.size());
  for (const auto& c : cells) {
    Cell m;
    m.reserve(c.size());
    for (int i : c) m.push_back(map[static_cast<std::size_t>(i)]);
    std::sort(m.begin(), m.end());
    out.push_back(std::move(m));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

Triangulation transform(const Triangulation& t, const Permutation& g) {
  if (g.size() != t.r + 1) throw DomainError("permutation arity does not match the simplex");
  const PointTable table(t.simplex());
  check_indices(t, table.coords.size());
  return Triangulation{t.r, t.n, mapped_cells(t.cells, point_permutation(table, g))};
}

Triangulation canonical_form(const Triangulation& t) {
  const PointTable table(t.simplex());
  check_indices(t, table.coords.size());
  std::optional<std::vector<Cell>> best;
  for (const auto& g : all_permutations(t.r + 1)) {
    auto cells = mapped_cells(t.cells, point_permutation(table, g));
    if (!best || cells < *best) best = std::move(cells);
  }
  return Triangulation{t.r, t.n, std::move(*best)};
}

std::vector<Orbit> orbit_classes(const std::vector<Triangulation>& ts) {
  if (ts.empty()) return {};
  for (const auto& t : ts)
    if (t.r != ts.front().r || t.n != ts.front().n) throw DomainError("orbit_classes: triangulations of mixed levels");
  std::map<std::vector<Cell>, Orbit> by_rep;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    Triangulation rep = canonical_form(ts[i]);
    auto it = by_rep.find(rep.cells);
    if (it == by_rep.end()) it = by_rep.emplace(rep.cells, Orbit{rep, {}}).first;
    it->second.members.push_back(i);
  }
  std::vector<Orbit> out;
  for (auto& [key, orbit] : by_rep) out.push_back(std::move(orbit));
  return out;
}

bool is_invariant(const Triangulation& t) { return is_invariant(t, validate(t)); }

bool is_invariant(const Triangulation& t, const ValidityReport& report) {
  if (!report.valid())
    throw DomainError(std::string("is_invariant: invalid triangulation (") +
                      to_string(report.violations.front().kind) + ")");
  const PointTable table(t.simplex());
  Triangulation sorted = t;
  sorted.normalize();
  for (const auto& g : symmetric_group_generators(t.r + 1))
    if (mapped_cells(t.cells, point_permutation(table, g)) != sorted.cells) return false;
  return true;
}

Triangulation restrict_to_face(const Triangulation& t, const FaceSelector& face) {
  const PointTable table(t.simplex());
  check_indices(t, table.coords.size());
  if (face.support.back() > t.r) throw DomainError("face support exceeds the simplex dimension");
  const int s = face.dim();
  const DilatedSimplex target{s, t.n};
  std::set<Cell> cells;
  for (const auto& c : t.cells) {
    Cell restricted;
    for (int i : c) {
      SimplexPoint p{table.coords[static_cast<std::size_t>(i)]};
      if (face.contains(p)) restricted.push_back(static_cast<int>(point_index(target, restrict_point(p, face))));
    }
    if (static_cast<int>(restricted.size()) == s + 1) {
      std::sort(restricted.begin(), restricted.end());
      cells.insert(std::move(restricted));
    }
  }
  return Triangulation{s, t.n, std::vector<Cell>(cells.begin(), cells.end())};
}

// ---------------------------------------------------------------- enumeration

namespace {

class UnimodularSearch {
 public:
  UnimodularSearch(int r, std::int64_t n, const EnumerationOptions& options)
      : r_(r), n_(n), options_(options), table_({r, n}) {
    collect_simplices();
  }

  std::vector<Triangulation> run() {
    if (r_ == 0) return {Triangulation{0, n_, {{0}}}};
    const auto starts = initial_candidates();
    auto branches = parallel_map(starts.size(), [&](std::size_t b) {
      Branch branch(*this);
      branch.place(starts[b]);
      branch.dfs();
      return std::move(branch.found);
    });
    std::vector<Triangulation> out;
    for (auto& b : branches)
      for (auto& t : b) out.push_back(std::move(t));
    return out;
  }

 private:
  struct Simplex {
    Cell vertices;
    Box box;
    std::vector<Cell> facets;       // facet i omits vertex i
    std::vector<int> apex_side;     // orientation of vertex i w.r.t. facets[i]
    std::vector<bool> boundary;     // facet lies in a coordinate hyperplane
  };

  struct Incidence {
    int simplex;
    int side;
  };

  // One depth-first search over a subtree; owns its own compatibility cache.
  struct Branch {
    explicit Branch(const UnimodularSearch& s) : search(s) {}

    const UnimodularSearch& search;
    std::vector<int> placed;
    std::map<Cell, int> open;  // facet -> side of the placed apex
    std::unordered_map<std::uint64_t, bool> cache;
    std::vector<Triangulation> found;

    bool compatible(int a, int b) {
      const auto& sa = search.simplices_[static_cast<std::size_t>(a)];
      const auto& sb = search.simplices_[static_cast<std::size_t>(b)];
      if (!boxes_meet(sa.box, sb.box)) return true;
      const auto key = static_cast<std::uint64_t>(std::min(a, b)) << 32 | static_cast<std::uint32_t>(std::max(a, b));
      auto it = cache.find(key);
      if (it != cache.end()) return it->second;
      const bool ok = proper_pair(search.table_, sa.vertices, sb.vertices);
      cache.emplace(key, ok);
      return ok;
    }

    // Returns the undo log: (facet, previous side or 0 if newly inserted).
    std::vector<std::pair<Cell, int>> place(int id) {
      std::vector<std::pair<Cell, int>> log;
      const auto& s = search.simplices_[static_cast<std::size_t>(id)];
      placed.push_back(id);
      for (std::size_t f = 0; f < s.facets.size(); ++f) {
        if (s.boundary[f]) continue;
        auto it = open.find(s.facets[f]);
        if (it != open.end()) {
          log.emplace_back(it->first, it->second);
          open.erase(it);
        } else {
          open.emplace(s.facets[f], s.apex_side[f]);
          log.emplace_back(s.facets[f], 0);
        }
      }
      return log;
    }

    void undo(const std::vector<std::pair<Cell, int>>& log) {
      placed.pop_back();
      for (auto it = log.rbegin(); it != log.rend(); ++it) {
        if (it->second == 0)
          open.erase(it->first);
        else
          open.emplace(it->first, it->second);
      }
    }

    void dfs() {
      if (open.empty()) {
        emit();
        return;
      }
      const auto [facet, side] = *open.begin();
      const auto fit = search.by_facet_.find(facet);
      if (fit == search.by_facet_.end()) return;
      for (const auto& inc : fit->second) {
        if (inc.side == side) continue;
        bool ok = true;
        for (int p : placed)
          if (!compatible(inc.simplex, p)) {
            ok = false;
            break;
          }
        if (!ok) continue;
        const auto log = place(inc.simplex);
        dfs();
        undo(log);
      }
    }

    void emit() {
      Triangulation t{search.r_, search.n_, {}};
      for (int id : placed) t.cells.push_back(search.simplices_[static_cast<std::size_t>(id)].vertices);
      t.normalize();
      if (search.options_.symmetry_reduce && canonical_form(t) != t) return;
      if (++search.emitted_ > search.options_.max_results)
        throw BoundError("enumerate_unimodular: more than " + std::to_string(search.options_.max_results) +
                         " triangulations");
      found.push_back(std::move(t));
    }
  };

  void collect_simplices() {
    const std::size_t count = table_.coords.size();
    const std::size_t k = static_cast<std::size_t>(r_ + 1);
    Cell cur;
    auto rec = [&](auto&& self, std::size_t start) -> void {
      if (cur.size() == k) {
        if (cell_volume(table_, cur) == 1) add_simplex(cur);
        return;
      }
      for (std::size_t i = start; i + (k - cur.size()) <= count; ++i) {
        cur.push_back(static_cast<int>(i));
        self(self, i + 1);
        cur.pop_back();
      }
    };
    rec(rec, 0);
  }

  void add_simplex(const Cell& vertices) {
    Simplex s;
    s.vertices = vertices;
    s.box = box_of(table_.of(vertices));
    for (std::size_t omit = 0; omit < vertices.size(); ++omit) {
      Cell f;
      for (std::size_t j = 0; j < vertices.size(); ++j)
        if (j != omit) f.push_back(vertices[j]);
      const auto fpts = table_.of(f);
      const Coords& apex = table_.coords[static_cast<std::size_t>(vertices[omit])];
      s.apex_side.push_back(table_.wide() ? detail::orientation<detail::Wide>(fpts, apex) : detail::orientation<Integer>(fpts, apex));
      bool on_boundary = false;
      for (std::size_t c = 0; c < apex.size() && !on_boundary; ++c)
        on_boundary = std::all_of(fpts.begin(), fpts.end(), [&](const Coords* p) { return (*p)[c] == 0; });
      s.boundary.push_back(on_boundary);
      s.facets.push_back(std::move(f));
    }
    const int id = static_cast<int>(simplices_.size());
    for (std::size_t f = 0; f < s.facets.size(); ++f)
      if (!s.boundary[f]) by_facet_[s.facets[f]].push_back({id, s.apex_side[f]});
    simplices_.push_back(std::move(s));
  }

  // Unimodular simplices containing v0 + eps * (d_1 + eps d_2 + ...) for the
  // corner v0 = n e_1 and directions d_i = e_{i+1} - e_1; exactly one of them
  // belongs to any triangulation.
  std::vector<int> initial_candidates() const {
    const int corner = static_cast<int>(table_.coords.size()) - 1;
    const Coords& v0 = table_.coords.back();
    const std::size_t r = static_cast<std::size_t>(r_);
    std::vector<int> out;
    for (std::size_t id = 0; id < simplices_.size(); ++id) {
      const auto& s = simplices_[id];
      if (!std::binary_search(s.vertices.begin(), s.vertices.end(), corner)) continue;
      linalg::QMatrix m(r, linalg::QVector(r));
      std::size_t col = 0;
      for (int v : s.vertices) {
        if (v == corner) continue;
        const Coords& u = table_.coords[static_cast<std::size_t>(v)];
        for (std::size_t j = 0; j < r; ++j) m[j][col] = Rational(u[j] - v0[j]);
        ++col;
      }
      std::vector<linalg::QVector> coeffs;
      bool ok = true;
      for (std::size_t i = 1; i <= r && ok; ++i) {
        linalg::QVector d(r, Rational(0));
        d[0] = -1;
        if (i < r) d[i] = 1;  // e_{i+1} - e_1 with the last coordinate dropped
        auto c = linalg::solve(m, d);
        if (!c) ok = false;
        else coeffs.push_back(std::move(*c));
      }
      for (std::size_t k = 0; k < r && ok; ++k) {
        int lead = 0;
        for (std::size_t i = 0; i < r && lead == 0; ++i) lead = coeffs[i][k] > 0 ? 1 : (coeffs[i][k] < 0 ? -1 : 0);
        if (lead <= 0) ok = false;
      }
      if (ok) out.push_back(static_cast<int>(id));
    }
    return out;
  }

  int r_;
  std::int64_t n_;
  EnumerationOptions options_;
  PointTable table_;
  std::vector<Simplex> simplices_;
  std::map<Cell, std::vector<Incidence>> by_facet_;
  mutable std::atomic<std::size_t> emitted_{0};
};

}  // namespace

std::vector<Triangulation> enumerate_unimodular(int r, std::int64_t n, const EnumerationOptions& options) {
  if (r < 0 || n < 1) throw DomainError("enumerate_unimodular needs r >= 0 and n >= 1");
  if (r > 3) throw DomainError("enumerate_unimodular supports r <= 3");
  const std::size_t points = lattice_point_count({r, n});
  if (points > options.max_points)
    throw BoundError("enumerate_unimodular: " + std::to_string(points) + " lattice points exceed the bound of " +
                     std::to_string(options.max_points));
  return UnimodularSearch(r, n, options).run();
}

// ---------------------------------------------------------------- refinement

namespace {

std::optional<Refusal> refinement_precheck(const Triangulation& fine, const Triangulation& coarse) {
  if (fine.r != coarse.r)
    return Refusal{Refusal::Reason::dimension_mismatch, std::nullopt,
                   "dimensions differ: " + std::to_string(fine.r) + " vs " + std::to_string(coarse.r)};
  if (fine.n % coarse.n != 0)
    return Refusal{Refusal::Reason::divisibility, std::nullopt,
                   "level " + std::to_string(coarse.n) + " does not divide " + std::to_string(fine.n)};
  return std::nullopt;
}

struct ScaledCoarse {
  std::vector<std::vector<Coords>> cells;
  std::vector<Box> boxes;
};

ScaledCoarse scale_cells(const Triangulation& coarse, std::int64_t d) {
  const PointTable table(coarse.simplex());
  check_indices(coarse, table.coords.size());
  ScaledCoarse out;
  for (const auto& c : coarse.cells) {
    std::vector<Coords> w;
    for (int i : c) {
      Coords p = table.coords[static_cast<std::size_t>(i)];
      for (auto& x : p) x *= d;
      w.push_back(std::move(p));
    }
    std::vector<const Coords*> ptrs;
    for (const auto& p : w) ptrs.push_back(&p);
    out.boxes.push_back(box_of(ptrs));
    out.cells.push_back(std::move(w));
  }
  return out;
}

}  // namespace

RefinementOutcome refines(const Triangulation& fine, const Triangulation& coarse) {
  if (auto refusal = refinement_precheck(fine, coarse)) return *refusal;
  const std::int64_t d = fine.n / coarse.n;
  const PointTable table(fine.simplex());
  check_indices(fine, table.coords.size());
  const ScaledCoarse scaled = scale_cells(coarse, d);
  const bool wide = table.wide();
  const auto assigned = parallel_map(fine.cells.size(), [&](std::size_t i) -> std::optional<std::size_t> {
    const auto pts = table.of(fine.cells[i]);
    const Box b = box_of(pts);
    for (std::size_t c = 0; c < scaled.cells.size(); ++c) {
      const Box& cb = scaled.boxes[c];
      bool inside = true;
      for (std::size_t j = 0; j < b.lo.size() && inside; ++j) inside = cb.lo[j] <= b.lo[j] && b.hi[j] <= cb.hi[j];
      if (inside && contains_all(scaled.cells[c], pts, wide)) return c;
    }
    return std::nullopt;
  });
  RefinementCertificate cert{fine.r, fine.n, coarse.n, d, {}};
  for (std::size_t i = 0; i < assigned.size(); ++i) {
    if (!assigned[i])
      return Refusal{Refusal::Reason::uncontained_cell, i,
                     "fine cell " + std::to_string(i) + " lies in no coarse cell"};
    cert.map.push_back(*assigned[i]);
  }
  return cert;
}

bool verify_certificate(const RefinementCertificate& cert, const Triangulation& fine, const Triangulation& coarse) {
  if (refinement_precheck(fine, coarse)) return false;
  if (cert.r != fine.r || cert.fine_level != fine.n || cert.coarse_level != coarse.n ||
      cert.scale * coarse.n != fine.n || cert.map.size() != fine.cells.size())
    return false;
  const PointTable table(fine.simplex());
  check_indices(fine, table.coords.size());
  const ScaledCoarse scaled = scale_cells(coarse, cert.scale);
  for (std::size_t i = 0; i < cert.map.size(); ++i) {
    if (cert.map[i] >= scaled.cells.size()) return false;
    if (!contains_all(scaled.cells[cert.map[i]], table.of(fine.cells[i]), table.wide())) return false;
  }
  return true;
}

RefinementCertificate compose(const RefinementCertificate& fine_mid, const RefinementCertificate& mid_coarse) {
  if (fine_mid.r != mid_coarse.r || fine_mid.coarse_level != mid_coarse.fine_level)
    throw DomainError("compose: certificates do not chain");
  RefinementCertificate out{fine_mid.r, fine_mid.fine_level, mid_coarse.coarse_level,
                            fine_mid.scale * mid_coarse.scale, {}};
  out.map.reserve(fine_mid.map.size());
  for (auto m : fine_mid.map) {
    if (m >= mid_coarse.map.size()) throw DomainError("compose: certificate index out of range");
    out.map.push_back(mid_coarse.map[m]);
  }
  return out;
}

// ---------------------------------------------------------------- grid subdivision

Triangulation grid_subdivision(const Triangulation& t, std::int64_t d, const std::vector<std::size_t>& pull_rank) {
  if (d < 1) throw DomainError("grid_subdivision needs d >= 1");
  if (t.r > 3) throw DomainError("grid_subdivision supports r <= 3");
  const PointTable table(t.simplex());
  check_indices(t, table.coords.size());
  Triangulation out{t.r, t.n * d, {}};
  const DilatedSimplex target = out.simplex();
  const std::size_t k = static_cast<std::size_t>(t.r + 1);

  auto rank_of = [&](int idx) {
    return pull_rank.empty() ? static_cast<std::size_t>(idx) : pull_rank.at(static_cast<std::size_t>(idx));
  };

  for (const auto& cell : t.cells) {
    if (cell.size() != k) throw DomainError("grid_subdivision: malformed cell");
    if (cell_volume(table, cell) != 1) throw DomainError("grid_subdivision: cell is not unimodular");
    // Point with barycentric coordinates lambda (summing to d) w.r.t. the cell.
    auto at = [&](const std::vector<std::int64_t>& lambda) {
      Coords p(k, 0);
      for (std::size_t v = 0; v < k; ++v)
        for (std::size_t j = 0; j < k; ++j) p[j] += lambda[v] * table.coords[static_cast<std::size_t>(cell[v])][j];
      return static_cast<int>(point_index(target, SimplexPoint{p}));
    };
    auto unit = [&](std::size_t i) {
      std::vector<std::int64_t> e(k, 0);
      e[i] = 1;
      return e;
    };
    auto plus = [](std::vector<std::int64_t> a, const std::vector<std::int64_t>& b) {
      for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
      return a;
    };
    auto add_cell = [&](Cell c) {
      std::sort(c.begin(), c.end());
      out.cells.push_back(std::move(c));
    };
    auto shifts = [&](std::int64_t level) {
      std::vector<std::vector<std::int64_t>> s;
      if (level < 0) return s;
      if (level == 0) return decltype(s){std::vector<std::int64_t>(k, 0)};
      for (auto& p : lattice_points({t.r, level})) s.push_back(p.coords);
      return s;
    };

    // "Up" simplices mu + e_i.
    for (const auto& mu : shifts(d - 1)) {
      Cell c;
      for (std::size_t i = 0; i < k; ++i) c.push_back(at(plus(mu, unit(i))));
      add_cell(std::move(c));
    }
    if (t.r == 2) {
      for (const auto& nu : shifts(d - 2)) {
        Cell c;
        for (std::size_t i = 0; i < k; ++i) {
          auto lam = nu;
          for (std::size_t j = 0; j < k; ++j)
            if (j != i) lam[j] += 1;
          c.push_back(at(lam));
        }
        add_cell(std::move(c));
      }
    } else if (t.r == 3) {
      for (const auto& nu : shifts(d - 3)) {
        Cell c;
        for (std::size_t i = 0; i < k; ++i) {
          auto lam = nu;
          for (std::size_t j = 0; j < k; ++j)
            if (j != i) lam[j] += 1;
          c.push_back(at(lam));
        }
        add_cell(std::move(c));
      }
      // Octahedra kappa + e_i + e_j, split along the diagonal through the
      // vertex pulled first.
      for (const auto& kappa : shifts(d - 2)) {
        std::map<std::pair<std::size_t, std::size_t>, int> vtx;
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = i + 1; j < k; ++j) vtx[{i, j}] = at(plus(plus(kappa, unit(i)), unit(j)));
        auto first = vtx.begin();
        for (auto it = vtx.begin(); it != vtx.end(); ++it)
          if (rank_of(it->second) < rank_of(first->second)) first = it;
        const auto [a, b] = first->first;
        std::vector<std::size_t> rest;
        for (std::size_t i = 0; i < k; ++i)
          if (i != a && i != b) rest.push_back(i);
        const auto [c0, c1] = std::pair{rest[0], rest[1]};
        auto key = [](std::size_t x, std::size_t y) { return std::pair{std::min(x, y), std::max(x, y)}; };
        const int p = first->second;
        const int q = vtx[key(c0, c1)];
        const int ring[4] = {vtx[key(a, c0)], vtx[key(a, c1)], vtx[key(b, c1)], vtx[key(b, c0)]};
        for (int i = 0; i < 4; ++i) add_cell({p, q, ring[i], ring[(i + 1) % 4]});
      }
    }
  }
  out.normalize();
  return out;
}

}  // namespace stackyfan
