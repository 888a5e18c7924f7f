// One PASS/FAIL line per acceptance criterion; exits nonzero if any fails.

#include "stackyfan/error.hpp"
#include "stackyfan/fan.hpp"
#include "stackyfan/lattice.hpp"
#include "stackyfan/mckay.hpp"
#include "stackyfan/symmetric_refinement.hpp"
#include "stackyfan/tower.hpp"
#include "stackyfan/triangulation.hpp"
#include "support.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>

using namespace stackyfan;

namespace {

// Thrown by require(); the message becomes the FAIL detail.
struct Failed {
  std::string detail;
};

void require(bool ok, const std::string& detail) {
  if (!ok) throw Failed{detail};
}

int failures = 0;

void criterion(int k, const char* title, double limit_seconds, const std::function<std::string()>& body) {
  const auto start = std::chrono::steady_clock::now();
  std::string status = "PASS", detail;
  try {
    detail = body();
  } catch (const Failed& f) {
    status = "FAIL";
    detail = f.detail;
  } catch (const std::exception& e) {
    status = "FAIL";
    detail = std::string("exception: ") + e.what();
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (status == "PASS" && seconds > limit_seconds) {
    status = "FAIL";
    detail += " (over the time limit)";
  }
  if (status == "FAIL") ++failures;
  std::printf("%s criterion %d: %s -- %s [%.2f s / %.0f s]\n", status.c_str(), k, title, detail.c_str(), seconds,
              limit_seconds);
  std::fflush(stdout);
}

std::string str(const Integer& a) { return a.str(); }

// |Z^d / L| and its exponent by walking the residues of the box [0, n)^d,
// valid because n Z^d lies inside L.
std::pair<std::int64_t, std::int64_t> coset_oracle(const IntMatrix& basis, std::int64_t n) {
  const BasisLattice lattice{basis};
  const std::size_t d = basis.cols();
  std::int64_t total = 1, inside = 0, exponent = 1;
  for (std::size_t i = 0; i < d; ++i) total *= n;
  auto x = IntVector::zero(d);
  for (std::int64_t idx = 0; idx < total; ++idx) {
    std::int64_t rest = idx;
    for (std::size_t i = 0; i < d; ++i, rest /= n) x[i] = rest % n;
    if (lattice.contains(x)) ++inside;
    std::int64_t order = 1;
    while (!lattice.contains(Integer(order) * x)) ++order;
    exponent = std::lcm(exponent, order);
  }
  return {total / inside, exponent};
}

using PointCell = std::set<SimplexPoint>;

// Faces of t on the support, moved by iso: the restriction computed from
// cell faces, without the library's restriction routine.
std::set<PointCell> face_cells(const Triangulation& t, const FaceSelector& face, const Permutation* iso) {
  const auto pts = lattice_points(t.simplex());
  std::set<PointCell> out;
  for (const auto& cell : t.cells) {
    PointCell on_face;
    for (int i : cell) {
      const auto& p = pts[static_cast<std::size_t>(i)];
      if (!face.contains(p)) continue;
      SimplexPoint q;
      for (int s : face.support) q.coords.push_back(p.coords[static_cast<std::size_t>(s)]);
      on_face.insert(iso ? apply_symmetry(*iso, q) : q);
    }
    if (on_face.size() == face.support.size()) out.insert(on_face);
  }
  return out;
}

FaceSelector random_face(std::mt19937& rng, int rank, int size) {
  std::vector<int> all(static_cast<std::size_t>(rank));
  std::iota(all.begin(), all.end(), 0);
  std::shuffle(all.begin(), all.end(), rng);
  all.resize(static_cast<std::size_t>(size));
  std::sort(all.begin(), all.end());
  return FaceSelector(all);
}

Permutation random_permutation(std::mt19937& rng, int k) {
  std::vector<int> image(static_cast<std::size_t>(k));
  std::iota(image.begin(), image.end(), 0);
  std::shuffle(image.begin(), image.end(), rng);
  return Permutation(image);
}

struct Config {
  std::vector<LocalChart> charts;
  std::vector<FaceGluing> gluings;
};

// At least one rank-3 chart carries a full-face gluing by a 3-cycle, which
// no triangulation with a non-trivial orbit under S_3 survives.
Config random_config(std::mt19937& rng) {
  std::uniform_int_distribution<int> chart_count(1, 6), rank_dist(1, 3), gluing_count(0, 6);
  Config c;
  const int charts = chart_count(rng);
  for (int i = 0; i < charts; ++i) c.charts.push_back({static_cast<std::size_t>(10 * i + 3), i == 0 ? 3 : rank_dist(rng)});
  const int extra = gluing_count(rng);
  std::uniform_int_distribution<std::size_t> pick(0, c.charts.size() - 1);
  for (int g = 0; g < extra; ++g) {
    const auto& a = c.charts[pick(rng)];
    const auto& b = c.charts[pick(rng)];
    std::uniform_int_distribution<int> size(1, std::min(a.rank, b.rank));
    const int k = size(rng);
    c.gluings.push_back({a.id, random_face(rng, a.rank, k), b.id, random_face(rng, b.rank, k), random_permutation(rng, k)});
  }
  std::vector<std::size_t> full;
  for (const auto& chart : c.charts)
    if (chart.rank == 3) full.push_back(chart.id);
  const auto a = full[std::uniform_int_distribution<std::size_t>(0, full.size() - 1)(rng)];
  const auto b = full[std::uniform_int_distribution<std::size_t>(0, full.size() - 1)(rng)];
  const auto rotation = (rng() & 1) ? Permutation::cycle(3, {0, 1, 2}) : Permutation::cycle(3, {0, 2, 1});
  const auto at = std::uniform_int_distribution<std::size_t>(0, c.gluings.size())(rng);
  c.gluings.insert(c.gluings.begin() + static_cast<std::ptrdiff_t>(at),
                   FaceGluing{a, FaceSelector{0, 1, 2}, b, FaceSelector{0, 1, 2}, rotation});
  return c;
}

std::map<int, TowerIndex> entries_from(const TowerIndex& top) {
  return {{3, top}, {2, face_entry(top, 2)}, {1, face_entry(top, 1)}};
}

const Triangulation& chart_triangulation(const Config& c, std::size_t id, const std::map<int, TowerIndex>& entries) {
  for (const auto& chart : c.charts)
    if (chart.id == id) return entries.at(chart.rank).triangulation;
  throw Failed{"unknown chart"};
}

}  // namespace

int main() {
  criterion(1, "2 Delta^2 census", 1, [] {
    const auto all = enumerate_unimodular(2, 2);
    const auto orbits = orbit_classes(all);
    require(all.size() == 4, "count " + std::to_string(all.size()));
    require(orbits.size() == 2, "orbits " + std::to_string(orbits.size()));
    for (const auto& t : all) require(is_unimodular(t), "non-unimodular triangulation enumerated");
    return "4 unimodular triangulations in 2 orbits";
  });

  criterion(2, "symmetric refinement of 2 Delta^2", 10, [] {
    const auto result = symmetric_unimodular_refinement(2, 2);
    const auto& t = result.triangulation;
    const auto& c = result.certificates;
    require(result.m == 6 && t.n == 12, "m = " + std::to_string(result.m));
    require(validate(t).valid() && is_unimodular(t) && is_invariant(t), "triangulation not valid, unimodular, invariant");
    require(c.all_passed(), "certificates failed");
    require(c.universality == "enumerated" && c.compared == 4 && c.refinements.size() == 4,
            "expected certificates against all 4 level-2 triangulations");
    const auto level2 = enumerate_unimodular(2, 2);
    for (std::size_t i = 0; i < level2.size(); ++i) {
      const auto outcome = refines(t, level2[i]);
      require(std::holds_alternative<RefinementCertificate>(outcome), "does not refine triangulation " + std::to_string(i));
      require(verify_certificate(std::get<RefinementCertificate>(outcome), t, level2[i]), "certificate rejected");
    }
    // one certificate per proper face: 3 vertices and 3 edges
    require(c.faces.size() == 6, "expected 6 face certificates");
    std::size_t edges = 0;
    for (const auto& f : c.faces) {
      require(f.invariant && f.unimodular && f.compared > 0 && f.refined == f.compared, "face certificate failed");
      edges += f.face.dim() == 1;
    }
    require(edges == 3, "expected 3 edge certificates");
    return "m = 6, level 12, " + std::to_string(t.cells.size()) + " cells, 4 refinement and 6 face certificates";
  });

  criterion(3, "McKay rank audit, r in {1, 2}, n <= 6", 30, [] {
    std::size_t audited = 0;
    for (int r = 1; r <= 2; ++r) {
      for (std::int64_t n = 1; n <= 6; ++n) {
        std::vector<Triangulation> produced;
        try {
          produced = enumerate_unimodular(r, n);
        } catch (const BoundError&) {
          // beyond the enumeration bound: grids of every enumerated
          // triangulation at a proper divisor, plus the grid of the simplex
          produced.push_back(grid_subdivision(trivial_triangulation(r), n));
          for (std::int64_t d = 2; d < n; ++d)
            if (n % d == 0)
              for (const auto& t : enumerate_unimodular(r, n / d)) produced.push_back(grid_subdivision(t, d));
        }
        const auto brute = testing::kernel_order(r, n);
        const Fan orthant = orthant_fan(r, n);
        for (const auto& t : produced) {
          const std::string where = "(" + std::to_string(r) + "," + std::to_string(n) + ")";
          require(is_unimodular(t), where + " non-unimodular triangulation");
          require(static_cast<std::int64_t>(t.cells.size()) == brute,
                  where + " has " + std::to_string(t.cells.size()) + " cells, kernel order " + std::to_string(brute));
          const auto report = mckay_check({r, n}, t);
          require(report.verdict && report.group_order == brute && report.stacky_order == brute,
                  where + " McKay verdict: " + report.reason);
          const Fan f = cone_over_triangulation(t);
          require(is_smooth(f).smooth, where + " cone fan is not smooth");
          require(is_crepant(f, orthant), where + " cone fan is not crepant");
          ++audited;
        }
      }
    }
    return std::to_string(audited) + " triangulations audited";
  });

  criterion(4, "A_{n-1} geometry, n <= 8", 1, [] {
    for (std::int64_t n = 1; n <= 8; ++n) {
      const std::string where = "n = " + std::to_string(n);
      const Fan orthant = orthant_fan(1, n);
      require(is_smooth(orthant).smooth == (n == 1), where + " orthant smoothness");
      const auto all = enumerate_unimodular(1, n);
      require(all.size() == 1, where + " triangulation not unique");
      const Fan f = cone_over_triangulation(all.front());
      require(is_smooth(f).smooth && is_crepant(f, orthant), where + " resolution not smooth and crepant");
      require(static_cast<std::int64_t>(f.max_cones.size()) == n, where + " cone count");
      std::int64_t interior = 0;
      for (const auto& ray : f.rays) interior += ray[0] != 0 && ray[1] != 0;
      require(interior == n - 1, where + " has " + std::to_string(interior) + " interior rays");
      require(an_model(n).chain == n - 1 && exceptional_chain(n) == n - 1, where + " chain length");
    }
    return "n cones and n - 1 interior rays for n = 1..8";
  });

  criterion(5, "stacky kernels against a coset oracle", 5, [] {
    std::size_t checked = 0;
    for (std::int64_t n = 1; n <= 8; ++n) {
      for (int r = 0; r <= 3; ++r) {
        const auto basis = congruence_basis(static_cast<std::size_t>(r + 1), n);
        const auto g = stacky_group_invariants(basis);
        const auto [order, exponent] = coset_oracle(basis, n);
        const std::string where = "L_" + std::to_string(n) + " in Z^" + std::to_string(r + 1);
        require(g.order == n && order == n, where + " order " + str(g.order) + " vs oracle " + std::to_string(order));
        require(exponent == n, where + " is not cyclic");
        require(n == 1 ? g.divisors.empty() : g.divisors == std::vector<Integer>{n}, where + " divisors");
        ++checked;
      }
      const auto diag = IntMatrix::diagonal({n, n});
      const auto g = stacky_group_invariants(diag);
      const auto [order, exponent] = coset_oracle(diag, n);
      require(g.order == n * n && order == n * n && exponent == n, "n Z^2 order for n = " + std::to_string(n));
      require(n == 1 ? g.divisors.empty() : g.divisors == std::vector<Integer>{n, n}, "n Z^2 divisors");
      ++checked;
    }
    return std::to_string(checked) + " lattices match the oracle";
  });

  std::optional<CofinalTower> plane;
  criterion(6, "tower laws", 60, [&] {
    const auto segment = build_tower(1, 4);
    require(segment.levels() == std::vector<std::int64_t>{1, 2, 6, 24}, "r = 1 levels");
    plane = build_tower(2, 3);
    require(plane->levels() == std::vector<std::int64_t>{1, 2, 36}, "r = 2 levels");
    for (const CofinalTower* tower : std::initializer_list<const CofinalTower*>{&segment, &*plane}) {
      require(!audit_tower(*tower).has_value(), "audit: " + audit_tower(*tower).value_or(""));
      const auto& e = tower->entries;
      for (std::size_t i = 0; i < e.size(); ++i) {
        require(Integer(e[i].level) % factorial(static_cast<std::int64_t>(i + 1)) == 0, "n! does not divide k_n");
        require(is_unimodular(e[i].triangulation) && is_invariant(e[i].triangulation), "entry not unimodular invariant");
        if (i == 0) continue;
        require(verify_certificate(tower->certificates[i - 1], e[i].triangulation, e[i - 1].triangulation),
                "consecutive certificate rejected");
        auto composed = tower->certificates[0];
        for (std::size_t j = 1; j < i; ++j) composed = compose(tower->certificates[j], composed);
        require(verify_certificate(composed, e[i].triangulation, e[0].triangulation), "composed certificate rejected");
      }
    }
    return "levels [1, 2, 6, 24] and [1, 2, 36], all certificates verified";
  });

  criterion(7, "cofinality probe", 30, [&] {
    if (!plane) plane = build_tower(2, 3);
    const auto& deep = plane->entries[2].triangulation;
    std::ostringstream indices;
    for (const auto& t : enumerate_unimodular(2, 2)) {
      const auto outcome = refines(deep, t);
      require(std::holds_alternative<RefinementCertificate>(outcome), "depth-3 entry does not refine a triangulation");
      require(verify_certificate(std::get<RefinementCertificate>(outcome), deep, t), "certificate rejected");
      const auto probe = cofinality_probe(*plane, t);
      require(probe.index <= 3 && verify_certificate(probe.certificate, plane->entries[probe.index - 1].triangulation, t),
              "probe certificate rejected");
      indices << (indices.tellp() ? " " : "") << probe.index;
    }
    return "all 4 level-2 triangulations refined; first refining entries " + indices.str();
  });

  criterion(8, "gluing of random configurations", 60, [&] {
    if (!plane) plane = build_tower(2, 3);
    const auto good = entries_from(plane->entries[2]);
    const auto bad = entries_from(TowerIndex{2, testing::midpoint_fan()});
    std::mt19937 rng(8128);
    std::size_t gluings = 0;
    for (int trial = 0; trial < 100; ++trial) {
      const auto c = random_config(rng);
      const std::string where = "configuration " + std::to_string(trial);
      gluings += c.gluings.size();
      require(assemble_global(c.charts, c.gluings, good).compatibility.size() == c.gluings.size(),
              where + " did not check every gluing");
      // the first gluing whose transported face disagrees, by the oracle
      std::optional<std::size_t> expected;
      for (std::size_t g = 0; g < c.gluings.size() && !expected; ++g) {
        const auto& gl = c.gluings[g];
        if (face_cells(chart_triangulation(c, gl.chart_a, bad), gl.face_a, &gl.iso) !=
            face_cells(chart_triangulation(c, gl.chart_b, bad), gl.face_b, nullptr))
          expected = g;
      }
      require(expected.has_value(), where + " has no detecting gluing");
      try {
        assemble_global(c.charts, c.gluings, bad);
        throw Failed{where + " accepted a non-invariant triangulation"};
      } catch (const CompatibilityError& e) {
        const auto& w = e.witness();
        require(w.gluing == expected, where + " witness names the wrong gluing");
        const auto& gl = c.gluings[*expected];
        const auto a = face_cells(chart_triangulation(c, gl.chart_a, bad), gl.face_a, &gl.iso);
        const auto b = face_cells(chart_triangulation(c, gl.chart_b, bad), gl.face_b, nullptr);
        const PointCell cell(w.cell.begin(), w.cell.end());
        const bool in_a = a.count(cell) > 0, in_b = b.count(cell) > 0;
        require(in_a != in_b && (w.side == "a") == in_a, where + " witness cell is not one-sided");
      }
    }
    return "100 configurations, " + std::to_string(gluings) + " gluings; every substitution pinpointed";
  });

  criterion(9, "property suites", 60, [] {
    std::mt19937 rng(97);
    std::uniform_int_distribution<int> dim(1, 4), entry(-9, 9);
    for (int trial = 0; trial < 500; ++trial) {
      IntMatrix a(static_cast<std::size_t>(dim(rng)), static_cast<std::size_t>(dim(rng)));
      for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) a(i, j) = entry(rng);
      const auto s = smith_normal_form(a);
      require(s.U * a * s.V == s.D && abs(determinant(s.U)) == 1 && abs(determinant(s.V)) == 1, "SNF round trip");
      for (std::size_t i = 0; i + 1 < s.divisors.size(); ++i)
        require(s.divisors[i] == 0 ? s.divisors[i + 1] == 0 : s.divisors[i + 1] % s.divisors[i] == 0, "divisor chain");
    }
    std::size_t triangulations = 0;
    for (auto [r, n] : std::vector<std::pair<int, std::int64_t>>{{1, 6}, {2, 2}, {2, 3}, {2, 4}, {3, 2}}) {
      const Integer expected = power(Integer(n), static_cast<unsigned>(r));
      for (const auto& t : enumerate_unimodular(r, n)) {
        Integer total = 0;
        for (const auto& v : cell_volumes(t)) total += v;
        require(total == expected, "volume additivity");
        ++triangulations;
      }
    }
    for (const auto& t : enumerate_unimodular(2, 3)) {
      const auto fan = cone_over_triangulation(t);
      const auto slices = slice_to_subdivision(fan);
      require(slices.cells.size() == t.cells.size(), "slice count");
      for (std::size_t c = 0; c < slices.cells.size(); ++c) {
        std::vector<QPoint> rays;
        for (auto i : fan.max_cones[c]) {
          QPoint q;
          for (const auto& x : fan.rays[i]) q.push_back(Rational(x));
          rays.push_back(q);
        }
        std::sort(rays.begin(), rays.end());
        require(slices.cells[c].vertices() == rays, "slice/cone round trip");
      }
    }
    const auto level2 = enumerate_unimodular(2, 2);
    for (std::size_t a = 0; a < level2.size(); ++a) {
      require(std::holds_alternative<RefinementCertificate>(refines(level2[a], level2[a])), "reflexivity");
      for (std::size_t b = 0; b < level2.size(); ++b)
        if (a != b) require(std::holds_alternative<Refusal>(refines(level2[a], level2[b])), "antisymmetry");
      const auto mid = grid_subdivision(level2[a], 2), fine = grid_subdivision(mid, 3);
      const auto composed = compose(std::get<RefinementCertificate>(refines(fine, mid)),
                                    std::get<RefinementCertificate>(refines(mid, level2[a])));
      require(verify_certificate(composed, fine, level2[a]), "transitivity");
    }
    return "500 SNFs, " + std::to_string(triangulations) + " volume sums, slice round trips, order laws";
  });

  return failures == 0 ? 0 : 1;
}
