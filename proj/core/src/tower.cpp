#include "stackyfan/tower.hpp"

#include "stackyfan/parallel.hpp"

#include <algorithm>
#include <set>

namespace stackyfan {

namespace {

std::string describe_cell(const std::vector<SimplexPoint>& cell) {
  std::string out = "{";
  for (std::size_t i = 0; i < cell.size(); ++i) {
    if (i) out += ", ";
    out += "(";
    for (std::size_t j = 0; j < cell[i].coords.size(); ++j) {
      if (j) out += ",";
      out += std::to_string(cell[i].coords[j]);
    }
    out += ")";
  }
  return out + "}";
}

// Empty when the entry satisfies the per-entry tower laws.
std::optional<std::string> entry_failure(const CofinalTower& tower, std::size_t i) {
  const auto& e = tower.entries[i];
  const auto label = "entry " + std::to_string(i + 1) + " (level " + std::to_string(e.level) + ")";
  if (e.triangulation.r != tower.r || e.triangulation.n != e.level) return label + ": triangulation does not match";
  const auto report = validate(e.triangulation);
  if (!report.valid()) return label + ": invalid triangulation";
  if (!is_unimodular(e.triangulation, report)) return label + ": not unimodular";
  if (!is_invariant(e.triangulation, report)) return label + ": not invariant";
  if (Integer(e.level) % factorial(static_cast<std::int64_t>(i + 1)) != 0)
    return label + ": level not divisible by " + std::to_string(i + 1) + "!";
  if (i > 0 && e.level % tower.entries[i - 1].level != 0) return label + ": level not divisible by its predecessor";
  return std::nullopt;
}

}  // namespace

std::vector<std::int64_t> CofinalTower::levels() const {
  std::vector<std::int64_t> out;
  for (const auto& e : entries) out.push_back(e.level);
  return out;
}

CofinalTower build_tower(int r, std::size_t depth, const SymmetricRefinementOptions& options) {
  if (r < 0) throw DomainError("build_tower needs r >= 0");
  if (depth < 1) throw DomainError("build_tower needs depth >= 1");
  CofinalTower tower{r, {{1, trivial_triangulation(r)}}, {}, {"entry 1: level 1, trivial triangulation"}};
  for (std::size_t j = 2; j <= depth; ++j) {
    const auto& prev = tower.entries.back();
    const auto step = "entry " + std::to_string(j);
    Triangulation next;
    std::int64_t m = 1;
    try {
      auto sym = symmetric_unimodular_refinement(r, prev.level, options);
      m = sym.m;
      next = equivariant_dilation_refinement(sym.triangulation, static_cast<std::int64_t>(j));
    } catch (const Error& e) {
      throw TowerIncomplete(step + ": " + e.what(), tower);
    }
    const std::int64_t k = static_cast<std::int64_t>(j) * prev.level * m;
    auto outcome = refines(next, prev.triangulation);
    if (!std::holds_alternative<RefinementCertificate>(outcome))
      throw TowerIncomplete(step + ": " + std::get<Refusal>(outcome).message, tower);
    auto cert = std::get<RefinementCertificate>(std::move(outcome));
    tower.provenance.push_back(step + ": m = " + std::to_string(m) + ", M = " + std::to_string(prev.level * m) +
                               ", level " + std::to_string(k));
    tower.entries.push_back({k, std::move(next)});
    tower.certificates.push_back(std::move(cert));
    if (auto failure = entry_failure(tower, tower.entries.size() - 1)) {
      tower.entries.pop_back();
      tower.certificates.pop_back();
      throw TowerIncomplete(*failure, tower);
    }
  }
  return tower;
}

std::optional<std::string> audit_tower(const CofinalTower& tower) {
  if (tower.entries.empty()) return "empty tower";
  if (tower.entries.front().level != 1) return "first entry is not at level 1";
  if (tower.certificates.size() + 1 != tower.entries.size()) return "certificate count does not match the entries";
  for (std::size_t i = 0; i < tower.entries.size(); ++i)
    if (auto failure = entry_failure(tower, i)) return failure;
  for (std::size_t i = 0; i + 1 < tower.entries.size(); ++i)
    if (!verify_certificate(tower.certificates[i], tower.entries[i + 1].triangulation, tower.entries[i].triangulation))
      return "certificate " + std::to_string(i + 1) + " does not verify";
  if (tower.entries.size() > 1) {
    RefinementCertificate composed = tower.certificates.back();
    for (std::size_t i = tower.certificates.size() - 1; i-- > 0;) composed = compose(composed, tower.certificates[i]);
    if (!verify_certificate(composed, tower.entries.back().triangulation, tower.entries.front().triangulation))
      return "composed certificate does not verify";
  }
  return std::nullopt;
}

ProbeResult cofinality_probe(const CofinalTower& tower, const Triangulation& probe) {
  if (probe.r != tower.r)
    throw DomainError("dimension mismatch: probe has r = " + std::to_string(probe.r) + ", tower has r = " +
                      std::to_string(tower.r));
  const auto report = validate(probe);
  if (!report.valid()) throw DomainError("probe is not a valid triangulation");
  if (!is_unimodular(probe, report)) throw DomainError("probe is not unimodular");
  for (std::size_t i = 0; i < tower.entries.size(); ++i) {
    const auto& e = tower.entries[i];
    if (e.level % probe.n != 0) continue;
    auto outcome = refines(e.triangulation, probe);
    if (auto* cert = std::get_if<RefinementCertificate>(&outcome)) return {i + 1, e.level, std::move(*cert)};
  }
  throw BoundError("extend tower: no entry up to level " + std::to_string(tower.entries.back().level) +
                   " refines the probe");
}

TowerIndex face_entry(const TowerIndex& entry, int face_rank) {
  const int r = entry.triangulation.r;
  if (face_rank < 1 || face_rank > r + 1) throw DomainError("face rank out of range");
  std::vector<int> support(static_cast<std::size_t>(face_rank));
  for (int i = 0; i < face_rank; ++i) support[static_cast<std::size_t>(i)] = i;
  return {entry.level, restrict_to_face(entry.triangulation, FaceSelector(std::move(support)))};
}

GlobalSubdivision assemble_global(const std::vector<LocalChart>& charts, const std::vector<FaceGluing>& gluings,
                                  const std::map<int, TowerIndex>& entries) {
  if (entries.empty()) throw DomainError("assemble_global needs at least one tower entry");
  const std::int64_t level = entries.begin()->second.level;
  for (const auto& [rank, e] : entries) {
    if (e.level != level) throw DomainError("tower entries must share one level");
    if (e.triangulation.r + 1 != rank || e.triangulation.n != level)
      throw DomainError("entry for rank " + std::to_string(rank) + " does not match its triangulation");
  }
  std::map<std::size_t, std::size_t> position;
  GlobalSubdivision out{level, {}, {}};
  for (std::size_t i = 0; i < charts.size(); ++i) {
    if (!position.emplace(charts[i].id, i).second) throw DomainError("duplicate chart id " + std::to_string(charts[i].id));
    const auto it = entries.find(charts[i].rank);
    if (it == entries.end()) throw DomainError("no tower entry for rank " + std::to_string(charts[i].rank));
    out.charts.push_back(it->second.triangulation);
  }
  auto chart_of = [&](std::size_t id) {
    const auto it = position.find(id);
    if (it == position.end()) throw DomainError("gluing references unknown chart " + std::to_string(id));
    return it->second;
  };
  for (const auto& g : gluings) {
    const auto& a = charts[chart_of(g.chart_a)];
    const auto& b = charts[chart_of(g.chart_b)];
    if (g.face_a.support.size() != g.face_b.support.size()) throw DomainError("glued faces differ in dimension");
    if (g.face_a.support.back() >= a.rank || g.face_b.support.back() >= b.rank)
      throw DomainError("glued face exceeds the chart rank");
    if (static_cast<std::size_t>(g.iso.size()) != g.face_a.support.size())
      throw DomainError("gluing iso does not match the face size");
  }
  out.compatibility = parallel_map(gluings.size(), [&](std::size_t gi) {
    const auto& g = gluings[gi];
    const auto ta =
        transform(restrict_to_face(out.charts[chart_of(g.chart_a)], g.face_a), g.iso).normalize();
    auto tb = restrict_to_face(out.charts[chart_of(g.chart_b)], g.face_b).normalize();
    if (ta.cells == tb.cells) return GluingCheck{gi, ta.cells.size()};
    std::vector<Cell> only_a, only_b;
    std::set_difference(ta.cells.begin(), ta.cells.end(), tb.cells.begin(), tb.cells.end(), std::back_inserter(only_a));
    std::set_difference(tb.cells.begin(), tb.cells.end(), ta.cells.begin(), ta.cells.end(), std::back_inserter(only_b));
    const bool from_a = !only_a.empty() && (only_b.empty() || only_a.front() < only_b.front());
    const Cell& cell = from_a ? only_a.front() : only_b.front();
    const auto pts = lattice_points(ta.simplex());
    CompatibilityWitness w{gi, {}, from_a ? "a" : "b"};
    for (int i : cell) w.cell.push_back(pts[static_cast<std::size_t>(i)]);
    const auto what = "gluing " + std::to_string(gi) + ": cell " + describe_cell(w.cell) +
                      (from_a ? " of chart " + std::to_string(g.chart_a) + " (moved by the iso)"
                              : " of chart " + std::to_string(g.chart_b)) +
                      " has no counterpart across the glued face";
    throw CompatibilityError(what, std::move(w));
  });
  return out;
}

}  // namespace stackyfan
