#include "stackyfan/io.hpp"

#include "stackyfan/error.hpp"

#include <fstream>
#include <limits>
#include <sstream>

namespace stackyfan::io {

namespace {

// Re-raises library-level JSON shape errors as ParseError naming the document.
template <class F>
auto guarded(const char* what, F&& f) {
  try {
    return f();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string(what) + ": " + e.what());
  }
}

std::vector<int> int_list(const Json& j) { return j.get<std::vector<int>>(); }

Json cells_json(const std::vector<Cell>& cells) {
  Json out = Json::array();
  for (const auto& c : cells) out.push_back(c);
  return out;
}

}  // namespace

Json parse(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(source + ": " + e.what());
  }
}

Json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open file");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str(), path);
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json to_json(const Integer& a) {
  if (a >= std::numeric_limits<std::int64_t>::min() && a <= std::numeric_limits<std::int64_t>::max())
    return static_cast<std::int64_t>(a);
  return a.str();
}

Integer integer_from_json(const Json& j) {
  if (j.is_number_integer()) return Integer(j.get<std::int64_t>());
  if (j.is_string()) {
    try {
      return parse_integer(j.get<std::string>());
    } catch (const Error& e) {
      throw ParseError(std::string("integer: ") + e.what());
    }
  }
  throw ParseError("integer: expected a number or a decimal string, got " + j.dump());
}

Json to_json(const IntMatrix& m) {
  Json out = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j).str());
    out.push_back(std::move(row));
  }
  return out;
}

IntMatrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw ParseError("matrix: expected a nonempty array of rows");
  std::vector<IntVector> rows;
  for (const auto& row : j) {
    if (!row.is_array()) throw ParseError("matrix: rows must be arrays");
    std::vector<Integer> entries;
    for (const auto& x : row) entries.push_back(integer_from_json(x));
    if (!rows.empty() && entries.size() != rows.front().size()) throw ParseError("matrix: ragged rows");
    rows.emplace_back(std::move(entries));
  }
  return IntMatrix::from_rows(rows);
}

Json to_json(const SimplexPoint& p) { return p.coords; }

Json to_json(const Triangulation& t) {
  Triangulation sorted = t;
  sorted.normalize();
  Json points = Json::array();
  for (const auto& p : lattice_points(t.simplex())) points.push_back(p.coords);
  return {{"r", t.r}, {"n", t.n}, {"points", std::move(points)}, {"cells", cells_json(sorted.cells)}};
}

Triangulation triangulation_from_json(const Json& j) {
  return guarded("triangulation", [&] {
    Triangulation t{j.at("r").get<int>(), j.at("n").get<std::int64_t>(), {}};
    if (t.r < 0 || t.n < 1) throw ParseError("triangulation: needs r >= 0 and n >= 1");
    const DilatedSimplex s = t.simplex();
    std::vector<int> reindex;
    if (j.contains("points")) {
      for (const auto& p : j.at("points")) {
        SimplexPoint q{p.get<std::vector<std::int64_t>>()};
        if (static_cast<int>(q.coords.size()) != t.r + 1 || q.level() != t.n ||
            std::any_of(q.coords.begin(), q.coords.end(), [](auto x) { return x < 0; }))
          throw ParseError("triangulation: point " + p.dump() + " is not a lattice point of the simplex");
        reindex.push_back(static_cast<int>(point_index(s, q)));
      }
    }
    for (const auto& c : j.at("cells")) {
      Cell cell = int_list(c);
      if (!reindex.empty()) {
        for (int& i : cell) {
          if (i < 0 || i >= static_cast<int>(reindex.size()))
            throw ParseError("triangulation: cell " + c.dump() + " references a missing point");
          i = reindex[static_cast<std::size_t>(i)];
        }
      }
      t.cells.push_back(std::move(cell));
    }
    return std::move(t.normalize());
  });
}

Json to_json(const ValidityReport& report) {
  Json violations = Json::array();
  for (const auto& v : report.violations)
    violations.push_back({{"kind", to_string(v.kind)}, {"cells", v.cells}, {"detail", v.detail}});
  return {{"valid", report.valid()},
          {"total_volume", to_json(report.total_volume)},
          {"expected_volume", to_json(report.expected_volume)},
          {"violations", std::move(violations)}};
}

Json to_json(const Fan& f) {
  Json rays = Json::array();
  for (const auto& ray : f.rays) {
    Json v = Json::array();
    for (const auto& x : ray) v.push_back(to_json(x));
    rays.push_back(std::move(v));
  }
  return {{"lattice", {{"dim", f.lattice.ambient_dim}, {"mod", to_json(f.lattice.modulus)}}},
          {"rays", std::move(rays)},
          {"max_cones", f.max_cones}};
}

Fan fan_from_json(const Json& j) {
  return guarded("fan", [&] {
    const auto& lattice = j.at("lattice");
    Fan f{CongruenceLattice{lattice.at("dim").get<std::size_t>(), integer_from_json(lattice.at("mod"))}, {}, {}};
    if (f.lattice.modulus < 1) throw ParseError("fan: lattice modulus must be positive");
    for (const auto& ray : j.at("rays")) {
      std::vector<Integer> v;
      for (const auto& x : ray) v.push_back(integer_from_json(x));
      if (v.size() != f.lattice.ambient_dim) throw ParseError("fan: ray " + ray.dump() + " has the wrong dimension");
      f.rays.emplace_back(std::move(v));
    }
    for (const auto& cone : j.at("max_cones")) {
      auto c = cone.get<std::vector<std::size_t>>();
      for (auto i : c)
        if (i >= f.rays.size()) throw ParseError("fan: cone " + cone.dump() + " references a missing ray");
      f.max_cones.push_back(std::move(c));
    }
    return std::move(f.normalize());
  });
}

Json to_json(const StackyFan& f) {
  Json out = to_json(f.fan);
  out["lattice_map"] = to_json(f.lattice_map);
  return out;
}

StackyFan stacky_fan_from_json(const Json& j) {
  return guarded("stacky fan", [&] { return StackyFan{fan_from_json(j), matrix_from_json(j.at("lattice_map"))}; });
}

Json to_json(const SmoothnessReport& report) {
  Json cones = Json::array();
  for (const auto& w : report.cones) {
    Json divisors = Json::array();
    for (const auto& d : w.divisors) divisors.push_back(to_json(d));
    cones.push_back({{"cone", w.cone}, {"divisors", std::move(divisors)}, {"index", to_json(w.index)},
                     {"smooth", w.smooth}});
  }
  return {{"smooth", report.smooth}, {"cones", std::move(cones)}};
}

Json to_json(const RefinementCertificate& c) {
  return {{"r", c.r}, {"fine_level", c.fine_level}, {"coarse_level", c.coarse_level}, {"scale", c.scale},
          {"map", c.map}};
}

RefinementCertificate certificate_from_json(const Json& j) {
  return guarded("certificate", [&] {
    return RefinementCertificate{j.at("r").get<int>(), j.at("fine_level").get<std::int64_t>(),
                                 j.at("coarse_level").get<std::int64_t>(), j.at("scale").get<std::int64_t>(),
                                 j.at("map").get<std::vector<std::size_t>>()};
  });
}

Json to_json(const SymmetricCertificates& c) {
  Json refinements = Json::array();
  for (const auto& r : c.refinements) refinements.push_back(to_json(r));
  Json faces = Json::array();
  for (const auto& f : c.faces)
    faces.push_back({{"face", f.face.support}, {"invariant", f.invariant}, {"unimodular", f.unimodular},
                     {"compared", f.compared}, {"refined", f.refined}});
  return {{"valid", c.valid},
          {"invariant", c.invariant},
          {"unimodular", c.unimodular},
          {"universality", c.universality},
          {"compared", c.compared},
          {"arrangement_refined", c.arrangement_refined},
          {"refinements", std::move(refinements)},
          {"faces", std::move(faces)},
          {"all_passed", c.all_passed()}};
}

Json to_json(const SymmetricRefinementResult& result) {
  return {{"r", result.r},
          {"n", result.n},
          {"m", result.m},
          {"level", result.m * result.n},
          {"triangulation", to_json(result.triangulation)},
          {"certificates", to_json(result.certificates)},
          {"provenance", result.provenance}};
}

Json to_json(const CofinalTower& tower) {
  Json entries = Json::array();
  for (const auto& e : tower.entries) entries.push_back({{"k", e.level}, {"triangulation", to_json(e.triangulation)}});
  Json certificates = Json::array();
  for (const auto& c : tower.certificates) certificates.push_back(to_json(c));
  return {{"r", tower.r}, {"entries", std::move(entries)}, {"certificates", std::move(certificates)},
          {"provenance", tower.provenance}};
}

CofinalTower tower_from_json(const Json& j) {
  return guarded("tower", [&] {
    CofinalTower tower{j.at("r").get<int>(), {}, {}, {}};
    for (const auto& e : j.at("entries"))
      tower.entries.push_back({e.at("k").get<std::int64_t>(), triangulation_from_json(e.at("triangulation"))});
    if (tower.entries.empty()) throw ParseError("tower: no entries");
    for (const auto& e : tower.entries)
      if (e.triangulation.n != e.level || e.triangulation.r != tower.r)
        throw ParseError("tower: entry at level " + std::to_string(e.level) + " does not match its triangulation");
    if (j.contains("certificates"))
      for (const auto& c : j.at("certificates")) tower.certificates.push_back(certificate_from_json(c));
    if (j.contains("provenance")) tower.provenance = j.at("provenance").get<std::vector<std::string>>();
    return tower;
  });
}

Json to_json(const GluingConfig& config) {
  Json charts = Json::array();
  for (const auto& c : config.charts) charts.push_back({{"id", c.id}, {"rank", c.rank}});
  Json gluings = Json::array();
  for (const auto& g : config.gluings)
    gluings.push_back({{"chart_a", g.chart_a}, {"face_a", g.face_a.support}, {"chart_b", g.chart_b},
                       {"face_b", g.face_b.support}, {"iso", g.iso.image()}});
  return {{"charts", std::move(charts)}, {"gluings", std::move(gluings)}};
}

GluingConfig gluing_config_from_json(const Json& j) {
  return guarded("gluing config", [&] {
    GluingConfig config;
    for (const auto& c : j.at("charts")) {
      LocalChart chart{c.at("id").get<std::size_t>(), c.at("rank").get<int>()};
      if (chart.rank < 1) throw ParseError("gluing config: chart rank must be at least 1");
      config.charts.push_back(chart);
    }
    for (const auto& g : j.at("gluings")) {
      try {
        config.gluings.push_back({g.at("chart_a").get<std::size_t>(), FaceSelector(int_list(g.at("face_a"))),
                                  g.at("chart_b").get<std::size_t>(), FaceSelector(int_list(g.at("face_b"))),
                                  Permutation(int_list(g.at("iso")))});
      } catch (const DomainError& e) {
        throw ParseError("gluing config: gluing " + g.dump() + ": " + e.what());
      }
    }
    return config;
  });
}

Json to_json(const CompatibilityWitness& w) {
  Json cell = Json::array();
  for (const auto& p : w.cell) cell.push_back(p.coords);
  return {{"gluing", w.gluing ? Json(*w.gluing) : Json(nullptr)}, {"cell", std::move(cell)}, {"side", w.side}};
}

Json to_json(const GlobalSubdivision& g) {
  Json charts = Json::array();
  for (const auto& t : g.charts) charts.push_back({{"r", t.r}, {"cells", t.cells.size()}});
  Json table = Json::array();
  for (const auto& c : g.compatibility) table.push_back({{"gluing", c.gluing}, {"cells", c.cells}, {"compatible", true}});
  return {{"level", g.level}, {"charts", std::move(charts)}, {"compatibility", std::move(table)}};
}

Json to_json(const McKayReport& report) {
  return {{"r", report.r},
          {"n", report.n},
          {"cells", to_json(report.resolution_rank)},
          {"group_order", to_json(report.group_order)},
          {"stacky_order", to_json(report.stacky_order)},
          {"verdict", report.verdict},
          {"reason", report.reason},
          {"shadow", McKayReport::shadow}};
}

}  // namespace stackyfan::io
