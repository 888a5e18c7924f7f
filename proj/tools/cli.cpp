#include "cli.hpp"

#include "stackyfan/io.hpp"
#include "stackyfan/mckay.hpp"
#include "stackyfan/parallel.hpp"
#include "stackyfan/render.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <ctime>
#include <fstream>
#include <functional>
#include <iomanip>
#include <ostream>
#include <set>
#include <sstream>

namespace stackyfan::cli {

namespace {

using io::Json;

struct Params {
  int r = 0;
  std::int64_t n = 1;
  std::size_t depth = 1;
  std::size_t max_retry = 8;
  std::size_t max_points = 35;
  bool orbits = false;
  bool smooth = false;
  bool crepant = false;
  bool timestamp = false;
  std::string in, out, config, tower, probe;
  std::optional<std::size_t> entry;
};

// Outcome of one verb: the JSON document and the exit code.
struct Outcome {
  Json doc;
  int code = ok;
  std::string summary;
};

std::string utc_now() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream s;
  s << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return s.str();
}

Triangulation read_triangulation(const std::string& path) { return io::triangulation_from_json(io::read_file(path)); }

// A unimodular triangulation of n Delta^r used when none is supplied.
Triangulation default_triangulation(int r, std::int64_t n) {
  if (r == 0) return Triangulation{0, n, {{0}}};
  return grid_subdivision(trivial_triangulation(r), n);
}

Outcome points(const Params& p) {
  const DilatedSimplex s{p.r, p.n};
  Json pts = Json::array();
  for (const auto& q : lattice_points(s)) pts.push_back(q.coords);
  const auto count = pts.size();
  return {{{"count", count}, {"interior", interior_points(s).size()}, {"points", std::move(pts)}},
          ok,
          std::to_string(count) + " lattice points"};
}

Outcome enumerate(const Params& p) {
  EnumerationOptions options;
  options.max_points = p.max_points;
  const auto all = enumerate_unimodular(p.r, p.n, options);
  const auto classes = orbit_classes(all);
  Json ts = Json::array();
  for (const auto& t : all) ts.push_back(io::to_json(t));
  Json doc{{"count", all.size()}, {"orbits", classes.size()}, {"triangulations", std::move(ts)}};
  if (p.orbits) {
    Json list = Json::array();
    for (const auto& o : classes)
      list.push_back({{"representative", io::to_json(o.representative)}, {"size", o.members.size()},
                      {"members", o.members}});
    doc["orbit_classes"] = std::move(list);
  }
  return {std::move(doc), ok,
          std::to_string(all.size()) + " unimodular triangulations in " + std::to_string(classes.size()) + " orbits"};
}

Outcome symrefine(const Params& p) {
  SymmetricRefinementOptions options;
  options.max_retry = p.max_retry;
  options.max_points = p.max_points;
  try {
    const auto result = symmetric_unimodular_refinement(p.r, p.n, options);
    const bool passed = result.certificates.all_passed();
    return {io::to_json(result), passed ? ok : verdict_false,
            "m = " + std::to_string(result.m) + ", " + std::to_string(result.triangulation.cells.size()) +
                " cells, certificates " + (passed ? "pass" : "FAIL")};
  } catch (const DilationBoundExceeded& e) {
    Json doc{{"error", e.what()}, {"attempted_factors", e.attempted_factors()}, {"provenance", e.provenance()}};
    if (e.last_attempt()) doc["last_attempt"] = io::to_json(*e.last_attempt());
    return {std::move(doc), usage, e.what()};
  }
}

Outcome fan(const Params& p) {
  const auto t = read_triangulation(p.in);
  const Fan f = cone_over_triangulation(t);
  Json doc{{"fan", io::to_json(f)}};
  int code = ok;
  if (p.smooth) {
    const auto report = is_smooth(f);
    doc["smooth"] = io::to_json(report);
    if (!report.smooth) code = verdict_false;
  }
  if (p.crepant) {
    const bool crepant = is_crepant(f, orthant_fan(t.r, t.n));
    doc["crepant"] = crepant;
    if (!crepant) code = verdict_false;
  }
  return {std::move(doc), code, std::to_string(f.max_cones.size()) + " maximal cones"};
}

Outcome verify(const Params& p) {
  const auto t = read_triangulation(p.in);
  const auto report = validate(t);
  Json doc{{"validity", io::to_json(report)}, {"r", t.r}, {"n", t.n}, {"cells", t.cells.size()}};
  if (report.valid()) {
    doc["unimodular"] = is_unimodular(t, report);
    doc["invariant"] = is_invariant(t, report);
    doc["uses_all_lattice_points"] = uses_all_lattice_points(t);
  }
  return {std::move(doc), report.valid() ? ok : verdict_false, report.valid() ? "valid" : "INVALID"};
}

Outcome mckay(const Params& p) {
  const Triangulation t = p.in.empty() ? default_triangulation(p.r, p.n) : read_triangulation(p.in);
  const auto report = mckay_check({p.r, p.n}, t);
  Json doc = io::to_json(report);
  doc["source"] = p.in.empty() ? "grid" : p.in;
  if (p.r == 1) doc["chain"] = exceptional_chain(p.n);
  return {std::move(doc), report.verdict ? ok : verdict_false,
          "cells " + report.resolution_rank.str() + ", group order " + report.group_order.str() + ", verdict " +
              (report.verdict ? "true" : "false")};
}

Outcome tower(const Params& p) {
  SymmetricRefinementOptions options;
  options.max_retry = p.max_retry;
  options.max_points = p.max_points;
  CofinalTower tw;
  try {
    tw = build_tower(p.r, p.depth, options);
  } catch (const TowerIncomplete& e) {
    return {{{"error", e.what()}, {"partial", io::to_json(e.partial())}, {"levels", e.partial().levels()}},
            usage,
            e.what()};
  }
  const auto audit = audit_tower(tw);
  Json doc = io::to_json(tw);
  doc["levels"] = tw.levels();
  doc["audit"] = audit ? Json(*audit) : Json("ok");
  int code = audit ? verdict_false : ok;
  if (!p.probe.empty()) {
    const auto probe = cofinality_probe(tw, read_triangulation(p.probe));
    doc["probe"] = {{"index", probe.index}, {"level", probe.level}, {"certificate", io::to_json(probe.certificate)}};
  }
  std::string levels;
  for (auto k : tw.levels()) levels += (levels.empty() ? "" : ", ") + std::to_string(k);
  return {std::move(doc), code, "levels [" + levels + "]"};
}

Outcome glue(const Params& p) {
  const auto config = io::gluing_config_from_json(io::read_file(p.config));
  const auto tw = io::tower_from_json(io::read_file(p.tower));
  const std::size_t index = p.entry.value_or(tw.entries.size());
  if (index < 1 || index > tw.entries.size()) throw DomainError("--entry is outside the tower");
  const TowerIndex& top = tw.entries[index - 1];
  std::map<int, TowerIndex> entries;
  for (const auto& chart : config.charts) {
    if (chart.rank > tw.r + 1)
      throw DomainError("chart " + std::to_string(chart.id) + " has rank " + std::to_string(chart.rank) +
                        " above the tower rank " + std::to_string(tw.r + 1));
    entries.emplace(chart.rank, face_entry(top, chart.rank));
  }
  try {
    const auto global = assemble_global(config.charts, config.gluings, entries);
    return {io::to_json(global), ok, std::to_string(config.gluings.size()) + " gluings compatible"};
  } catch (const CompatibilityError& e) {
    return {{{"error", e.what()}, {"witness", io::to_json(e.witness())}}, verdict_false, e.what()};
  }
}

Outcome render(const Params& p) {
  const auto t = read_triangulation(p.in);
  const auto svg = render_svg(t);
  std::ofstream file(p.out);
  if (!file) throw DomainError("cannot write " + p.out);
  file << svg;
  std::set<std::pair<int, int>> edges;
  for (const auto& c : t.cells)
    for (std::size_t a = 0; a < c.size(); ++a)
      for (std::size_t b = a + 1; b < c.size(); ++b) edges.emplace(std::min(c[a], c[b]), std::max(c[a], c[b]));
  return {{{"points", lattice_point_count(t.simplex())}, {"edges", edges.size()}, {"bytes", svg.size()}},
          ok,
          "wrote " + p.out};
}

// Resolved parameters of a verb, echoed in its output.
Json resolved_params(const std::string& verb, const Params& p) {
  Json j = Json::object();
  if (verb == "points" || verb == "enumerate" || verb == "symrefine" || verb == "mckay") j["n"] = p.n;
  if (verb != "fan" && verb != "verify" && verb != "glue" && verb != "render") j["r"] = p.r;
  if (verb == "enumerate") j["orbits"] = p.orbits;
  if (verb == "enumerate" || verb == "symrefine" || verb == "tower") j["max_points"] = p.max_points;
  if (verb == "symrefine" || verb == "tower") j["max_retry"] = p.max_retry;
  if (verb == "tower") {
    j["depth"] = p.depth;
    j["probe"] = p.probe.empty() ? Json(nullptr) : Json(p.probe);
  }
  if (verb == "fan") {
    j["smooth"] = p.smooth;
    j["crepant"] = p.crepant;
  }
  if (verb == "fan" || verb == "verify" || verb == "render" || verb == "mckay")
    j["in"] = p.in.empty() ? Json(nullptr) : Json(p.in);
  if (verb == "render") j["out"] = p.out;
  if (verb == "glue") {
    j["config"] = p.config;
    j["tower"] = p.tower;
    j["entry"] = p.entry ? Json(*p.entry) : Json(nullptr);
  }
  j["threads"] = thread_cap();
  return j;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Symmetric unimodular triangulations, toric fans and McKay rank audits", "stackyfan"};
  app.require_subcommand(1);
  Params p;
  std::map<std::string, std::function<Outcome(const Params&)>> verbs;

  auto add_rn = [&](CLI::App* sub) {
    sub->add_option("--r", p.r, "simplex dimension")->required()->check(CLI::Range(0, 6));
    sub->add_option("--n", p.n, "dilation level")->required()->check(CLI::PositiveNumber);
  };
  auto verb = [&](const std::string& name, const std::string& help, auto fn) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_flag("--timestamp", p.timestamp, "add a UTC timestamp to the output");
    verbs[name] = fn;
    return sub;
  };

  auto* pts = verb("points", "lattice points of n Delta^r", points);
  add_rn(pts);
  auto* en = verb("enumerate", "all unimodular triangulations of n Delta^r", enumerate);
  add_rn(en);
  en->add_flag("--orbits", p.orbits, "list S_{r+1}-orbit classes");
  en->add_option("--max-points", p.max_points, "refuse above this many lattice points");
  auto* sym = verb("symrefine", "symmetric unimodular refinement", symrefine);
  add_rn(sym);
  sym->add_option("--max-retry", p.max_retry, "dilation attempts")->check(CLI::PositiveNumber);
  sym->add_option("--max-points", p.max_points, "bound for the spanning arrangement");
  auto* fn = verb("fan", "cone over a triangulation", fan);
  fn->add_option("--in", p.in, "triangulation JSON")->required();
  fn->add_flag("--smooth", p.smooth, "certify smoothness");
  fn->add_flag("--crepant", p.crepant, "certify crepancy over the orthant");
  auto* ver = verb("verify", "validate a triangulation", verify);
  ver->add_option("--in", p.in, "triangulation JSON")->required();
  auto* mk = verb("mckay", "rank shadow of the McKay correspondence", mckay);
  add_rn(mk);
  mk->add_option("--in", p.in, "triangulation JSON (default: grid subdivision)");
  auto* tw = verb("tower", "cofinal refinement tower", tower);
  tw->add_option("--r", p.r, "simplex dimension")->required()->check(CLI::Range(0, 6));
  tw->add_option("--depth", p.depth, "number of entries")->required()->check(CLI::PositiveNumber);
  tw->add_option("--probe", p.probe, "triangulation JSON to locate in the tower");
  tw->add_option("--max-retry", p.max_retry, "dilation attempts per step")->check(CLI::PositiveNumber);
  auto* gl = verb("glue", "assemble charts from a tower entry", glue);
  gl->add_option("--config", p.config, "gluing config JSON")->required();
  gl->add_option("--tower", p.tower, "tower JSON")->required();
  gl->add_option("--entry", p.entry, "1-based tower entry (default: last)");
  auto* rd = verb("render", "SVG of a triangulation with r <= 2", render);
  rd->add_option("--in", p.in, "triangulation JSON")->required();
  rd->add_option("--out", p.out, "SVG path")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? ok : usage;
  }
  const auto* chosen = app.get_subcommands().front();
  const std::string name = chosen->get_name();
  Json params = resolved_params(name, p);
  Json doc;
  int code = ok;
  std::string summary;
  try {
    auto outcome = verbs.at(name)(p);
    doc = std::move(outcome.doc);
    code = outcome.code;
    summary = std::move(outcome.summary);
  } catch (const ParseError& e) {
    doc = {{"error", e.what()}, {"kind", "parse"}};
    code = usage;
    summary = e.what();
  } catch (const BoundError& e) {
    doc = {{"error", e.what()}, {"kind", "bound"}};
    code = usage;
    summary = e.what();
  } catch (const Error& e) {
    doc = {{"error", e.what()}, {"kind", "domain"}};
    code = usage;
    summary = e.what();
  }
  doc["verb"] = name;
  doc["params"] = std::move(params);
  if (p.timestamp) doc["timestamp"] = utc_now();
  out << io::dump(doc);
  err << name << ": " << summary << "\n";
  return code;
}

}  // namespace stackyfan::cli
