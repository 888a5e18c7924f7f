#pragma once

#include "stackyfan/fan.hpp"
#include "stackyfan/mckay.hpp"
#include "stackyfan/symmetric_refinement.hpp"
#include "stackyfan/tower.hpp"
#include "stackyfan/triangulation.hpp"

#include <nlohmann/json.hpp>

#include <string>
#include <vector>

namespace stackyfan::io {

using Json = nlohmann::json;

/// Parses text; syntax errors become ParseError with line and column.
Json parse(const std::string& text, const std::string& source = "input");
Json read_file(const std::string& path);
/// Two-space indented, keys sorted, trailing newline.
std::string dump(const Json& j);

/// Fits-in-int64 integers become JSON numbers, larger ones decimal strings.
Json to_json(const Integer& a);
Integer integer_from_json(const Json& j);

/// Arrays of arrays of decimal strings.
Json to_json(const IntMatrix& m);
IntMatrix matrix_from_json(const Json& j);

Json to_json(const SimplexPoint& p);

/// {"r", "n", "points", "cells"}; points in canonical order.
Json to_json(const Triangulation& t);
/// Cells index "points" when present, the canonical order otherwise.
Triangulation triangulation_from_json(const Json& j);

Json to_json(const ValidityReport& report);

Json to_json(const Fan& f);
Fan fan_from_json(const Json& j);
Json to_json(const StackyFan& f);
StackyFan stacky_fan_from_json(const Json& j);
Json to_json(const SmoothnessReport& report);

Json to_json(const RefinementCertificate& c);
RefinementCertificate certificate_from_json(const Json& j);

Json to_json(const SymmetricCertificates& c);
Json to_json(const SymmetricRefinementResult& result);

Json to_json(const CofinalTower& tower);
CofinalTower tower_from_json(const Json& j);

struct GluingConfig {
  std::vector<LocalChart> charts;
  std::vector<FaceGluing> gluings;
};

Json to_json(const GluingConfig& config);
GluingConfig gluing_config_from_json(const Json& j);
Json to_json(const CompatibilityWitness& w);
Json to_json(const GlobalSubdivision& g);

/// One report line: {"cells", "group_order", "n", "r", "reason", "shadow",
/// "stacky_order", "verdict"}.
Json to_json(const McKayReport& report);

}  // namespace stackyfan::io
