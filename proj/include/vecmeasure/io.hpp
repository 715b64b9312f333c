#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"
#include "vecmeasure/convergence.hpp"
#include "vecmeasure/measures.hpp"
#include "vecmeasure/norms.hpp"
#include "vecmeasure/zonotope.hpp"

namespace vecmeasure::io {

using json = nlohmann::ordered_json;

/// Shortest faithful text for a double with 17 significant digits; integral
/// values keep a trailing ".0". Non-finite values print as inf/-inf/nan.
std::string format_real(double x);

/// Serialises JSON with every floating-point number written by format_real.
/// Non-finite numbers become the strings "inf", "-inf" or "nan".
std::string dump(const json& j, int indent = 2);

json parse_text(const std::string& text, const std::string& origin);
json load_file(const std::filesystem::path& path);
/// Inline JSON when the argument starts with '{' or '[', otherwise a file path.
json load_inline_or_file(const std::string& arg);

// Schemas. Parsers reject unknown fields and report the offending field path
// with ParseError.

/// {"kind":"euclidean"} | {"kind":"lp","p":number|"inf","weights":[...]?} |
/// {"kind":"polygonal","generators":[[...],...]} | {"kind":"sum_of_circles"}
Seminorm norm_from_json(const json& j);
json to_json(const Seminorm& n);

/// {"space_dim":m, "dim":d, "atoms":[{"x":[...], "v":[...]}, ...]}
VectorMeasure measure_from_json(const json& j);
json to_json(const VectorMeasure& mu);

/// {"all":true} | {"boxes":[{"lo":[...],"hi":[...]}]} | {"sites":[[...],...]}
MeasurableSet set_from_json(const json& j);
json to_json(const MeasurableSet& a);

/// {"vertices":[[x,y],...]}; the convex hull of the listed points.
ConvexPolygon polygon_from_json(const json& j);
json to_json(const ConvexPolygon& p);

/// {"dim":d, "atoms":[{"eta":[...], "weight":w}, ...]}
ZonalMeasure zonal_from_json(const json& j);
json to_json(const ZonalMeasure& sigma);

json to_json(const Zonotope& z);

/// {"name":..., "norm":{...}, "sequence":[measure,...], "limit":measure} or
/// {"builtin":"dirac_split", "params":{"v","w","u","x"}?, "norm":{...}?, "N":100}
Scenario scenario_from_json(const json& j);

json to_json(const DiagnosticsReport& report);
/// One row per n: n, wide_proxy, mass, mass_gap, range_dh,
/// range_lsc_deficiency, max_projected_gap, then one column per direction.
std::string to_csv(const DiagnosticsReport& report);

}  // namespace vecmeasure::io
