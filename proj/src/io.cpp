#include "vecmeasure/io.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace vecmeasure::io {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
  throw Error(ErrorCode::ParseError, (path.empty() ? std::string("<root>") : path) + ": " + msg);
}

const json& require_object(const json& j, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  return j;
}

void reject_unknown(const json& j, std::initializer_list<std::string_view> allowed, const std::string& path) {
  for (const auto& [key, _] : j.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) fail(path, "unknown field '" + key + "'");
  }
}

const json& field(const json& j, const char* key, const std::string& path) {
  const auto it = j.find(key);
  if (it == j.end()) fail(path, std::string("missing field '") + key + "'");
  return *it;
}

std::string sub(const std::string& path, std::string_view key) {
  return path.empty() ? std::string(key) : path + "." + std::string(key);
}

std::string at(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

double number(const json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  const double x = j.get<double>();
  if (!std::isfinite(x)) fail(path, "expected a finite number");
  return x;
}

std::size_t count(const json& j, const std::string& path) {
  if (!j.is_number_integer() || j.get<long long>() < 0) fail(path, "expected a non-negative integer");
  return j.get<std::size_t>();
}

std::vector<double> numbers(const json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array of numbers");
  std::vector<double> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(number(j[i], at(path, i)));
  return out;
}

template <class V>
V vector_of(const json& j, const std::string& path, std::size_t expected_dim = 0) {
  const auto xs = numbers(j, path);
  if (xs.empty() || xs.size() > kMaxDim) fail(path, "expected 1 to 3 coordinates");
  if (expected_dim != 0 && xs.size() != expected_dim)
    fail(path, "expected " + std::to_string(expected_dim) + " coordinates, got " + std::to_string(xs.size()));
  return V(std::span<const double>(xs));
}

json coords(std::span<const double> xs) {
  json a = json::array();
  for (double x : xs) a.push_back(x);
  return a;
}

void dump_into(std::string& out, const json& j, int indent, int depth) {
  const auto newline = [&](int d) {
    if (indent < 0) return;
    out += '\n';
    out.append(static_cast<std::size_t>(indent * d), ' ');
  };
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        out += json(key).dump();
        out += indent < 0 ? ":" : ": ";
        dump_into(out, value, indent, depth + 1);
      }
      newline(depth);
      out += '}';
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += '[';
      bool first = true;
      for (const auto& value : j) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        dump_into(out, value, indent, depth + 1);
      }
      newline(depth);
      out += ']';
      return;
    }
    case json::value_t::number_float: {
      const double x = j.get<double>();
      out += std::isfinite(x) ? format_real(x) : "\"" + format_real(x) + "\"";
      return;
    }
    default: out += j.dump(); return;
  }
}

std::pair<std::size_t, std::size_t> line_col(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

std::optional<Vec> optional_vec(const json& params, const char* key, const std::string& path) {
  const auto it = params.find(key);
  if (it == params.end()) return std::nullopt;
  return vector_of<Vec>(*it, sub(path, key));
}

std::optional<Site> optional_site(const json& params, const char* key, const std::string& path) {
  const auto it = params.find(key);
  if (it == params.end()) return std::nullopt;
  auto xs = numbers(*it, sub(path, key));
  if (xs.empty()) fail(sub(path, key), "expected at least one coordinate");
  return xs;
}

VectorMeasure measure_at(const json& j, const std::string& path) {
  require_object(j, path);
  reject_unknown(j, {"space_dim", "dim", "atoms"}, path);
  const std::size_t m = count(field(j, "space_dim", path), sub(path, "space_dim"));
  const std::size_t d = count(field(j, "dim", path), sub(path, "dim"));
  if (m == 0) fail(sub(path, "space_dim"), "must be positive");
  if (d == 0 || d > kMaxDim) fail(sub(path, "dim"), "must be 1, 2 or 3");
  const json& atoms = field(j, "atoms", path);
  const std::string apath = sub(path, "atoms");
  if (!atoms.is_array()) fail(apath, "expected an array");
  std::vector<Atom> out;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    const std::string ipath = at(apath, i);
    const json& a = require_object(atoms[i], ipath);
    reject_unknown(a, {"x", "v"}, ipath);
    Site x = numbers(field(a, "x", ipath), sub(ipath, "x"));
    if (x.size() != m) fail(sub(ipath, "x"), "expected " + std::to_string(m) + " coordinates");
    out.push_back({std::move(x), vector_of<Vec>(field(a, "v", ipath), sub(ipath, "v"), d)});
  }
  return VectorMeasure(m, d, std::move(out));
}

Seminorm norm_at(const json& j, const std::string& path) {
  require_object(j, path);
  const json& kind_j = field(j, "kind", path);
  if (!kind_j.is_string()) fail(sub(path, "kind"), "expected a string");
  const auto kind = kind_j.get<std::string>();
  if (kind == "euclidean") {
    reject_unknown(j, {"kind"}, path);
    return Seminorm::euclidean();
  }
  if (kind == "sum_of_circles") {
    reject_unknown(j, {"kind"}, path);
    return Seminorm::sum_of_circles();
  }
  if (kind == "lp") {
    reject_unknown(j, {"kind", "p", "weights"}, path);
    const json& pj = field(j, "p", path);
    double p = 0.0;
    if (pj.is_string()) {
      const auto s = pj.get<std::string>();
      if (s != "inf" && s != "infinity") fail(sub(path, "p"), "expected a number >= 1 or \"inf\"");
      p = std::numeric_limits<double>::infinity();
    } else {
      p = number(pj, sub(path, "p"));
    }
    if (!(p >= 1.0)) fail(sub(path, "p"), "exponent must be >= 1");
    std::vector<double> weights;
    if (const auto it = j.find("weights"); it != j.end()) {
      weights = numbers(*it, sub(path, "weights"));
      if (weights.empty() || weights.size() > kMaxDim) fail(sub(path, "weights"), "expected 1 to 3 weights");
      for (std::size_t i = 0; i < weights.size(); ++i)
        if (weights[i] < 0.0) fail(at(sub(path, "weights"), i), "weights must be >= 0");
    }
    return Seminorm::weighted_lp(p, std::move(weights));
  }
  if (kind == "polygonal") {
    reject_unknown(j, {"kind", "generators"}, path);
    const json& gens = field(j, "generators", path);
    const std::string gpath = sub(path, "generators");
    if (!gens.is_array() || gens.empty()) fail(gpath, "expected a non-empty array of vectors");
    std::vector<DualVec> out;
    for (std::size_t i = 0; i < gens.size(); ++i)
      out.push_back(vector_of<DualVec>(gens[i], at(gpath, i), out.empty() ? 0 : out.front().dim()));
    return Seminorm::polygonal(std::move(out));
  }
  fail(sub(path, "kind"), "unknown norm kind '" + kind + "'");
}

}  // namespace

std::string format_real(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  std::string s = fmt::format("{:.17g}", x);
  if (s.find_first_of(".e") == std::string::npos) s += ".0";
  return s;
}

std::string dump(const json& j, int indent) {
  std::string out;
  dump_into(out, j, indent, 0);
  return out;
}

json parse_text(const std::string& text, const std::string& origin) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    const auto [line, col] = line_col(text, e.byte);
    throw Error(ErrorCode::ParseError, fmt::format("{}:{}:{}: invalid JSON ({})", origin, line, col, e.what()));
  }
}

json load_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_text(buf.str(), path.string());
}

json load_inline_or_file(const std::string& arg) {
  const auto first = arg.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && (arg[first] == '{' || arg[first] == '[')) return parse_text(arg, "<inline>");
  return load_file(arg);
}

Seminorm norm_from_json(const json& j) { return norm_at(j, "norm"); }

json to_json(const Seminorm& n) {
  json j;
  j["kind"] = std::string(to_string(n.kind()));
  if (const auto* lp = std::get_if<Seminorm::WeightedLp>(&n.data())) {
    if (std::isinf(lp->p)) {
      j["p"] = "inf";
    } else {
      j["p"] = lp->p;
    }
    if (!lp->weights.empty()) j["weights"] = coords(lp->weights);
  } else if (const auto* poly = std::get_if<Seminorm::Polygonal>(&n.data())) {
    json gens = json::array();
    for (const DualVec& g : poly->generators) gens.push_back(coords(g.coords()));
    j["generators"] = std::move(gens);
  }
  return j;
}

VectorMeasure measure_from_json(const json& j) { return measure_at(j, ""); }

json to_json(const VectorMeasure& mu) {
  json j;
  j["space_dim"] = mu.space_dim();
  j["dim"] = mu.dim();
  json atoms = json::array();
  for (const Atom& a : mu.atoms()) {
    json aj;
    aj["x"] = coords(a.site);
    aj["v"] = coords(a.value.coords());
    atoms.push_back(std::move(aj));
  }
  j["atoms"] = std::move(atoms);
  return j;
}

MeasurableSet set_from_json(const json& j) {
  const std::string path = "set";
  require_object(j, path);
  reject_unknown(j, {"all", "boxes", "sites"}, path);
  if (j.size() != 1) fail(path, "expected exactly one of 'all', 'boxes', 'sites'");
  if (const auto it = j.find("all"); it != j.end()) {
    if (!it->is_boolean() || !it->get<bool>()) fail(sub(path, "all"), "expected true");
    return MeasurableSet::all();
  }
  if (const auto it = j.find("boxes"); it != j.end()) {
    const std::string bpath = sub(path, "boxes");
    if (!it->is_array()) fail(bpath, "expected an array");
    std::vector<Box> boxes;
    for (std::size_t i = 0; i < it->size(); ++i) {
      const std::string ipath = at(bpath, i);
      const json& b = require_object((*it)[i], ipath);
      reject_unknown(b, {"lo", "hi"}, ipath);
      Box box{numbers(field(b, "lo", ipath), sub(ipath, "lo")), numbers(field(b, "hi", ipath), sub(ipath, "hi"))};
      if (box.lo.size() != box.hi.size()) fail(ipath, "lo and hi differ in dimension");
      boxes.push_back(std::move(box));
    }
    return MeasurableSet::boxes(std::move(boxes));
  }
  const json& s = j.at("sites");
  const std::string spath = sub(path, "sites");
  if (!s.is_array()) fail(spath, "expected an array of points");
  std::vector<Site> sites;
  for (std::size_t i = 0; i < s.size(); ++i) sites.push_back(numbers(s[i], at(spath, i)));
  return MeasurableSet::sites(std::move(sites));
}

json to_json(const MeasurableSet& a) {
  json j;
  std::visit(
      [&](const auto& d) {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, MeasurableSet::All>) {
          j["all"] = true;
        } else if constexpr (std::is_same_v<T, MeasurableSet::Boxes>) {
          json boxes = json::array();
          for (const Box& b : d.boxes) boxes.push_back(json{{"lo", coords(b.lo)}, {"hi", coords(b.hi)}});
          j["boxes"] = std::move(boxes);
        } else {
          json sites = json::array();
          for (const Site& s : d.sites) sites.push_back(coords(s));
          j["sites"] = std::move(sites);
        }
      },
      a.data());
  return j;
}

ConvexPolygon polygon_from_json(const json& j) {
  const std::string path = "polygon";
  require_object(j, path);
  reject_unknown(j, {"vertices"}, path);
  const json& vs = field(j, "vertices", path);
  const std::string vpath = sub(path, "vertices");
  if (!vs.is_array() || vs.empty()) fail(vpath, "expected a non-empty array of points");
  std::vector<Vec> pts;
  for (std::size_t i = 0; i < vs.size(); ++i) pts.push_back(vector_of<Vec>(vs[i], at(vpath, i), 2));
  return ConvexPolygon::hull(pts);
}

json to_json(const ConvexPolygon& p) {
  json vs = json::array();
  for (const Vec& v : p.vertices()) vs.push_back(coords(v.coords()));
  return json{{"vertices", std::move(vs)}};
}

ZonalMeasure zonal_from_json(const json& j) {
  const std::string path = "zonal";
  require_object(j, path);
  reject_unknown(j, {"dim", "atoms", "kappa", "max_rel_error", "boundary_samples"}, path);
  const std::size_t d = count(field(j, "dim", path), sub(path, "dim"));
  if (d == 0 || d > kMaxDim) fail(sub(path, "dim"), "must be 1, 2 or 3");
  const json& atoms = field(j, "atoms", path);
  const std::string apath = sub(path, "atoms");
  if (!atoms.is_array()) fail(apath, "expected an array");
  std::vector<ZonalAtom> out;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    const std::string ipath = at(apath, i);
    const json& a = require_object(atoms[i], ipath);
    reject_unknown(a, {"eta", "weight"}, ipath);
    const double w = number(field(a, "weight", ipath), sub(ipath, "weight"));
    if (!(w > 0.0)) fail(sub(ipath, "weight"), "weights must be positive");
    out.push_back({vector_of<DualVec>(field(a, "eta", ipath), sub(ipath, "eta"), d), w});
  }
  return ZonalMeasure(d, std::move(out));
}

json to_json(const ZonalMeasure& sigma) {
  json atoms = json::array();
  for (const ZonalAtom& a : sigma.atoms()) atoms.push_back(json{{"eta", coords(a.eta.coords())}, {"weight", a.weight}});
  json j;
  j["dim"] = sigma.dim();
  j["atoms"] = std::move(atoms);
  return j;
}

json to_json(const Zonotope& z) {
  json gens = json::array();
  for (const Vec& g : z.generators()) gens.push_back(coords(g.coords()));
  json j;
  j["dim"] = z.dim();
  j["offset"] = coords(z.offset().coords());
  j["generators"] = std::move(gens);
  return j;
}

Scenario scenario_from_json(const json& j) {
  const std::string path = "scenario";
  require_object(j, path);
  if (j.contains("builtin")) {
    reject_unknown(j, {"builtin", "params", "norm", "N"}, path);
    const json& name = j.at("builtin");
    if (!name.is_string()) fail(sub(path, "builtin"), "expected a string");
    ScenarioParams params;
    if (const auto it = j.find("params"); it != j.end()) {
      const std::string ppath = sub(path, "params");
      require_object(*it, ppath);
      reject_unknown(*it, {"v", "w", "u", "x"}, ppath);
      params.v = optional_vec(*it, "v", ppath);
      params.w = optional_vec(*it, "w", ppath);
      params.u = optional_site(*it, "u", ppath);
      params.x = optional_site(*it, "x", ppath);
    }
    if (const auto it = j.find("norm"); it != j.end()) params.norm = norm_at(*it, sub(path, "norm"));
    std::size_t n = 100;
    if (const auto it = j.find("N"); it != j.end()) n = count(*it, sub(path, "N"));
    return builtin_scenario(name.get<std::string>(), params, n);
  }

  reject_unknown(j, {"name", "norm", "sequence", "limit"}, path);
  std::string name = "custom";
  if (const auto it = j.find("name"); it != j.end()) {
    if (!it->is_string()) fail(sub(path, "name"), "expected a string");
    name = it->get<std::string>();
  }
  Seminorm norm = Seminorm::euclidean();
  if (const auto it = j.find("norm"); it != j.end()) norm = norm_at(*it, sub(path, "norm"));
  const json& seq = field(j, "sequence", path);
  const std::string spath = sub(path, "sequence");
  if (!seq.is_array()) fail(spath, "expected an array of measures");
  std::vector<VectorMeasure> sequence;
  for (std::size_t i = 0; i < seq.size(); ++i) sequence.push_back(measure_at(seq[i], at(spath, i)));
  Scenario s{std::move(name), std::move(sequence), measure_at(field(j, "limit", path), sub(path, "limit")),
             std::move(norm)};
  validate_scenario(s);
  return s;
}

json to_json(const DiagnosticsReport& report) {
  json j;
  j["name"] = report.name;
  j["norm"] = report.norm;
  j["limit_mass"] = report.limit_mass;
  j["options"] = json{{"directions", report.options.directions},
                      {"resolution", report.options.resolution},
                      {"window", report.options.window},
                      {"tol", report.options.tol}};
  j["verdicts"] = json{{"wide", to_string(report.verdicts.wide)},
                       {"mass", to_string(report.verdicts.mass)},
                       {"strict", to_string(report.verdicts.strict)},
                       {"range", to_string(report.verdicts.range)},
                       {"projected", to_string(report.verdicts.projected)},
                       {"range_lsc", to_string(report.verdicts.range_lsc)}};
  json dirs = json::array();
  for (const DualVec& d : report.directions) dirs.push_back(coords(d.coords()));
  j["directions"] = std::move(dirs);
  json rows = json::array();
  for (const DiagnosticsRow& r : report.rows) {
    json rj;
    rj["n"] = r.n;
    rj["wide_proxy"] = r.wide_proxy;
    rj["mass"] = r.mass;
    rj["mass_gap"] = r.mass_gap;
    rj["range_dh"] = r.range_dh;
    rj["range_lsc_deficiency"] = r.range_lsc_deficiency;
    rj["projected_gaps"] = coords(r.projected_gaps);
    rows.push_back(std::move(rj));
  }
  j["rows"] = std::move(rows);
  return j;
}

std::string to_csv(const DiagnosticsReport& report) {
  std::string out = "n,wide_proxy,mass,mass_gap,range_dh,range_lsc_deficiency,max_projected_gap";
  for (std::size_t k = 0; k < report.directions.size(); ++k) out += fmt::format(",proj_gap_{}", k);
  out += '\n';
  for (const DiagnosticsRow& r : report.rows) {
    const double max_gap =
        r.projected_gaps.empty() ? 0.0 : *std::max_element(r.projected_gaps.begin(), r.projected_gaps.end());
    out += fmt::format("{},{},{},{},{},{},{}", r.n, format_real(r.wide_proxy), format_real(r.mass),
                       format_real(r.mass_gap), format_real(r.range_dh), format_real(r.range_lsc_deficiency),
                       format_real(max_gap));
    for (double g : r.projected_gaps) out += "," + format_real(g);
    out += '\n';
  }
  return out;
}

}  // namespace vecmeasure::io
