#include "vecmeasure/cli.hpp"

#include <fmt/format.h>

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>

#include "vecmeasure/convergence.hpp"
#include "vecmeasure/io.hpp"
#include "vecmeasure/rng.hpp"
#include "vecmeasure/verify.hpp"
#include "vecmeasure/zonotope.hpp"

namespace vecmeasure {

namespace {

using io::json;

struct Options {
  std::string norm = "euclidean";
  std::string set;
  std::string out;
  std::string format = "text";
  bool oracle = false;

  std::vector<std::string> inputs;

  std::uint64_t seed = 42;
  std::size_t trials = 500;
  std::optional<double> tol;
  std::size_t threads = 0;

  double eps = 1e-3;
  std::size_t nodes = 10000;
  std::size_t dim = 2;

  std::size_t count = 100;
  std::size_t directions = 64;
  double resolution = 1.0;
  std::size_t window = 0;
};

// "l1", "l4", "linf" and the bare kind names are accepted as shorthands.
Seminorm parse_norm(const std::string& arg) {
  if (arg == "euclidean" || arg == "l2") return Seminorm::euclidean();
  if (arg == "sum_of_circles") return Seminorm::sum_of_circles();
  if (arg == "linf") return Seminorm::lp(std::numeric_limits<double>::infinity());
  if (arg.size() > 1 && arg[0] == 'l' && arg.find_first_not_of("0123456789.", 1) == std::string::npos) {
    const double p = std::stod(arg.substr(1));
    if (!(p >= 1.0)) throw Error(ErrorCode::InvalidArgument, "lp exponent must be >= 1");
    return Seminorm::lp(p);
  }
  return io::norm_from_json(io::load_inline_or_file(arg));
}

MeasurableSet parse_set(const std::string& arg) {
  if (arg.empty()) return MeasurableSet::all();
  return io::set_from_json(io::load_inline_or_file(arg));
}

void emit(const Options& o, std::ostream& out, const std::string& text) {
  if (o.out.empty()) {
    out << text;
    return;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f) throw Error(ErrorCode::InvalidArgument, "cannot write " + o.out);
  f << text;
}

bool wants_json(const Options& o) { return o.format == "json"; }

ConvexPolygon body_2d(const json& j) {
  if (j.is_object() && j.contains("vertices")) return io::polygon_from_json(j);
  const VectorMeasure mu = io::measure_from_json(j);
  if (mu.dim() != 2) throw Error(ErrorCode::DimError, "planar geometry requires d = 2");
  return vertices_2d(range(mu));
}

int cmd_tv(const Options& o, std::ostream& out, std::ostream& err) {
  const VectorMeasure mu = io::measure_from_json(io::load_inline_or_file(o.inputs.at(0)));
  const Seminorm n = parse_norm(o.norm);
  const MeasurableSet a = parse_set(o.set);
  const double tv = total_variation(mu, a, n);
  std::optional<double> oracle;
  if (o.oracle) {
    std::size_t inside = 0;
    for (const Atom& at : mu.atoms()) inside += a.contains(at.site) ? 1 : 0;
    if (inside <= kOracleAtomCap) {
      oracle = tv_bruteforce_oracle(mu, a, n, kOracleAtomCap);
    } else {
      err << fmt::format("oracle skipped: {} atoms exceed the cap of {}\n", inside, kOracleAtomCap);
    }
  }
  if (wants_json(o)) {
    json j{{"tv", tv}};
    if (oracle) {
      j["oracle"] = *oracle;
      j["gap"] = std::abs(tv - *oracle);
    }
    emit(o, out, io::dump(j) + "\n");
    return 0;
  }
  std::string text = io::format_real(tv) + "\n";
  if (oracle) text += "oracle " + io::format_real(*oracle) + "\ngap " + io::format_real(std::abs(tv - *oracle)) + "\n";
  emit(o, out, text);
  return 0;
}

int cmd_range(const Options& o, std::ostream& out) {
  const VectorMeasure mu = io::measure_from_json(io::load_inline_or_file(o.inputs.at(0)));
  const Zonotope z = range(mu, parse_set(o.set));
  json j = io::to_json(z);
  if (z.dim() == 2) j["vertices"] = io::to_json(vertices_2d(z))["vertices"];
  emit(o, out, io::dump(j) + "\n");
  return 0;
}

int cmd_perimeter(const Options& o, std::ostream& out) {
  const json input = io::load_inline_or_file(o.inputs.at(0));
  const Seminorm n = parse_norm(o.norm);
  const double per = perimeter(body_2d(input), n);
  if (wants_json(o)) {
    json j{{"perimeter", per}};
    if (!input.contains("vertices")) j["mass"] = total_variation(io::measure_from_json(input), n);
    emit(o, out, io::dump(j) + "\n");
  } else {
    emit(o, out, io::format_real(per) + "\n");
  }
  return 0;
}

std::optional<ZonalMeasure> exact_l1(const Seminorm& n, std::size_t d) {
  const auto* lp = std::get_if<Seminorm::WeightedLp>(&n.data());
  if (!lp || lp->p != 1.0) return std::nullopt;
  std::vector<ZonalAtom> atoms;
  for (std::size_t i = 0; i < d; ++i) {
    const double w = lp->weights.empty() ? 1.0 : lp->weights[i];
    if (w > 0.0) atoms.push_back({DualVec::unit(d, i), w});
  }
  return ZonalMeasure(d, std::move(atoms));
}

int cmd_zonal(const Options& o, std::ostream& out) {
  const Seminorm n = parse_norm(o.norm);
  const std::size_t d = n.dim().value_or(o.dim);
  n.check_dim(d);
  json j;
  ZonalMeasure sigma;
  if (n.kind() == NormKind::Euclidean) {
    EuclideanZonal ez = zonal_euclidean(d, o.nodes);
    sigma = std::move(ez.sigma);
    j = io::to_json(sigma);
    j["kappa"] = ez.kappa;
  } else if (auto l1 = exact_l1(n, d)) {
    sigma = std::move(*l1);
    j = io::to_json(sigma);
  } else if (n.kind() == NormKind::Polygonal && d == 2) {
    sigma = zonal_from_polygonal_2d(n);
    j = io::to_json(sigma);
  } else if (d == 2) {
    ZonalApproximation approx = zonal_approx_2d(n, o.eps);
    sigma = std::move(approx.sigma);
    j = io::to_json(sigma);
    j["boundary_samples"] = approx.boundary_samples;
  } else {
    throw Error(ErrorCode::WrongKind, "no zonal construction for this norm in dimension " + std::to_string(d));
  }
  if (d == 2) j["max_rel_error"] = validate_zonal(n, sigma, 360, 1.0).max_rel_error;
  emit(o, out, io::dump(j) + "\n");
  return 0;
}

int cmd_hausdorff(const Options& o, std::ostream& out) {
  const json a = io::load_inline_or_file(o.inputs.at(0));
  const json b = io::load_inline_or_file(o.inputs.at(1));
  double dh = 0.0;
  if (a.contains("vertices") || b.contains("vertices")) {
    dh = hausdorff_distance(body_2d(a), body_2d(b));
  } else {
    dh = hausdorff_distance(range(io::measure_from_json(a)), range(io::measure_from_json(b)));
  }
  emit(o, out, wants_json(o) ? io::dump(json{{"hausdorff", dh}}) + "\n" : io::format_real(dh) + "\n");
  return 0;
}

int cmd_scenario(const Options& o, std::ostream& out) {
  const std::string& arg = o.inputs.at(0);
  const auto names = builtin_scenario_names();
  Scenario s = [&] {
    if (std::find(names.begin(), names.end(), arg) != names.end()) {
      ScenarioParams params;
      params.norm = parse_norm(o.norm);
      return builtin_scenario(arg, params, o.count);
    }
    return io::scenario_from_json(io::load_inline_or_file(arg));
  }();
  DiagnosticsOptions opts;
  opts.directions = o.directions;
  opts.resolution = o.resolution;
  opts.window = o.window;
  if (o.tol) opts.tol = *o.tol;
  const DiagnosticsReport report = run_diagnostics(s, opts);
  emit(o, out, o.format == "csv" ? io::to_csv(report) : io::dump(io::to_json(report)) + "\n");
  return 0;
}

int cmd_verify(const Options& o, std::ostream& out) {
  VerifyConfig cfg;
  cfg.seed = o.seed;
  cfg.trials = o.trials;
  cfg.tol = o.tol;
  cfg.threads = o.threads;
  const std::string& suite = o.inputs.at(0);
  const std::vector<SuiteReport> reports = run_suites(suite, cfg);
  bool passed = true;
  for (const SuiteReport& r : reports) passed = passed && r.passed();

  json j;
  if (suite == "all") {
    j["suite"] = "all";
    j["passed"] = passed;
    json parts = json::array();
    for (const SuiteReport& r : reports) parts.push_back(r.to_json());
    j["suites"] = std::move(parts);
  } else {
    j = reports.front().to_json();
  }

  std::string summary;
  for (const SuiteReport& r : reports) {
    summary += fmt::format("{} {} seed={} trials={}\n", r.passed() ? "PASS" : "FAIL", r.suite, r.seed, r.trials);
    for (const CheckStat& c : r.checks) {
      summary += fmt::format("  {:<28} {:>6} evaluated {:>4} failed  max_error {} tol {}\n", c.name, c.evaluated,
                             c.failures, io::format_real(c.max_error), io::format_real(c.tolerance));
    }
    if (!r.counterexamples.empty()) {
      const Counterexample& c = r.counterexamples.front();
      summary += fmt::format("  first counterexample (trial {}, {}):\n{}\n", c.trial, c.check, io::dump(c.instance));
    }
  }

  if (o.format == "json" || !o.out.empty()) {
    emit(o, out, io::dump(j) + "\n");
    if (!o.out.empty()) out << summary;
  } else {
    out << summary;
  }
  return passed ? 0 : 1;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Total variation, ranges and zonal representations of atomic vector measures", "vecmeasure"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string("vecmeasure 1.0 rng ") + Rng::kAlgorithm);

  const auto common = [&](CLI::App* sub) {
    sub->add_option("--out", o.out, "Write the result to this path instead of stdout");
    sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "json", "csv"}));
  };
  const auto with_norm = [&](CLI::App* sub) {
    sub->add_option("--norm", o.norm, "Seminorm: inline JSON, a JSON file, or euclidean|l1|l4|linf|sum_of_circles");
  };

  CLI::App* tv = app.add_subcommand("tv", "Total variation of a measure");
  tv->add_option("measure", o.inputs, "Measure JSON (inline or file)")->required()->expected(1);
  with_norm(tv);
  tv->add_option("--set", o.set, "Measurable set JSON (inline or file)");
  tv->add_flag("--oracle", o.oracle, "Also run the partition oracle (at most 10 atoms)");
  common(tv);

  CLI::App* rg = app.add_subcommand("range", "Range zonotope of a measure");
  rg->add_option("measure", o.inputs, "Measure JSON (inline or file)")->required()->expected(1);
  rg->add_option("--set", o.set, "Measurable set JSON (inline or file)");
  common(rg);

  CLI::App* per = app.add_subcommand("perimeter", "Anisotropic perimeter of a polygon or of a measure's range");
  per->add_option("input", o.inputs, "Measure or polygon JSON")->required()->expected(1);
  with_norm(per);
  common(per);

  CLI::App* zn = app.add_subcommand("zonal", "Zonal representation of a norm");
  with_norm(zn);
  zn->add_option("--eps", o.eps, "Relative accuracy for inscribed approximations")->check(CLI::PositiveNumber);
  zn->add_option("--nodes", o.nodes, "Quadrature nodes for the Euclidean norm")->check(CLI::Range(4, 100000000));
  zn->add_option("--dim", o.dim, "Dimension when the norm does not fix one")->check(CLI::Range(1, 3));
  common(zn);

  CLI::App* hd = app.add_subcommand("hausdorff", "Hausdorff distance between two ranges or polygons");
  hd->add_option("inputs", o.inputs, "Two measure or polygon JSON inputs")->required()->expected(2);
  common(hd);

  CLI::App* sc = app.add_subcommand("scenario", "Convergence diagnostics for a scenario");
  sc->add_option("scenario", o.inputs, "Scenario JSON (inline or file) or a built-in name")->required()->expected(1);
  with_norm(sc);
  sc->add_option("--N", o.count, "Number of terms for a built-in name")->check(CLI::PositiveNumber);
  sc->add_option("--directions", o.directions, "Projected-variation directions")->check(CLI::PositiveNumber);
  sc->add_option("--resolution", o.resolution, "Hat-dictionary resolution")->check(CLI::PositiveNumber);
  sc->add_option("--window", o.window, "Trailing rows used for verdicts (0: all)");
  sc->add_option("--tol", o.tol, "Verdict tolerance")->check(CLI::PositiveNumber);
  common(sc);

  CLI::App* vf = app.add_subcommand("verify", "Run a randomized verification suite");
  vf->add_option("suite", o.inputs, "Suite name or 'all'")->required()->expected(1);
  vf->add_option("--seed", o.seed, "RNG seed");
  vf->add_option("--trials", o.trials, "Trials per suite")->check(CLI::PositiveNumber);
  vf->add_option("--tol", o.tol, "Tolerance for exact checks")->check(CLI::PositiveNumber);
  vf->add_option("--threads", o.threads, "Worker threads (0: all cores, capped by VECMEASURE_THREADS)");
  common(vf);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (vf->parsed()) {
      const auto names = suite_names();
      if (o.inputs.at(0) != "all" && std::find(names.begin(), names.end(), o.inputs.at(0)) == names.end())
        throw Error(ErrorCode::InvalidArgument, "unknown suite '" + o.inputs.at(0) + "'");
      return cmd_verify(o, out);
    }
    if (tv->parsed()) return cmd_tv(o, out, err);
    if (rg->parsed()) return cmd_range(o, out);
    if (per->parsed()) return cmd_perimeter(o, out);
    if (zn->parsed()) return cmd_zonal(o, out);
    if (hd->parsed()) return cmd_hausdorff(o, out);
    if (sc->parsed()) return cmd_scenario(o, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace vecmeasure
