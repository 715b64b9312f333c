#include "vecmeasure/convergence.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace vecmeasure {

namespace {

constexpr std::size_t kMaxDictionary = 200000;

double hat(const Site& center, const Site& x, double h) {
  double value = 1.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    value *= std::max(0.0, 1.0 - std::abs(x[k] - center[k]) / h);
    if (value == 0.0) break;
  }
  return value;
}

Vec integrate(const Site& center, const VectorMeasure& mu, double h) {
  Vec s = Vec::zero(mu.dim());
  for (const Atom& at : mu.atoms()) {
    const double phi = hat(center, at.site, h);
    if (phi != 0.0) s += phi * at.value;
  }
  return s;
}

std::optional<Box> bounding_box(std::span<const VectorMeasure* const> measures, std::size_t m) {
  Box box{Site(m, std::numeric_limits<double>::infinity()), Site(m, -std::numeric_limits<double>::infinity())};
  bool any = false;
  for (const VectorMeasure* mu : measures) {
    for (const Atom& at : mu->atoms()) {
      any = true;
      for (std::size_t k = 0; k < m; ++k) {
        box.lo[k] = std::min(box.lo[k], at.site[k]);
        box.hi[k] = std::max(box.hi[k], at.site[k]);
      }
    }
  }
  if (!any) return std::nullopt;
  return box;
}

Verdict combine(std::initializer_list<Verdict> parts) {
  bool all_converging = true;
  for (Verdict v : parts) {
    if (v == Verdict::NotConverging) return Verdict::NotConverging;
    if (v != Verdict::Converging) all_converging = false;
  }
  return all_converging ? Verdict::Converging : Verdict::Inconclusive;
}

Site shifted(const Site& x, const Site& u, double t) {
  Site out(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) out[k] = x[k] + u[k] * t;
  return out;
}

}  // namespace

std::string_view to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::Converging: return "converging";
    case Verdict::NotConverging: return "not-converging";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

void validate_scenario(const Scenario& s) {
  s.norm.check_dim(s.limit.dim());
  for (const VectorMeasure& mu : s.sequence) {
    if (mu.space_dim() != s.limit.space_dim() || mu.dim() != s.limit.dim())
      throw Error(ErrorCode::DimError, "scenario measures live on different spaces");
  }
}

double wide_proxy(const VectorMeasure& mu_n, const VectorMeasure& mu, double resolution, const Box& window) {
  if (mu_n.space_dim() != mu.space_dim() || mu_n.dim() != mu.dim())
    throw Error(ErrorCode::DimError, "measures live on different spaces");
  if (!(resolution > 0.0) || !std::isfinite(resolution))
    throw Error(ErrorCode::InvalidArgument, "resolution must be positive");
  const std::size_t m = mu.space_dim();
  if (window.lo.size() != m || window.hi.size() != m) throw Error(ErrorCode::DimError, "window dimension mismatch");

  std::vector<long long> first(m), count(m);
  std::size_t total = 1;
  for (std::size_t k = 0; k < m; ++k) {
    const double lo = std::ceil(window.lo[k] / resolution);
    const double hi = std::floor(window.hi[k] / resolution);
    if (hi < lo) {
      total = 0;
      break;
    }
    if (hi - lo + 1.0 > static_cast<double>(kMaxDictionary))
      throw Error(ErrorCode::InvalidArgument, "hat dictionary too large; increase the resolution");
    first[k] = static_cast<long long>(lo);
    count[k] = static_cast<long long>(hi - lo) + 1;
    total *= static_cast<std::size_t>(count[k]);
    if (total > kMaxDictionary) throw Error(ErrorCode::InvalidArgument, "hat dictionary too large; increase the resolution");
  }

  double worst = 0.0;
  const auto probe = [&](const Site& center) {
    worst = std::max(worst, euclidean_norm(integrate(center, mu_n, resolution) - integrate(center, mu, resolution)));
  };

  Site center(m);
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t rest = idx;
    for (std::size_t k = 0; k < m; ++k) {
      const auto c = static_cast<std::size_t>(count[k]);
      center[k] = static_cast<double>(first[k] + static_cast<long long>(rest % c)) * resolution;
      rest /= c;
    }
    probe(center);
  }
  for (const Atom& at : mu.atoms()) probe(at.site);
  return worst;
}

double wide_proxy(const VectorMeasure& mu_n, const VectorMeasure& mu, double resolution) {
  const std::array<const VectorMeasure*, 2> both{&mu_n, &mu};
  const auto box = bounding_box(both, mu.space_dim());
  if (!box) return 0.0;
  return wide_proxy(mu_n, mu, resolution, *box);
}

Verdict classify_column(std::span<const double> column, std::size_t window, double tol) {
  if (column.empty()) return Verdict::Inconclusive;
  const std::size_t w = window == 0 ? column.size() : std::min(window, column.size());
  const auto tail = column.subspan(column.size() - w);
  const auto [lo_it, hi_it] = std::minmax_element(tail.begin(), tail.end());
  const double lo = *lo_it, hi = *hi_it;
  if (hi <= tol) return Verdict::Converging;

  bool monotone = true;
  for (std::size_t i = 1; i < tail.size() && monotone; ++i) monotone = tail[i] <= tail[i - 1] * (1.0 + 1e-12);
  if (tail.size() >= 2 && monotone && tail.front() >= 10.0 * tail.back()) return Verdict::Converging;

  if (lo > tol && (hi - lo) / hi < 0.1) return Verdict::NotConverging;
  return Verdict::Inconclusive;
}

Verdicts verdicts(const DiagnosticsReport& report, std::size_t window, double tol) {
  const std::size_t rows = report.rows.size();
  std::vector<double> wide(rows), gap(rows), dh(rows), lsc(rows);
  for (std::size_t i = 0; i < rows; ++i) {
    wide[i] = report.rows[i].wide_proxy;
    gap[i] = report.rows[i].mass_gap;
    dh[i] = report.rows[i].range_dh;
    lsc[i] = report.rows[i].range_lsc_deficiency;
  }
  Verdicts v{};
  v.wide = classify_column(wide, window, tol);
  v.mass = classify_column(gap, window, tol);
  v.strict = combine({v.wide, v.mass});
  v.range = classify_column(dh, window, tol);
  v.range_lsc = classify_column(lsc, window, tol);

  v.projected = Verdict::Converging;
  std::vector<double> col(rows);
  for (std::size_t j = 0; j < report.directions.size(); ++j) {
    for (std::size_t i = 0; i < rows; ++i) col[i] = report.rows[i].projected_gaps[j];
    v.projected = combine({v.projected, classify_column(col, window, tol)});
  }
  return v;
}

DiagnosticsReport run_diagnostics(const Scenario& s, const DiagnosticsOptions& options) {
  validate_scenario(s);
  DiagnosticsReport report;
  report.name = s.name;
  report.norm = std::string(to_string(s.norm.kind()));
  report.options = options;
  report.limit_mass = total_variation(s.limit, s.norm);
  report.directions = direction_grid(s.limit.dim(), options.directions);

  const MeasurableSet everything = MeasurableSet::all();
  std::vector<double> limit_projection;
  for (const DualVec& eta : report.directions) limit_projection.push_back(projected_variation(s.limit, everything, eta));

  std::optional<Box> window;
  if (!s.sequence.empty()) {
    const std::array<const VectorMeasure*, 2> anchors{&s.sequence.front(), &s.limit};
    window = bounding_box(anchors, s.limit.space_dim());
    if (window) {
      for (std::size_t k = 0; k < window->lo.size(); ++k) {
        window->lo[k] -= options.resolution;
        window->hi[k] += options.resolution;
      }
    }
  }

  const Zonotope limit_range = range(s.limit);
  for (std::size_t i = 0; i < s.sequence.size(); ++i) {
    const VectorMeasure& mu = s.sequence[i];
    DiagnosticsRow row;
    row.n = i + 1;
    row.wide_proxy = window ? wide_proxy(mu, s.limit, options.resolution, *window) : 0.0;
    row.mass = total_variation(mu, s.norm);
    row.mass_gap = std::abs(row.mass - report.limit_mass);
    const Zonotope r = range(mu);
    row.range_dh = hausdorff_distance(r, limit_range);
    row.range_lsc_deficiency = directed_hausdorff(limit_range, r);
    row.projected_gaps.reserve(report.directions.size());
    for (std::size_t j = 0; j < report.directions.size(); ++j) {
      row.projected_gaps.push_back(
          std::abs(projected_variation(mu, everything, report.directions[j]) - limit_projection[j]));
    }
    report.rows.push_back(std::move(row));
  }
  report.verdicts = verdicts(report, options.window, options.tol);
  return report;
}

std::span<const std::string_view> builtin_scenario_names() {
  static constexpr std::array<std::string_view, 4> kNames{"dirac_split", "aligned_merge", "cancelling_pair",
                                                          "mass_escape"};
  return kNames;
}

Scenario builtin_scenario(std::string_view name, const ScenarioParams& params, std::size_t count) {
  const auto names = builtin_scenario_names();
  if (std::find(names.begin(), names.end(), name) == names.end())
    throw Error(ErrorCode::UnknownScenario, "no built-in scenario named '" + std::string(name) + "'");
  if (count == 0) throw Error(ErrorCode::InvalidArgument, "scenario needs at least one term");

  const Vec v = params.v.value_or(Vec{1.0, 0.0});
  const std::size_t d = v.dim();
  const Vec w = params.w.value_or(Vec::unit(d, d >= 2 ? 1 : 0));
  if (w.dim() != d) throw Error(ErrorCode::DimError, "v and w must have the same dimension");

  std::size_t m = 1;
  if (params.u) m = params.u->size();
  else if (params.x) m = params.x->size();
  Site u = params.u.value_or(Site(m, 0.0));
  if (!params.u) u[0] = 1.0;
  const Site x = params.x.value_or(Site(m, 0.0));
  if (u.size() != m || x.size() != m || m == 0) throw Error(ErrorCode::DimError, "u and x must share the base dimension");

  Scenario s{std::string(name), {}, VectorMeasure(m, d), params.norm.value_or(Seminorm::euclidean())};
  for (std::size_t n = 1; n <= count; ++n) {
    const double inv = 1.0 / static_cast<double>(n);
    const Site near = shifted(x, u, inv);
    std::vector<Atom> atoms;
    if (name == "dirac_split") {
      atoms = {{x, v}, {near, w}};
    } else if (name == "aligned_merge") {
      atoms = {{x, v}, {near, v}};
    } else if (name == "cancelling_pair") {
      atoms = {{x, v}, {near, -v}};
    } else {
      atoms = {{shifted(x, u, static_cast<double>(n)), v}};
    }
    s.sequence.emplace_back(m, d, std::move(atoms));
  }
  if (name == "dirac_split") {
    s.limit = VectorMeasure(m, d, {{x, v + w}});
  } else if (name == "aligned_merge") {
    s.limit = VectorMeasure(m, d, {{x, 2.0 * v}});
  }
  validate_scenario(s);
  return s;
}

Scenario radial_perturbation_scenario(std::string name, const VectorMeasure& limit, std::span<const double> rates,
                                      std::size_t count, Seminorm norm) {
  if (rates.size() != limit.size()) throw Error(ErrorCode::DimError, "one rate per limit atom is required");
  Scenario s{std::move(name), {}, limit, std::move(norm)};
  for (std::size_t n = 1; n <= count; ++n) {
    std::vector<Atom> atoms;
    for (std::size_t i = 0; i < limit.size(); ++i) {
      const Atom& at = limit.atoms()[i];
      atoms.push_back({at.site, (1.0 + rates[i] / static_cast<double>(n)) * at.value});
    }
    s.sequence.emplace_back(limit.space_dim(), limit.dim(), std::move(atoms));
  }
  validate_scenario(s);
  return s;
}

}  // namespace vecmeasure
