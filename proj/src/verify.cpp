#include "vecmeasure/verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <thread>

#include "vecmeasure/convergence.hpp"
#include "vecmeasure/rng.hpp"
#include "vecmeasure/zonotope.hpp"

namespace vecmeasure {

namespace {

using io::json;

struct Observation {
  std::string check;
  double error;
  double tolerance;
  bool ok;
};

struct TrialOutcome {
  std::vector<Observation> observations;
  json instance = json::object();
};

class Trial {
 public:
  Trial(Rng rng, const VerifyConfig& cfg) : rng(std::move(rng)), cfg_(cfg) {}

  // Exact checks: the configured --tol replaces the default.
  void exact(std::string_view check, double error, double default_tol) {
    record(check, error, cfg_.tol.value_or(default_tol));
  }
  // Quadrature checks keep their own tolerance.
  void fixed(std::string_view check, double error, double tol) { record(check, error, tol); }
  void holds(std::string_view check, bool ok) { record(check, ok ? 0.0 : 1.0, 0.0); }

  Rng rng;
  TrialOutcome outcome;

 private:
  void record(std::string_view check, double error, double tol) {
    outcome.observations.push_back({std::string(check), error, tol, error <= tol});
  }
  const VerifyConfig& cfg_;
};

// ---------------------------------------------------------------------------
// random instances

double rel(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

Vec random_vec(Rng& r, std::size_t d, double s = 1.0) {
  std::array<double, kMaxDim> c{};
  for (std::size_t i = 0; i < d; ++i) c[i] = r.uniform(-s, s);
  return Vec(std::span<const double>(c.data(), d));
}

DualVec random_dual(Rng& r, std::size_t d) { return as_dual(random_vec(r, d)); }

// Sites on a coarse lattice so that merges and box memberships happen.
Site random_site(Rng& r, std::size_t m) {
  Site x(m);
  for (double& c : x) c = 0.25 * r.uniform_int(-4, 4);
  return x;
}

VectorMeasure random_measure(Rng& r, std::size_t m, std::size_t d, std::size_t atoms, double s = 1.0) {
  std::vector<Atom> out;
  for (std::size_t i = 0; i < atoms; ++i) out.push_back({random_site(r, m), random_vec(r, d, s)});
  return VectorMeasure(m, d, std::move(out));
}

// Same atom count with distinct sites, for tests that need every atom kept.
VectorMeasure random_measure_distinct(Rng& r, std::size_t m, std::size_t d, std::size_t atoms, double s = 1.0) {
  std::vector<Atom> out;
  for (std::size_t i = 0; i < atoms; ++i) {
    Site x(m, 0.0);
    x[0] = static_cast<double>(i);
    for (std::size_t k = 1; k < m; ++k) x[k] = 0.25 * r.uniform_int(-4, 4);
    out.push_back({std::move(x), random_vec(r, d, s)});
  }
  return VectorMeasure(m, d, std::move(out));
}

Seminorm random_lp(Rng& r, std::size_t d) {
  static constexpr std::array<double, 6> kExponents{1.0, 1.5, 2.0, 3.0, 4.0, std::numeric_limits<double>::infinity()};
  const double p = kExponents[static_cast<std::size_t>(r.uniform_int(0, 5))];
  if (!r.coin()) return Seminorm::lp(p);
  std::vector<double> w(d);
  for (double& x : w) x = r.uniform(0.25, 2.0);
  return Seminorm::weighted_lp(p, std::move(w));
}

Seminorm random_polygonal(Rng& r, std::size_t d) {
  const int count = r.uniform_int(static_cast<int>(d), static_cast<int>(d) + 3);
  std::vector<DualVec> gens;
  for (int i = 0; i < count; ++i) gens.push_back(random_dual(r, d));
  return Seminorm::polygonal(d, std::move(gens));
}

ZonalMeasure random_zonal(Rng& r, std::size_t d) {
  const int count = r.uniform_int(1, 6);
  std::vector<ZonalAtom> atoms;
  for (int i = 0; i < count; ++i) atoms.push_back({random_dual(r, d), r.uniform(0.1, 2.0)});
  return ZonalMeasure(d, std::move(atoms));
}

MeasurableSet random_site_subset(Rng& r, const VectorMeasure& mu, std::vector<Site>* rest = nullptr) {
  std::vector<Site> in;
  for (const Atom& a : mu.atoms()) {
    if (r.coin()) {
      in.push_back(a.site);
    } else if (rest) {
      rest->push_back(a.site);
    }
  }
  return MeasurableSet::sites(std::move(in));
}

std::vector<DualVec> full_directions(std::size_t d) {
  if (d == 1) return {DualVec{1.0}, DualVec{-1.0}};
  if (d == 2) return circle_directions(64);
  return sphere_directions(64);
}

double generator_scale(const Zonotope& z) {
  double s = euclidean_norm(z.offset());
  for (const Vec& g : z.generators()) s += euclidean_norm(g);
  return std::max(1.0, s);
}

double support_gap(const Zonotope& a, const Zonotope& b, std::span<const DualVec> dirs) {
  double worst = 0.0;
  for (const DualVec& u : dirs) worst = std::max(worst, std::abs(support(a, u) - support(b, u)));
  return worst;
}

double zonal_side(const VectorMeasure& mu, const MeasurableSet& a, const ZonalMeasure& sigma) {
  double s = 0.0;
  for (const ZonalAtom& z : sigma.atoms()) s += z.weight * projected_variation(mu, a, z.eta);
  return s;
}

ZonalMeasure l1_zonal(std::size_t d) {
  std::vector<ZonalAtom> atoms;
  for (std::size_t i = 0; i < d; ++i) atoms.push_back({DualVec::unit(d, i), 1.0});
  return ZonalMeasure(d, std::move(atoms));
}

ConvexPolygon random_polygon(Rng& r) {
  const int k = r.uniform_int(1, 12);
  std::vector<Vec> pts;
  for (int i = 0; i < k; ++i) pts.push_back(random_vec(r, 2));
  return ConvexPolygon::hull(pts);
}

// Largest h_inner(u) - h_outer(u) over the edge normals of both polygons;
// positive exactly when containment fails.
double normal_fan_violation(const ConvexPolygon& outer, const ConvexPolygon& inner) {
  double worst = -std::numeric_limits<double>::infinity();
  const auto scan = [&](const ConvexPolygon& p) {
    const auto& vs = p.vertices();
    for (std::size_t i = 0; i < vs.size(); ++i) {
      const Vec e = vs[(i + 1) % vs.size()] - vs[i];
      const double len = euclidean_norm(e);
      if (len == 0.0) continue;
      for (const DualVec& u : {DualVec{e[1] / len, -e[0] / len}, DualVec{-e[1] / len, e[0] / len}})
        worst = std::max(worst, support(inner, u) - support(outer, u));
    }
  };
  scan(outer);
  scan(inner);
  for (const DualVec& u : circle_directions(4)) worst = std::max(worst, support(inner, u) - support(outer, u));
  return worst;
}

json polygon_json(const ConvexPolygon& p) { return io::to_json(p); }

struct Shared {
  std::optional<ZonalMeasure> euclid2;
  std::optional<ZonalMeasure> euclid3;
};

constexpr std::size_t kEuclidNodes2 = 10000;
constexpr std::size_t kEuclidNodes3 = 20000;
constexpr double kEuclidTol2 = 1e-5;
constexpr double kEuclidTol3 = 1e-3;

// ---------------------------------------------------------------------------
// suites

void tv_oracle(Trial& t, std::size_t i, const Shared&) {
  Rng& r = t.rng;
  const std::size_t d = 1 + i % 3;
  const std::size_t family = (i / 3) % 3;
  const Seminorm n = family == 0 ? Seminorm::euclidean() : family == 1 ? random_lp(r, d) : random_polygonal(r, d);
  const std::size_t m = static_cast<std::size_t>(r.uniform_int(1, 2));
  const VectorMeasure mu = random_measure(r, m, d, static_cast<std::size_t>(r.uniform_int(0, 8)));
  const MeasurableSet a = r.coin() ? MeasurableSet::all() : random_site_subset(r, mu);
  const VectorMeasure nu = random_measure(r, m, d, static_cast<std::size_t>(r.uniform_int(0, 8)));
  const double lambda = r.uniform(-3.0, 3.0);
  t.outcome.instance = {{"measure", io::to_json(mu)}, {"norm", io::to_json(n)},    {"set", io::to_json(a)},
                        {"nu", io::to_json(nu)},      {"lambda", lambda}};

  const double tv = total_variation(mu, a, n);
  t.exact("tv-equals-oracle", rel(tv, tv_bruteforce_oracle(mu, a, n, kOracleAtomCap)), 1e-12);

  if (n.is_norm(d)) {
    const DualCertificate cert = dual_certificate(mu, a, n);
    t.exact("certificate-value", rel(cert.value, tv), 1e-12);
    if (!(n.kind() == NormKind::Polygonal && d == 3)) {
      double worst = 0.0;
      for (const CertificateEntry& e : cert.entries) worst = std::max(worst, std::abs(dual_eval(n, e.eta) - 1.0));
      t.exact("certificate-dual-norm", worst, 1e-9);
    }
  }

  std::vector<Site> rest;
  const MeasurableSet part = random_site_subset(r, mu, &rest);
  const double whole = total_variation(mu, n);
  t.exact("tv-additivity",
          rel(total_variation(mu, part, n) + total_variation(mu, MeasurableSet::sites(rest), n), whole), 1e-12);

  const double bound = whole + total_variation(nu, n);
  const double sum = total_variation(add(mu, nu), n);
  t.exact("tv-triangle", bound > 0.0 ? std::max(0.0, sum - bound) / bound : sum, 1e-12);
  t.exact("tv-homogeneity", rel(total_variation(scale(mu, lambda), n), std::abs(lambda) * whole), 1e-12);
}

void perimeter_identity(Trial& t, std::size_t i, const Shared&) {
  Rng& r = t.rng;
  const std::size_t family = i % 4;
  const Seminorm n = family == 0   ? Seminorm::euclidean()
                     : family == 1 ? Seminorm::lp(1.0)
                     : family == 2 ? Seminorm::lp(4.0)
                                   : random_polygonal(r, 2);
  const VectorMeasure mu = random_measure(r, 1, 2, static_cast<std::size_t>(r.uniform_int(1, 50)));
  t.outcome.instance = {{"measure", io::to_json(mu)}, {"norm", io::to_json(n)}};

  t.exact("mass-half-perimeter", mass_perimeter_identity_check(mu, n).rel_gap, 1e-9);

  const Zonotope z = range(mu);
  double generator_sum = 0.0;
  for (const Vec& g : z.generators()) generator_sum += 2.0 * n(g);
  t.exact("zonotope-perimeter-lemma", rel(perimeter(vertices_2d(z), n), generator_sum), 1e-9);
}

void zonal_identity(Trial& t, std::size_t i, const Shared& shared) {
  Rng& r = t.rng;
  const std::size_t kind = i % 5;
  std::size_t d = 2;
  if (kind == 1) d = 1 + static_cast<std::size_t>(r.uniform_int(0, 2));
  if (kind == 2) d = static_cast<std::size_t>(r.uniform_int(2, 3));
  if (kind == 4) d = 3;
  const VectorMeasure mu = random_measure(r, 1, d, static_cast<std::size_t>(r.uniform_int(1, 20)));
  const MeasurableSet a = r.coin() ? MeasurableSet::all() : random_site_subset(r, mu);
  t.outcome.instance = {{"measure", io::to_json(mu)}, {"set", io::to_json(a)}};

  switch (kind) {
    case 0: {
      const Seminorm n = random_polygonal(r, 2);
      const ZonalMeasure sigma = zonal_from_polygonal_2d(n);
      t.outcome.instance["norm"] = io::to_json(n);
      t.exact("polygonal-exact", rel(total_variation(mu, a, n), zonal_side(mu, a, sigma)), 1e-12);
      t.exact("polygonal-induced", validate_zonal(n, sigma, 360, 1e-12).max_rel_error, 1e-12);
      break;
    }
    case 1: {
      const ZonalMeasure sigma = random_zonal(r, d);
      t.outcome.instance["zonal"] = io::to_json(sigma);
      t.exact("direct-exact", rel(total_variation(mu, a, sigma.as_seminorm()), zonal_side(mu, a, sigma)), 1e-12);
      break;
    }
    case 2:
      t.outcome.instance["norm"] = io::to_json(Seminorm::lp(1.0));
      t.exact("l1-exact", rel(total_variation(mu, a, Seminorm::lp(1.0)), zonal_side(mu, a, l1_zonal(d))), 1e-12);
      break;
    case 3:
      t.outcome.instance["norm"] = io::to_json(Seminorm::euclidean());
      t.fixed("euclidean-quadrature-2d", rel(total_variation(mu, a, Seminorm::euclidean()), zonal_side(mu, a, *shared.euclid2)),
              kEuclidTol2);
      break;
    default:
      t.outcome.instance["norm"] = io::to_json(Seminorm::euclidean());
      t.fixed("euclidean-quadrature-3d", rel(total_variation(mu, a, Seminorm::euclidean()), zonal_side(mu, a, *shared.euclid3)),
              kEuclidTol3);
      break;
  }
}

void crofton(Trial& t, std::size_t i, const Shared& shared) {
  Rng& r = t.rng;
  const ConvexPolygon c = random_polygon(r);
  t.outcome.instance = {{"polygon", polygon_json(c)}};
  switch (i % 3) {
    case 0: {
      const Seminorm n = random_polygonal(r, 2);
      t.outcome.instance["norm"] = io::to_json(n);
      t.exact("crofton-polygonal", rel(crofton_perimeter(c, zonal_from_polygonal_2d(n)), perimeter(c, n)), 1e-12);
      break;
    }
    case 1:
      t.exact("crofton-l1", rel(crofton_perimeter(c, l1_zonal(2)), perimeter(c, Seminorm::lp(1.0))), 1e-12);
      break;
    default:
      t.fixed("crofton-euclidean-quadrature", rel(crofton_perimeter(c, *shared.euclid2), perimeter(c, Seminorm::euclidean())),
              kEuclidTol2);
      break;
  }
}

void monotonicity(Trial& t, std::size_t i, const Shared&) {
  Rng& r = t.rng;
  const std::size_t family = i % 3;
  const Seminorm n = family == 0 ? Seminorm::euclidean() : family == 1 ? random_lp(r, 2) : random_polygonal(r, 2);
  const VectorMeasure mu = random_measure_distinct(r, 1, 2, static_cast<std::size_t>(r.uniform_int(1, 8)));
  std::vector<Atom> shrunk;
  for (const Atom& a : mu.atoms()) shrunk.push_back({a.site, r.uniform() * a.value});
  const VectorMeasure nu(1, 2, std::move(shrunk));
  const VectorMeasure other =
      scale(random_measure(r, 1, 2, static_cast<std::size_t>(r.uniform_int(1, 6))), r.uniform(0.0, 1.0));
  t.outcome.instance = {{"measure", io::to_json(mu)}, {"inner", io::to_json(nu)}, {"other", io::to_json(other)},
                        {"norm", io::to_json(n)}};

  const bool euclid = n.kind() == NormKind::Euclidean;
  const Zonotope outer = range(mu);
  const double tv_outer = total_variation(mu, n);
  const double tol_scale = std::max(1.0, generator_scale(outer));

  const auto compare = [&](const VectorMeasure& inner, std::string_view mono, std::string_view strict) {
    const Zonotope zi = range(inner);
    const double tv_inner = total_variation(inner, n);
    t.exact(mono, std::max(0.0, tv_inner - tv_outer), 1e-12);
    if (euclid && hausdorff_distance(zi, outer) > 1e-6) t.holds(strict, tv_outer - tv_inner > 0.0);
  };

  const Zonotope inner = range(nu);
  const bool contained = contains_2d(outer, inner);
  t.holds("constructed-containment", contained);
  if (contained) {
    compare(nu, "mass-monotone", "strict-gap");
    t.holds("perimeter-monotone", perimeter_monotonicity_check(vertices_2d(inner), vertices_2d(outer), n).passed());
  }

  const Zonotope z_other = range(other);
  const bool other_contained = contains_2d(outer, z_other);
  if (other_contained) compare(other, "mass-monotone-independent", "strict-gap-independent");

  // Cross-check contains_2d against 10^4 sampled support directions.
  const ConvexPolygon po = vertices_2d(outer), pi = vertices_2d(z_other);
  constexpr std::size_t kSamples = 10000;
  double sampled = -std::numeric_limits<double>::infinity();
  for (const DualVec& u : circle_directions(kSamples)) sampled = std::max(sampled, support(pi, u) - support(po, u));
  const double slack = 1e-12 * tol_scale;
  const bool sampled_contained = sampled <= slack;
  const double resolution = (po.scale() + pi.scale()) * std::numbers::pi / static_cast<double>(kSamples);
  const bool agree = other_contained == sampled_contained ||
                     (!other_contained && normal_fan_violation(po, pi) <= resolution);
  t.holds("containment-agrees-sampled", agree);
}

void continuity_bound(Trial& t, std::size_t i, const Shared&) {
  Rng& r = t.rng;
  const std::size_t d = 1 + i % 3;
  const VectorMeasure mu = random_measure_distinct(r, 1, d, static_cast<std::size_t>(r.uniform_int(1, 8)));
  const double s = std::pow(10.0, r.uniform(-6.0, 0.0));
  std::vector<Atom> moved;
  for (const Atom& a : mu.atoms()) moved.push_back({a.site, r.coin(0.8) ? a.value + random_vec(r, d, s) : a.value});
  const VectorMeasure nu(1, d, std::move(moved));
  t.outcome.instance = {{"measure", io::to_json(mu)}, {"nu", io::to_json(nu)}};

  const double distance = total_variation(add(nu, scale(mu, -1.0)), Seminorm::euclidean());
  const double dh = hausdorff_distance(range(nu), range(mu));
  t.exact("hausdorff-lipschitz", std::max(0.0, dh - distance), 1e-12);
}

void range_laws(Trial& t, std::size_t i, const Shared&) {
  Rng& r = t.rng;
  const std::size_t d = 1 + i % 3;
  const std::size_t m = static_cast<std::size_t>(r.uniform_int(1, 2));
  const VectorMeasure mu = random_measure(r, m, d, static_cast<std::size_t>(r.uniform_int(1, 10)));
  const VectorMeasure nu = random_measure(r, m, d, static_cast<std::size_t>(r.uniform_int(1, 10)));
  const std::size_t rows = static_cast<std::size_t>(r.uniform_int(1, 3));
  std::vector<double> entries(rows * d);
  for (double& e : entries) e = r.uniform(-2.0, 2.0);
  const LinearMap map(rows, d, entries);
  std::vector<Site> rest;
  const MeasurableSet part = random_site_subset(r, mu, &rest);
  const MeasurableSet other_part = MeasurableSet::sites(rest);
  const VectorMeasure line = random_measure(r, m, 1, static_cast<std::size_t>(r.uniform_int(1, 10)));
  t.outcome.instance = {{"measure", io::to_json(mu)},     {"nu", io::to_json(nu)},
                        {"map", {{"rows", rows}, {"cols", d}, {"entries", entries}}},
                        {"part", io::to_json(part)},      {"line", io::to_json(line)}};

  const auto dirs = full_directions(d);
  const Zonotope z = range(mu);
  const double sc = generator_scale(z) + generator_scale(range(nu));

  const Vec total = mu.value_of(MeasurableSet::all());
  double sym = 0.0;
  for (const DualVec& u : dirs) sym = std::max(sym, std::abs(support(z, u) - pairing(u, total) - support(z, -u)));
  t.exact("symmetry", sym / sc, 1e-9);

  const Zonotope zn = range(nu), zsum = range(add(mu, nu));
  double sub = 0.0;
  for (const DualVec& u : dirs) sub = std::max(sub, support(zsum, u) - support(z, u) - support(zn, u));
  t.exact("sublinearity", std::max(0.0, sub) / sc, 1e-9);

  const Zonotope za = range(mu, part), zb = range(mu, other_part);
  t.exact("disjoint-additivity", support_gap(z, minkowski_sum(za, zb), dirs) / sc, 1e-9);

  double mono = 0.0;
  for (const DualVec& u : dirs) mono = std::max(mono, support(za, u) - support(z, u));
  t.exact("subset-monotone", std::max(0.0, mono) / sc, 1e-9);

  const auto image_dirs = full_directions(rows);
  const double map_scale = sc * (1.0 + std::sqrt(static_cast<double>(entries.size())) * 2.0);
  t.exact("pushforward-linearity", support_gap(linear_image(z, map), range(pushforward(mu, map)), image_dirs) / map_scale,
          1e-9);

  const double tv = total_variation(mu, Seminorm::euclidean());
  double ball = 0.0;
  for (const DualVec& u : dirs) ball = std::max(ball, support(z, u) - tv);
  t.exact("range-in-ball", std::max(0.0, ball) / sc, 1e-9);

  const Zonotope zl = range(line);
  const double diam = support(zl, DualVec{1.0}) + support(zl, DualVec{-1.0});
  t.exact("line-diameter", std::abs(total_variation(line, Seminorm::euclidean()) - diam) / std::max(1.0, diam), 1e-9);
}

json verdicts_json(const Verdicts& v) {
  return {{"wide", to_string(v.wide)},           {"mass", to_string(v.mass)},
          {"strict", to_string(v.strict)},       {"range", to_string(v.range)},
          {"projected", to_string(v.projected)}, {"range_lsc", to_string(v.range_lsc)}};
}

void convergence_theorems(Trial& t, std::size_t i, const Shared&) {
  Rng& r = t.rng;
  constexpr std::size_t kTerms = 100;
  const std::size_t kind = i % 6;
  const std::size_t m = static_cast<std::size_t>(r.uniform_int(1, 2));

  std::optional<Scenario> s;
  if (kind < 4) {
    static constexpr std::array<std::string_view, 4> kNames{"dirac_split", "aligned_merge", "cancelling_pair",
                                                            "mass_escape"};
    ScenarioParams params;
    params.v = random_vec(r, 2);
    params.w = random_vec(r, 2);
    Site x(m), u(m, 0.0);
    for (double& c : x) c = r.uniform_int(-2, 2);
    u[static_cast<std::size_t>(r.uniform_int(0, static_cast<int>(m) - 1))] = r.coin() ? 1.0 : -1.0;
    params.x = x;
    params.u = u;
    s = builtin_scenario(kNames[kind], params, kTerms);
    t.outcome.instance = {{"builtin", kNames[kind]},
                          {"params",
                           {{"v", params.v->coords()}, {"w", params.w->coords()}, {"u", u}, {"x", x}}},
                          {"N", kTerms}};
  } else {
    const VectorMeasure limit = random_measure_distinct(r, m, 2, static_cast<std::size_t>(r.uniform_int(1, 6)));
    std::vector<double> rates(limit.size());
    for (double& x : rates) x = r.uniform(0.5, 2.0);
    s = radial_perturbation_scenario("radial", limit, rates, kTerms, Seminorm::euclidean());
    json seq = json::array();
    for (const VectorMeasure& mu : s->sequence) seq.push_back(io::to_json(mu));
    t.outcome.instance = {{"name", "radial"}, {"sequence", std::move(seq)}, {"limit", io::to_json(limit)}};
  }

  const DiagnosticsReport report = run_diagnostics(*s);
  const Verdicts& v = report.verdicts;
  t.outcome.instance["verdicts"] = verdicts_json(v);
  constexpr Verdict C = Verdict::Converging, NC = Verdict::NotConverging;

  t.holds("strict-range-agree", v.strict == v.range);
  t.holds("range-implies-mass", v.range != C || v.mass == C);
  // A gap confined to a sector narrower than the grid spacing is invisible to the grid.
  const DiagnosticsRow& last = report.rows.back();
  const double spacing = std::numbers::pi / static_cast<double>(report.directions.size());
  const double resolution = (last.mass + report.limit_mass) * 2.0 * std::sin(spacing / 4.0);
  t.holds("projected-matches-range",
          v.projected == v.range || (v.projected == C && last.range_dh <= resolution));
  if (v.wide == C) {
    double tail_min = std::numeric_limits<double>::infinity();
    for (const DiagnosticsRow& row : report.rows) tail_min = std::min(tail_min, row.mass);
    t.exact("mass-lsc", std::max(0.0, report.limit_mass - tail_min), 1e-9);
    t.holds("range-lsc", v.range_lsc == C);
  }

  bool expected = false;
  switch (kind) {
    case 0:
    case 2: expected = v.strict == NC && v.range == NC; break;
    case 1: expected = v.strict == C && v.range == C; break;
    case 3: expected = v.wide == C && v.mass == NC && v.range == NC; break;
    default: expected = v.strict == C && v.range == C; break;
  }
  t.holds("expected-verdicts", expected);

  if (kind == 0) {
    // l1 with v and w in one closed orthant: |v + w|_1 = |v|_1 + |w|_1.
    ScenarioParams params;
    Vec v1 = random_vec(r, 2), w1 = random_vec(r, 2);
    for (std::size_t k = 0; k < 2; ++k) {
      const double sgn = r.coin() ? 1.0 : -1.0;
      v1[k] = sgn * std::abs(v1[k]);
      w1[k] = sgn * std::abs(w1[k]);
    }
    params.v = v1;
    params.w = w1;
    params.norm = Seminorm::lp(1.0);
    const DiagnosticsReport l1 = run_diagnostics(builtin_scenario("dirac_split", params, kTerms));
    t.outcome.instance["l1_params"] = {{"v", v1.coords()}, {"w", w1.coords()}};
    t.holds("l1-strict-without-range", l1.verdicts.strict == C && l1.verdicts.range == NC);
  }
}

void invariance(Trial& t, std::size_t i, const Shared&) {
  Rng& r = t.rng;
  std::size_t d = 1 + i % 3;
  const std::size_t family = (i / 3) % 5;
  if (family == 3) d = 3;
  Seminorm n = Seminorm::euclidean();
  switch (family) {
    case 1: n = random_lp(r, d); break;
    case 2: n = random_polygonal(r, d); break;
    case 3: n = Seminorm::sum_of_circles(); break;
    case 4: n = random_zonal(r, d).as_seminorm(); break;
    default: break;
  }
  const std::size_t m = static_cast<std::size_t>(r.uniform_int(1, 2));
  const VectorMeasure mu = random_measure(r, m, d, static_cast<std::size_t>(r.uniform_int(1, 8)));
  t.outcome.instance = {{"measure", io::to_json(mu)}, {"norm", io::to_json(n)}};
  const double tv = total_variation(mu, n);
  const Zonotope z = range(mu);
  const auto dirs = full_directions(d);
  const double sc = generator_scale(z);

  std::vector<Atom> atoms = mu.atoms();
  if (atoms.empty()) return;
  const auto j = static_cast<std::size_t>(r.uniform_int(0, static_cast<int>(atoms.size()) - 1));
  Site fresh(m, 0.0);
  fresh[0] = 10.0 + static_cast<double>(i % 7);
  const Vec half = 0.5 * atoms[j].value;
  std::vector<Atom> split = atoms;
  split[j].value = half;
  split.push_back({fresh, half});
  const VectorMeasure mu_split(m, d, split);
  t.exact("split", rel(total_variation(mu_split, n), tv), 1e-12);
  t.exact("split-range", support_gap(range(mu_split), z, dirs) / sc, 1e-12);

  std::vector<Atom> shuffled = atoms;
  for (std::size_t k = shuffled.size(); k > 1; --k)
    std::swap(shuffled[k - 1], shuffled[static_cast<std::size_t>(r.uniform_int(0, static_cast<int>(k) - 1))]);
  t.exact("permute", rel(total_variation(VectorMeasure(m, d, shuffled), n), tv), 0.0);

  // A generator replaced by positive collinear pieces spans the same segment.
  const int pieces = r.uniform_int(2, 4);
  std::vector<double> share(static_cast<std::size_t>(pieces));
  double total = 0.0;
  for (double& s : share) total += (s = r.uniform(0.1, 1.0));
  std::vector<Atom> collinear = atoms;
  collinear.erase(collinear.begin() + static_cast<std::ptrdiff_t>(j));
  for (int k = 0; k < pieces; ++k) {
    Site x(m, 0.0);
    x[0] = 20.0 + k;
    collinear.push_back({x, (share[static_cast<std::size_t>(k)] / total) * atoms[j].value});
  }
  const VectorMeasure mu_pieces(m, d, collinear);
  t.exact("collinear-merge", rel(total_variation(mu_pieces, n), tv), 1e-12);
  t.exact("collinear-range", support_gap(range(mu_pieces), z, dirs) / sc, 1e-12);
}

using TrialFn = void (*)(Trial&, std::size_t, const Shared&);

struct SuiteDef {
  std::string_view name;
  TrialFn fn;
};

constexpr std::array<SuiteDef, 9> kSuites{{
    {"tv-oracle", tv_oracle},
    {"perimeter-identity", perimeter_identity},
    {"zonal-identity", zonal_identity},
    {"crofton", crofton},
    {"monotonicity", monotonicity},
    {"continuity-bound", continuity_bound},
    {"range-laws", range_laws},
    {"convergence-theorems", convergence_theorems},
    {"invariance", invariance},
}};

constexpr std::array<std::string_view, 9> kSuiteNames{"tv-oracle",      "perimeter-identity", "zonal-identity",
                                                      "crofton",        "monotonicity",       "continuity-bound",
                                                      "range-laws",     "convergence-theorems", "invariance"};

}  // namespace

std::span<const std::string_view> suite_names() { return kSuiteNames; }

bool SuiteReport::passed() const noexcept {
  return std::all_of(checks.begin(), checks.end(), [](const CheckStat& c) { return c.failures == 0; });
}

const CheckStat* SuiteReport::find(std::string_view check) const noexcept {
  for (const CheckStat& c : checks)
    if (c.name == check) return &c;
  return nullptr;
}

json SuiteReport::to_json(std::size_t max_counterexamples) const {
  json checks_j = json::array();
  for (const CheckStat& c : checks) {
    checks_j.push_back({{"name", c.name},
                        {"evaluated", c.evaluated},
                        {"failures", c.failures},
                        {"max_error", c.max_error},
                        {"tolerance", c.tolerance}});
  }
  json ce = json::array();
  for (std::size_t k = 0; k < counterexamples.size() && k < max_counterexamples; ++k) {
    const Counterexample& c = counterexamples[k];
    ce.push_back({{"trial", c.trial},
                  {"check", c.check},
                  {"error", c.error},
                  {"tolerance", c.tolerance},
                  {"instance", c.instance}});
  }
  json j;
  j["suite"] = suite;
  j["passed"] = passed();
  j["seed"] = seed;
  j["trials"] = trials;
  j["rng"] = Rng::kAlgorithm;
  j["checks"] = std::move(checks_j);
  j["counterexamples"] = std::move(ce);
  if (counterexamples.size() > max_counterexamples) j["counterexamples_omitted"] = counterexamples.size() - max_counterexamples;
  return j;
}

std::size_t worker_count(const VerifyConfig& cfg, std::size_t jobs) {
  std::size_t w = cfg.threads;
  if (w == 0) w = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("VECMEASURE_THREADS")) {
    char* end = nullptr;
    const unsigned long long cap = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && cap > 0) w = std::min<std::size_t>(w, cap);
  }
  return std::max<std::size_t>(1, std::min(w, jobs));
}

SuiteReport run_suite(std::string_view name, const VerifyConfig& cfg) {
  const auto def = std::find_if(kSuites.begin(), kSuites.end(), [&](const SuiteDef& s) { return s.name == name; });
  if (def == kSuites.end()) throw Error(ErrorCode::InvalidArgument, "unknown verify suite '" + std::string(name) + "'");

  Shared shared;
  if (name == "zonal-identity" || name == "crofton") {
    shared.euclid2 = zonal_euclidean(2, kEuclidNodes2).sigma;
    if (name == "zonal-identity") shared.euclid3 = zonal_euclidean(3, kEuclidNodes3).sigma;
  }

  std::vector<TrialOutcome> outcomes(cfg.trials);
  const auto work = [&](std::size_t first, std::size_t stride) {
    for (std::size_t i = first; i < cfg.trials; i += stride) {
      Trial trial(Rng::for_trial(cfg.seed, i), cfg);
      try {
        def->fn(trial, i, shared);
      } catch (const std::exception& e) {
        trial.outcome.instance["exception"] = e.what();
        trial.holds("no-exception", false);
      }
      outcomes[i] = std::move(trial.outcome);
    }
  };
  const std::size_t workers = worker_count(cfg, cfg.trials);
  if (workers <= 1) {
    work(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work, w, workers);
    for (std::thread& th : pool) th.join();
  }

  SuiteReport report{std::string(name), cfg.seed, cfg.trials, {}, {}};
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    bool reported = false;
    for (const Observation& o : outcomes[i].observations) {
      auto it = std::find_if(report.checks.begin(), report.checks.end(),
                             [&](const CheckStat& c) { return c.name == o.check; });
      if (it == report.checks.end()) {
        report.checks.push_back({o.check, 0, 0, 0.0, o.tolerance});
        it = std::prev(report.checks.end());
      }
      ++it->evaluated;
      it->tolerance = o.tolerance;
      if (!(o.error <= it->max_error)) it->max_error = o.error;
      if (!o.ok) {
        ++it->failures;
        if (!reported) {
          report.counterexamples.push_back({i, o.check, o.error, o.tolerance, outcomes[i].instance});
          reported = true;
        }
      }
    }
  }
  return report;
}

std::vector<SuiteReport> run_suites(std::string_view name, const VerifyConfig& cfg) {
  if (name != "all") return {run_suite(name, cfg)};
  std::vector<SuiteReport> out;
  for (std::string_view s : kSuiteNames) out.push_back(run_suite(s, cfg));
  return out;
}

}  // namespace vecmeasure
