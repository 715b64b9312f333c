#include "vecmeasure/norms.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "vecmeasure/rng.hpp"

namespace vecmeasure {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

double lp_of(double p, std::span<const double> a) {
  double m = 0.0;
  for (double x : a) m = std::max(m, std::abs(x));
  if (m == 0.0 || std::isinf(p)) return m;
  if (p == 1.0) {
    double s = 0.0;
    for (double x : a) s += std::abs(x);
    return s;
  }
  double s = 0.0;
  for (double x : a) s += std::pow(std::abs(x) / m, p);
  return m * std::pow(s, 1.0 / p);
}

double conjugate_exponent(double p) {
  if (p == 1.0) return kInf;
  if (std::isinf(p)) return 1.0;
  return p / (p - 1.0);
}

/// Number of linearly independent generators (Gram-Schmidt, relative 1e-12).
std::size_t rank_of(std::span<const DualVec> gens) {
  std::vector<Vec> basis;
  for (const DualVec& g : gens) {
    Vec r = as_primal(g);
    const double len = euclidean_norm(r);
    if (len == 0.0) continue;
    for (const Vec& b : basis) r -= dot(r, b) * b;
    const double res = euclidean_norm(r);
    if (res > 1e-12 * len) basis.push_back(r * (1.0 / res));
  }
  return basis.size();
}

template <class F>
std::pair<double, double> golden_min(F&& f, double lo, double hi) {
  constexpr double kRatio = 0.6180339887498949;
  double a = lo, b = hi;
  double x1 = b - kRatio * (b - a), x2 = a + kRatio * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int it = 0; it < 160 && b - a > 0.0; ++it) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kRatio * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kRatio * (b - a);
      f2 = f(x2);
    }
  }
  return f1 <= f2 ? std::pair{x1, f1} : std::pair{x2, f2};
}

DualVec fold_upper(DualVec eta) {
  for (std::size_t i = eta.dim(); i-- > 0;) {
    if (eta[i] > 0.0) return eta;
    if (eta[i] < 0.0) return -eta;
  }
  return eta;
}

bool lex_less(const DualVec& a, const DualVec& b) {
  for (std::size_t i = 0; i < a.dim(); ++i) {
    if (a[i] < b[i]) return true;
    if (a[i] > b[i]) return false;
  }
  return false;
}

}  // namespace

std::string_view to_string(NormKind kind) noexcept {
  switch (kind) {
    case NormKind::Euclidean: return "euclidean";
    case NormKind::WeightedLp: return "lp";
    case NormKind::Polygonal: return "polygonal";
    case NormKind::SumOfCircles: return "sum_of_circles";
  }
  return "unknown";
}

Seminorm Seminorm::euclidean() { return Seminorm(Euclidean{}); }

Seminorm Seminorm::lp(double p) { return weighted_lp(p, {}); }

Seminorm Seminorm::weighted_lp(double p, std::vector<double> weights) {
  if (!(p >= 1.0)) throw Error(ErrorCode::InvalidArgument, "l^p exponent must lie in [1, inf]");
  if (weights.size() > kMaxDim) throw Error(ErrorCode::BadDim, "at most 3 weights");
  for (double w : weights)
    if (!(w >= 0.0) || !std::isfinite(w)) throw Error(ErrorCode::InvalidArgument, "weights must be finite and >= 0");
  return Seminorm(WeightedLp{p, std::move(weights)});
}

Seminorm Seminorm::polygonal(std::vector<DualVec> generators) {
  if (generators.empty()) throw Error(ErrorCode::BadDim, "cannot infer dimension of an empty polygonal seminorm");
  const std::size_t d = generators.front().dim();
  return polygonal(d, std::move(generators));
}

Seminorm Seminorm::polygonal(std::size_t dim, std::vector<DualVec> generators) {
  if (dim == 0 || dim > kMaxDim) throw Error(ErrorCode::BadDim, "polygonal seminorm needs d in 1..3");
  for (const DualVec& g : generators)
    if (g.dim() != dim) throw Error(ErrorCode::DimError, "generator dimension mismatch");
  return Seminorm(Polygonal{dim, std::move(generators)});
}

Seminorm Seminorm::sum_of_circles() { return Seminorm(SumOfCircles{}); }

NormKind Seminorm::kind() const noexcept {
  return std::visit(Overloaded{[](const Euclidean&) { return NormKind::Euclidean; },
                               [](const WeightedLp&) { return NormKind::WeightedLp; },
                               [](const Polygonal&) { return NormKind::Polygonal; },
                               [](const SumOfCircles&) { return NormKind::SumOfCircles; }},
                    data_);
}

std::optional<std::size_t> Seminorm::dim() const noexcept {
  return std::visit(Overloaded{[](const Euclidean&) -> std::optional<std::size_t> { return std::nullopt; },
                               [](const WeightedLp& w) -> std::optional<std::size_t> {
                                 if (w.weights.empty()) return std::nullopt;
                                 return w.weights.size();
                               },
                               [](const Polygonal& p) -> std::optional<std::size_t> { return p.dim; },
                               [](const SumOfCircles&) -> std::optional<std::size_t> { return 3; }},
                    data_);
}

bool Seminorm::accepts_dim(std::size_t d) const noexcept {
  const auto fixed = dim();
  return d >= 1 && d <= kMaxDim && (!fixed || *fixed == d);
}

void Seminorm::check_dim(std::size_t d) const {
  if (!accepts_dim(d)) throw Error(ErrorCode::DimError, "seminorm does not act on dimension " + std::to_string(d));
}

bool Seminorm::is_norm(std::size_t d) const {
  check_dim(d);
  return std::visit(Overloaded{[](const Euclidean&) { return true; },
                               [](const WeightedLp& w) {
                                 return std::all_of(w.weights.begin(), w.weights.end(), [](double x) { return x > 0.0; });
                               },
                               [d](const Polygonal& p) { return rank_of(p.generators) == d; },
                               [](const SumOfCircles&) { return true; }},
                    data_);
}

double Seminorm::operator()(const Vec& v) const {
  check_dim(v.dim());
  return std::visit(Overloaded{[&](const Euclidean&) { return euclidean_norm(v); },
                               [&](const WeightedLp& w) {
                                 std::array<double, kMaxDim> a{};
                                 for (std::size_t i = 0; i < v.dim(); ++i)
                                   a[i] = (w.weights.empty() ? 1.0 : w.weights[i]) * v[i];
                                 return lp_of(w.p, std::span<const double>(a.data(), v.dim()));
                               },
                               [&](const Polygonal& p) {
                                 double s = 0.0;
                                 for (const DualVec& g : p.generators) s += std::abs(pairing(g, v));
                                 return s;
                               },
                               [&](const SumOfCircles&) {
                                 return std::hypot(v[0], v[1]) + std::hypot(v[0], v[2]) + std::hypot(v[1], v[2]);
                               }},
                    data_);
}

double eval(const Seminorm& n, const Vec& v) { return n(v); }

double dual_eval(const Seminorm& n, const DualVec& eta) {
  n.check_dim(eta.dim());
  return std::visit(
      Overloaded{
          [&](const Seminorm::Euclidean&) { return euclidean_norm(eta); },
          [&](const Seminorm::WeightedLp& w) {
            std::array<double, kMaxDim> b{};
            for (std::size_t i = 0; i < eta.dim(); ++i) {
              const double wi = w.weights.empty() ? 1.0 : w.weights[i];
              if (wi == 0.0) {
                if (eta[i] != 0.0) return kInf;
                continue;
              }
              b[i] = eta[i] / wi;
            }
            return lp_of(conjugate_exponent(w.p), std::span<const double>(b.data(), eta.dim()));
          },
          [&](const Seminorm::Polygonal& p) {
            if (p.dim == 3) throw Error(ErrorCode::WrongKind, "dual of a 3-D polygonal seminorm is not supported");
            const bool eta_zero = eta.is_zero();
            if (p.dim == 1) {
              double s = 0.0;
              for (const DualVec& g : p.generators) s += std::abs(g[0]);
              if (s == 0.0) return eta_zero ? 0.0 : kInf;
              return std::abs(eta[0]) / s;
            }
            const std::size_t rank = rank_of(p.generators);
            if (rank == 0) return eta_zero ? 0.0 : kInf;
            if (rank == 1) {
              // n(v) = S |<u, v>| for the longest generator u.
              const DualVec* u = &p.generators.front();
              for (const DualVec& g : p.generators)
                if (euclidean_norm(g) > euclidean_norm(*u)) u = &g;
              const double u2 = euclidean_norm(*u) * euclidean_norm(*u);
              double s = 0.0;
              for (const DualVec& g : p.generators) s += std::abs(pairing(g, as_primal(*u))) / u2;
              const double off = std::abs(cross2(as_primal(eta), as_primal(*u)));
              if (off > 1e-12 * euclidean_norm(eta) * euclidean_norm(*u)) return kInf;
              return std::abs(pairing(eta, as_primal(*u))) / u2 / s;
            }
            // Vertices of the primal unit ball lie on the rays orthogonal to
            // the generators.
            const Seminorm& self = n;
            double best = 0.0;
            for (const DualVec& g : p.generators) {
              if (g.is_zero()) continue;
              const Vec ray{-g[1], g[0]};
              best = std::max(best, std::abs(pairing(eta, ray)) / self(ray));
            }
            return best;
          },
          [&](const Seminorm::SumOfCircles&) { return dual_eval_numeric(n, eta); }},
      n.data());
}

double dual_eval_numeric(const Seminorm& n, const DualVec& eta) {
  const std::size_t d = eta.dim();
  if (!n.is_norm(d)) throw Error(ErrorCode::WrongKind, "numeric dual requires a norm");
  if (eta.is_zero()) return 0.0;
  if (d == 1) return std::abs(eta[0]) / n(Vec{1.0});

  const double len = euclidean_norm(eta);
  const Vec e = as_primal(eta) * (1.0 / len);
  const Vec base = e * (1.0 / len);

  // Orthonormal basis of the plane <eta, .> = 0.
  std::vector<Vec> perp;
  if (d == 2) {
    perp.push_back(Vec{-e[1], e[0]});
  } else {
    Vec seed = std::abs(e[0]) < 0.9 ? Vec{1.0, 0.0, 0.0} : Vec{0.0, 1.0, 0.0};
    Vec b1 = seed - dot(seed, e) * e;
    b1 *= 1.0 / euclidean_norm(b1);
    const Vec b2{e[1] * b1[2] - e[2] * b1[1], e[2] * b1[0] - e[0] * b1[2], e[0] * b1[1] - e[1] * b1[0]};
    perp = {b1, b2};
  }

  double lower = kInf;
  for (const DualVec& u : direction_grid(d, 2000)) lower = std::min(lower, n(as_primal(u)));
  double radius = 2.0 * n(base) / lower;

  for (int attempt = 0; attempt < 30; ++attempt) {
    double best = kInf;
    bool on_edge = false;
    if (d == 2) {
      const auto [a, fa] = golden_min([&](double t) { return n(base + t * perp[0]); }, -radius, radius);
      best = fa;
      on_edge = std::abs(a) > 0.9 * radius;
    } else {
      double arg_a = 0.0;
      const auto [b, fb] = golden_min(
          [&](double s) {
            const auto inner =
                golden_min([&](double t) { return n(base + t * perp[0] + s * perp[1]); }, -radius, radius);
            arg_a = inner.first;
            return inner.second;
          },
          -radius, radius);
      best = fb;
      on_edge = std::abs(b) > 0.9 * radius || std::abs(arg_a) > 0.9 * radius;
    }
    if (!on_edge) return 1.0 / best;
    radius *= 2.0;
  }
  throw Error(ErrorCode::NoConvergence, "numeric dual norm did not localise its minimiser");
}

bool is_strictly_convex(const Seminorm& n, std::size_t d) {
  if (!n.is_norm(d)) return false;
  if (d == 1) return true;
  return std::visit(Overloaded{[](const Seminorm::Euclidean&) { return true; },
                               [](const Seminorm::WeightedLp& w) { return w.p > 1.0 && std::isfinite(w.p); },
                               [](const Seminorm::Polygonal&) { return false; },
                               [](const Seminorm::SumOfCircles&) { return true; }},
                    n.data());
}

bool is_strictly_convex(const Seminorm& n) { return is_strictly_convex(n, n.dim().value_or(2)); }

bool strict_convexity_probe(const Seminorm& n, std::size_t d, std::size_t trials, double margin,
                            std::uint64_t seed) {
  if (trials == 0) throw Error(ErrorCode::InvalidArgument, "probe needs at least one trial");
  if (!n.is_norm(d)) return false;
  if (d == 1) return true;

  const auto violates = [&](const Vec& v, const Vec& w) {
    const double nv = n(v), nw = n(w);
    return n(v + w) >= nv + nw - margin * (nv + nw);
  };

  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      if (i == j) continue;
      const Vec ei = Vec::unit(d, i), ej = Vec::unit(d, j);
      if (violates(ei, ej) || violates(ei, ei + ej)) return false;
    }
  }

  Rng rng(seed);
  std::size_t done = 0;
  while (done < trials) {
    Vec v = Vec::zero(d), w = Vec::zero(d);
    for (std::size_t i = 0; i < d; ++i) {
      v[i] = rng.uniform(-1.0, 1.0);
      w[i] = rng.uniform(-1.0, 1.0);
    }
    const double nv = euclidean_norm(v), nw = euclidean_norm(w);
    if (nv == 0.0 || nw == 0.0) continue;
    const double c = dot(v, w) / (nv * nw);
    if (1.0 - c * c < 1e-4) continue;  // |sin angle| < 1e-2
    ++done;
    if (violates(v, w)) return false;
  }
  return true;
}

ZonalMeasure::ZonalMeasure(std::size_t dim, std::vector<ZonalAtom> atoms) : dim_(dim) {
  if (dim == 0 || dim > kMaxDim) throw Error(ErrorCode::BadDim, "zonal measure needs d in 1..3");
  std::vector<ZonalAtom> folded;
  folded.reserve(atoms.size());
  for (ZonalAtom& a : atoms) {
    if (a.eta.dim() != dim) throw Error(ErrorCode::DimError, "zonal atom dimension mismatch");
    if (!(a.weight > 0.0) || !std::isfinite(a.weight))
      throw Error(ErrorCode::InvalidArgument, "zonal weights must be finite and positive");
    if (a.eta.is_zero()) continue;
    DualVec eta = fold_upper(a.eta);
    for (std::size_t i = 0; i < dim; ++i) eta[i] += 0.0;  // -0.0 -> +0.0
    folded.push_back({eta, a.weight});
  }
  std::stable_sort(folded.begin(), folded.end(),
                   [](const ZonalAtom& a, const ZonalAtom& b) { return lex_less(a.eta, b.eta); });
  for (const ZonalAtom& a : folded) {
    if (!atoms_.empty() && atoms_.back().eta == a.eta) {
      atoms_.back().weight += a.weight;
    } else {
      atoms_.push_back(a);
    }
  }
}

double ZonalMeasure::induced(const Vec& v) const {
  if (v.dim() != dim_) throw Error(ErrorCode::DimError, "zonal measure applied to wrong dimension");
  double s = 0.0;
  for (const ZonalAtom& a : atoms_) s += a.weight * std::abs(pairing(a.eta, v));
  return s;
}

Seminorm ZonalMeasure::as_seminorm() const {
  std::vector<DualVec> gens;
  gens.reserve(atoms_.size());
  for (const ZonalAtom& a : atoms_) gens.push_back(a.weight * a.eta);
  return Seminorm::polygonal(dim_, std::move(gens));
}

ZonalMeasure zonal_from_polygonal_2d(const Seminorm& n) {
  const auto* p = std::get_if<Seminorm::Polygonal>(&n.data());
  if (p == nullptr) throw Error(ErrorCode::WrongKind, "expected a polygonal seminorm");
  if (p->dim != 2) throw Error(ErrorCode::BadDim, "planar decomposition requires d = 2");
  std::vector<ZonalAtom> atoms;
  atoms.reserve(p->generators.size());
  for (const DualVec& g : p->generators) atoms.push_back({g, 1.0});
  return ZonalMeasure(2, std::move(atoms));
}

ZonalApproximation zonal_approx_2d(const Seminorm& n, double eps) {
  if (n.kind() == NormKind::Polygonal) {
    ZonalMeasure sigma = zonal_from_polygonal_2d(n);
    const std::size_t count = sigma.size();
    return {std::move(sigma), count, 0.0};
  }
  n.check_dim(2);
  if (!n.is_norm(2)) throw Error(ErrorCode::WrongKind, "zonal approximation requires a norm");
  if (!(eps > 0.0)) throw Error(ErrorCode::InvalidArgument, "eps must be positive");

  constexpr std::size_t kGrid = 4096;
  constexpr std::size_t kMaxSamples = 4096;
  std::vector<Vec> grid;
  std::vector<double> reference;
  for (const DualVec& u : half_circle_directions(kGrid)) {
    grid.push_back(as_primal(u));
    reference.push_back(n(grid.back()));
  }

  for (std::size_t k = 8; k <= kMaxSamples; k *= 2) {
    // Boundary points of the dual unit ball; with their negatives they span a
    // centrally symmetric inscribed polygon.
    std::vector<DualVec> boundary;
    for (const DualVec& u : half_circle_directions(k)) boundary.push_back(u * (1.0 / dual_eval(n, u)));

    std::vector<ZonalAtom> atoms;
    for (std::size_t i = 0; i < k; ++i) {
      const DualVec next = i + 1 < k ? boundary[i + 1] : -boundary[0];
      atoms.push_back({(next - boundary[i]) * 0.5, 1.0});
    }
    ZonalMeasure sigma(2, std::move(atoms));

    double worst = 0.0;
    bool upper_ok = true;
    for (std::size_t g = 0; g < grid.size(); ++g) {
      const double approx = sigma.induced(grid[g]);
      worst = std::max(worst, (reference[g] - approx) / reference[g]);
      if (approx > reference[g] * (1.0 + 1e-12)) upper_ok = false;
    }
    if (upper_ok && worst <= eps) return {std::move(sigma), k, worst};
  }
  throw Error(ErrorCode::NoConvergence, "zonal approximation did not reach the requested eps");
}

EuclideanZonal zonal_euclidean(std::size_t d, std::size_t nodes) {
  if (d != 2 && d != 3) throw Error(ErrorCode::BadDim, "Euclidean zonal quadrature needs d = 2 or 3");
  if (nodes < 4) throw Error(ErrorCode::InvalidArgument, "need at least 4 quadrature nodes");
  std::vector<ZonalAtom> atoms;
  if (d == 2) {
    const double kappa = 0.25;
    const double h = 2.0 * std::numbers::pi / static_cast<double>(nodes);
    const bool paired = nodes % 2 == 0;
    const std::size_t half = nodes / 2;
    std::vector<DualVec> dirs;
    for (std::size_t k = 0; k < nodes; ++k) {
      if (paired && k >= half) {
        dirs.push_back(-dirs[k - half]);
      } else {
        const double t = (static_cast<double>(k) + 0.5) * h;
        dirs.push_back(DualVec{std::cos(t), std::sin(t)});
      }
    }
    for (const DualVec& eta : dirs) atoms.push_back({eta, kappa * h});
    return {ZonalMeasure(2, std::move(atoms)), kappa};
  }

  const double kappa = 0.5 / std::numbers::pi;
  const auto nz = std::max<std::size_t>(2, static_cast<std::size_t>(std::llround(std::sqrt(nodes / 2.0))));
  std::size_t nphi = std::max<std::size_t>(4, nodes / nz);
  nphi += nphi % 2;
  const double hz = 2.0 / static_cast<double>(nz);
  const double hphi = 2.0 * std::numbers::pi / static_cast<double>(nphi);
  for (std::size_t i = 0; i < nz; ++i) {
    const double z = -1.0 + (static_cast<double>(i) + 0.5) * hz;
    const double r = std::sqrt(1.0 - z * z);
    for (std::size_t j = 0; j < nphi; ++j) {
      const double phi = (static_cast<double>(j) + 0.5) * hphi;
      atoms.push_back({DualVec{r * std::cos(phi), r * std::sin(phi), z}, kappa * hz * hphi});
    }
  }
  return {ZonalMeasure(3, std::move(atoms)), kappa};
}

ZonalValidation validate_zonal(const Seminorm& n, const ZonalMeasure& sigma, std::size_t grid, double tol) {
  n.check_dim(sigma.dim());
  const auto dirs = direction_grid(sigma.dim(), std::max<std::size_t>(grid, 1));
  ZonalValidation out{0.0, as_primal(dirs.front()), true};
  for (const DualVec& u : dirs) {
    const Vec v = as_primal(u);
    const double ref = n(v);
    const double got = sigma.induced(v);
    const double err = ref > 0.0 ? std::abs(got - ref) / ref : std::abs(got);
    if (err > out.max_rel_error) {
      out.max_rel_error = err;
      out.worst_direction = v;
    }
  }
  out.pass = out.max_rel_error <= tol;
  return out;
}

}  // namespace vecmeasure
