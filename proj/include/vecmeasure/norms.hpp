#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "vecmeasure/geometry.hpp"

namespace vecmeasure {

enum class NormKind { Euclidean, WeightedLp, Polygonal, SumOfCircles };

std::string_view to_string(NormKind kind) noexcept;

/// A seminorm on V = R^d.
///
/// Euclidean and unweighted l^p seminorms are dimension-free and accept
/// vectors of any supported dimension. The other kinds are bound to the
/// dimension implied by their data (weights, generators) and reject vectors of
/// another dimension with DimError.
///
/// Polygonal seminorms evaluate as v -> sum_i |<u_i, v>|; their dual unit ball
/// is the zonotope sum_i [-u_i, u_i]. The sum-of-circles norm on R^3 is
/// sqrt(v1^2 + v2^2) + sqrt(v1^2 + v3^2) + sqrt(v2^2 + v3^2).
class Seminorm {
 public:
  struct Euclidean {};
  struct WeightedLp {
    double p;
    std::vector<double> weights;  // empty means unit weights in any dimension
  };
  struct Polygonal {
    std::size_t dim;
    std::vector<DualVec> generators;
  };
  struct SumOfCircles {};

  static Seminorm euclidean();
  static Seminorm lp(double p);
  static Seminorm weighted_lp(double p, std::vector<double> weights);
  static Seminorm polygonal(std::vector<DualVec> generators);
  static Seminorm polygonal(std::size_t dim, std::vector<DualVec> generators);
  static Seminorm sum_of_circles();

  NormKind kind() const noexcept;
  /// Bound dimension, or nullopt for dimension-free kinds.
  std::optional<std::size_t> dim() const noexcept;
  bool accepts_dim(std::size_t d) const noexcept;
  void check_dim(std::size_t d) const;

  /// True when the seminorm has trivial kernel in dimension `d`.
  bool is_norm(std::size_t d) const;

  double operator()(const Vec& v) const;

  const auto& data() const noexcept { return data_; }

 private:
  using Data = std::variant<Euclidean, WeightedLp, Polygonal, SumOfCircles>;
  explicit Seminorm(Data d) : data_(std::move(d)) {}
  Data data_;
};

double eval(const Seminorm& n, const Vec& v);

/// Dual norm sup{<eta, v> : n(v) <= 1}; +infinity when eta does not vanish on
/// the kernel of n. Polygonal seminorms are supported for d <= 2 only.
double dual_eval(const Seminorm& n, const DualVec& eta);

/// Dual norm by convex minimisation of n over the affine plane <eta, v> = 1.
/// Works for any norm in d <= 3 and is the route used for sum-of-circles.
double dual_eval_numeric(const Seminorm& n, const DualVec& eta);

/// Exact classification by kind; false whenever n has a kernel in dimension d.
/// Every norm on a line is strictly convex (there are no independent pairs).
bool is_strictly_convex(const Seminorm& n, std::size_t d);
/// Uses the seminorm's bound dimension, or d = 2 for dimension-free kinds.
bool is_strictly_convex(const Seminorm& n);

/// Randomised cross-check of strict convexity. Basis pairs (e_i, e_j) and
/// (e_i, e_i + e_j) are tried first, then random pairs whose angle has
/// |sin| >= 1e-2. Returns false iff some pair satisfies
/// |v + w| >= |v| + |w| - margin (|v| + |w|).
bool strict_convexity_probe(const Seminorm& n, std::size_t d, std::size_t trials, double margin,
                            std::uint64_t seed);

struct ZonalAtom {
  DualVec eta;
  double weight;
};

/// Finite zonal measure sigma = sum_j w_j delta_{eta_j}, inducing the
/// seminorm v -> sum_j w_j |<eta_j, v>|.
///
/// Normal form: zero functionals are dropped, each eta is replaced by -eta
/// when needed so that its last nonzero coordinate is positive, atoms are
/// sorted lexicographically and exact duplicates merged by adding weights.
class ZonalMeasure {
 public:
  ZonalMeasure() = default;
  ZonalMeasure(std::size_t dim, std::vector<ZonalAtom> atoms);

  std::size_t dim() const noexcept { return dim_; }
  const std::vector<ZonalAtom>& atoms() const noexcept { return atoms_; }
  std::size_t size() const noexcept { return atoms_.size(); }

  double induced(const Vec& v) const;
  /// The induced seminorm as a polygonal seminorm with generators w_j eta_j.
  Seminorm as_seminorm() const;

 private:
  std::size_t dim_ = 0;
  std::vector<ZonalAtom> atoms_;
};

/// Exact zonal measure of a planar polygonal seminorm: one unit-weight atom
/// per generator.
ZonalMeasure zonal_from_polygonal_2d(const Seminorm& n);

struct ZonalApproximation {
  ZonalMeasure sigma;
  std::size_t boundary_samples;  // directions sampled on the dual sphere
  double certified_eps;          // worst observed (n - N)/n on the check grid
};

/// Inner zonotope approximation of a planar norm: (1 - eps) n <= N <= n on a
/// direction grid, where N is induced by the returned measure.
ZonalApproximation zonal_approx_2d(const Seminorm& n, double eps);

struct EuclideanZonal {
  ZonalMeasure sigma;
  double kappa;  // constant multiplying the surface measure
};

/// Midpoint quadrature of kappa * (surface measure on the unit sphere), which
/// induces the Euclidean norm up to quadrature error. d = 2 uses kappa = 1/4
/// against arc length, d = 3 uses kappa = 1/(2 pi) against area.
EuclideanZonal zonal_euclidean(std::size_t d, std::size_t nodes);

struct ZonalValidation {
  double max_rel_error;
  Vec worst_direction;
  bool pass;
};

ZonalValidation validate_zonal(const Seminorm& n, const ZonalMeasure& sigma, std::size_t grid, double tol);

}  // namespace vecmeasure
