#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "vecmeasure/geometry.hpp"
#include "vecmeasure/norms.hpp"

namespace vecmeasure {

class VectorMeasure;

/// Zonotope offset + [0, g_1] + ... + [0, g_k] in R^d, d in 1..3.
///
/// Canonical form: zero generators are dropped and every generator is
/// oriented so that its last nonzero coordinate is positive (in the plane:
/// into the upper half-plane, with horizontal generators pointing right).
/// Flipping g to -g moves the offset by g, so the set is unchanged. In d = 2
/// generators are then sorted by angle, in other dimensions lexicographically.
class Zonotope {
 public:
  Zonotope(std::size_t dim, std::vector<Vec> generators, Vec offset);
  Zonotope(std::size_t dim, std::vector<Vec> generators);
  static Zonotope point(const Vec& offset);

  std::size_t dim() const noexcept { return dim_; }
  const std::vector<Vec>& generators() const noexcept { return generators_; }
  const Vec& offset() const noexcept { return offset_; }
  /// Centre of symmetry, offset + sum(g) / 2.
  Vec center() const;
  /// Largest absolute coordinate over the corners offset and offset + sum(g)
  /// plus the generators; used to scale tolerances.
  double scale() const;

 private:
  std::size_t dim_;
  std::vector<Vec> generators_;
  Vec offset_;
};

double support(const Zonotope& z, const DualVec& u);

/// Vertex walk: start at the canonical offset and add the angle-sorted
/// generators, then subtract them. Parallel generators collapse into one edge;
/// an all-parallel zonotope yields a segment and an empty one a point. A 1-D
/// zonotope is embedded in the plane on the first axis.
ConvexPolygon vertices_2d(const Zonotope& z);

Zonotope minkowski_sum(const Zonotope& a, const Zonotope& b);
Zonotope linear_image(const Zonotope& z, const LinearMap& t);

/// Exact containment in the plane: compares support functions on the common
/// normal fan of both polygons plus the coordinate axes.
bool contains_2d(const ConvexPolygon& outer, const ConvexPolygon& inner);
bool contains_2d(const Zonotope& outer, const Zonotope& inner);

/// Hausdorff distances between zonotopes. Exact for d <= 2; for d = 3 the
/// value is max_u |h_a(u) - h_b(u)| over 4096 sphere directions, a lower
/// bound of the true distance.
double hausdorff_distance(const Zonotope& a, const Zonotope& b);
double directed_hausdorff(const Zonotope& a, const Zonotope& b);

/// Support-function estimate of the Hausdorff distance over explicit directions.
double sampled_hausdorff(const Zonotope& a, const Zonotope& b, std::span<const DualVec> directions);

/// Anisotropic perimeter: sum of seminorm lengths of consecutive edges.
/// A segment [a, b] has perimeter 2 n(b - a), a point 0.
double perimeter(const ConvexPolygon& p, const Seminorm& n);
double perimeter(const Zonotope& z, const Seminorm& n);

/// 2 * sum_j w_j * (max - min of <eta_j, .> over c).
double crofton_perimeter(const ConvexPolygon& c, const ZonalMeasure& sigma);

struct PerimeterIdentityReport {
  double mass;
  double half_perimeter;
  double abs_gap;
  double rel_gap;
};

PerimeterIdentityReport mass_perimeter_identity_check(const VectorMeasure& mu, const Seminorm& n);

struct PerimeterMonotonicityReport {
  double inner_perimeter;
  double outer_perimeter;
  double hausdorff;
  bool strict_required;  // strictly convex norm and distinct bodies
  bool monotone;         // inner <= outer + 1e-12 scale
  bool strict_ok;        // inner < outer when strict_required
  bool passed() const noexcept { return monotone && (!strict_required || strict_ok); }
};

/// Throws NotContained unless contains_2d(outer, inner).
PerimeterMonotonicityReport perimeter_monotonicity_check(const ConvexPolygon& inner, const ConvexPolygon& outer,
                                                         const Seminorm& n);

}  // namespace vecmeasure
