#include "vecmeasure/zonotope.hpp"

#include <algorithm>
#include <cmath>

#include "vecmeasure/measures.hpp"

namespace vecmeasure {

namespace {

bool points_up(const Vec& g) {
  for (std::size_t i = g.dim(); i-- > 0;) {
    if (g[i] > 0.0) return true;
    if (g[i] < 0.0) return false;
  }
  return true;
}

Vec embed_plane(const Vec& v) { return v.dim() == 2 ? v : Vec{v[0], 0.0}; }

ConvexPolygon planar(const Zonotope& z) {
  if (z.dim() > 2) throw Error(ErrorCode::DimError, "planar zonotope geometry requires d <= 2");
  return vertices_2d(z);
}

std::vector<DualVec> fan_directions(const ConvexPolygon& a, const ConvexPolygon& b) {
  std::vector<DualVec> dirs{DualVec{1.0, 0.0}, DualVec{-1.0, 0.0}, DualVec{0.0, 1.0}, DualVec{0.0, -1.0}};
  for (const ConvexPolygon* p : {&a, &b}) {
    const auto& vs = p->vertices();
    if (vs.size() < 2) continue;
    for (std::size_t i = 0; i < vs.size(); ++i) {
      const Vec e = vs[(i + 1) % vs.size()] - vs[i];
      const double len = euclidean_norm(e);
      if (len == 0.0) continue;
      const DualVec nrm{e[1] / len, -e[0] / len};
      dirs.push_back(nrm);
      dirs.push_back(-nrm);
    }
  }
  return dirs;
}

}  // namespace

Zonotope::Zonotope(std::size_t dim, std::vector<Vec> generators, Vec offset) : dim_(dim), offset_(std::move(offset)) {
  if (dim == 0 || dim > kMaxDim) throw Error(ErrorCode::BadDim, "zonotope needs d in 1..3");
  if (offset_.dim() != dim) throw Error(ErrorCode::DimError, "offset dimension mismatch");
  for (Vec& g : generators) {
    if (g.dim() != dim) throw Error(ErrorCode::DimError, "generator dimension mismatch");
    if (g.is_zero()) continue;
    if (!points_up(g)) {
      offset_ += g;
      g = -g;
    }
    generators_.push_back(g);
  }
  if (dim == 2) {
    std::stable_sort(generators_.begin(), generators_.end(),
                     [](const Vec& a, const Vec& b) { return std::atan2(a[1], a[0]) < std::atan2(b[1], b[0]); });
  } else {
    std::stable_sort(generators_.begin(), generators_.end(), [](const Vec& a, const Vec& b) {
      return std::lexicographical_compare(a.coords().begin(), a.coords().end(), b.coords().begin(), b.coords().end());
    });
  }
}

Zonotope::Zonotope(std::size_t dim, std::vector<Vec> generators) : Zonotope(dim, std::move(generators), Vec::zero(dim)) {}

Zonotope Zonotope::point(const Vec& offset) { return Zonotope(offset.dim(), {}, offset); }

Vec Zonotope::center() const {
  Vec c = offset_;
  for (const Vec& g : generators_) c += 0.5 * g;
  return c;
}

double Zonotope::scale() const {
  double s = 0.0;
  Vec far = offset_;
  for (const Vec& g : generators_) {
    far += g;
    for (double x : g.coords()) s = std::max(s, std::abs(x));
  }
  for (std::size_t i = 0; i < dim_; ++i) s = std::max({s, std::abs(offset_[i]), std::abs(far[i])});
  return s;
}

double support(const Zonotope& z, const DualVec& u) {
  double h = pairing(u, z.offset());
  for (const Vec& g : z.generators()) h += std::max(0.0, pairing(u, g));
  return h;
}

ConvexPolygon vertices_2d(const Zonotope& z) {
  if (z.dim() > 2) throw Error(ErrorCode::DimError, "vertex enumeration requires d <= 2");
  std::vector<Vec> walk;
  walk.reserve(2 * z.generators().size() + 1);
  Vec cur = embed_plane(z.offset());
  walk.push_back(cur);
  for (const Vec& g : z.generators()) {
    cur += embed_plane(g);
    walk.push_back(cur);
  }
  for (const Vec& g : z.generators()) {
    cur -= embed_plane(g);
    walk.push_back(cur);
  }
  return ConvexPolygon::hull(walk);
}

Zonotope minkowski_sum(const Zonotope& a, const Zonotope& b) {
  if (a.dim() != b.dim()) throw Error(ErrorCode::DimError, "Minkowski sum of mismatched dimensions");
  std::vector<Vec> gens = a.generators();
  gens.insert(gens.end(), b.generators().begin(), b.generators().end());
  return Zonotope(a.dim(), std::move(gens), a.offset() + b.offset());
}

Zonotope linear_image(const Zonotope& z, const LinearMap& t) {
  std::vector<Vec> gens;
  gens.reserve(z.generators().size());
  for (const Vec& g : z.generators()) gens.push_back(t.apply(g));
  return Zonotope(t.rows(), std::move(gens), t.apply(z.offset()));
}

bool contains_2d(const ConvexPolygon& outer, const ConvexPolygon& inner) {
  if (outer.empty() || inner.empty()) throw Error(ErrorCode::EmptyBody, "containment of an empty body");
  const double tol = 1e-12 * std::max(outer.scale(), inner.scale());
  for (const DualVec& u : fan_directions(outer, inner)) {
    if (support(inner, u) > support(outer, u) + tol) return false;
  }
  return true;
}

bool contains_2d(const Zonotope& outer, const Zonotope& inner) {
  if (outer.dim() != inner.dim()) throw Error(ErrorCode::DimError, "containment of mismatched dimensions");
  return contains_2d(planar(outer), planar(inner));
}

double sampled_hausdorff(const Zonotope& a, const Zonotope& b, std::span<const DualVec> directions) {
  if (a.dim() != b.dim()) throw Error(ErrorCode::DimError, "Hausdorff distance of mismatched dimensions");
  double worst = 0.0;
  for (const DualVec& u : directions) worst = std::max(worst, std::abs(support(a, u) - support(b, u)));
  return worst;
}

double hausdorff_distance(const Zonotope& a, const Zonotope& b) {
  if (a.dim() != b.dim()) throw Error(ErrorCode::DimError, "Hausdorff distance of mismatched dimensions");
  if (a.dim() <= 2) return hausdorff_distance(planar(a), planar(b));
  const auto dirs = sphere_directions(4096);
  return sampled_hausdorff(a, b, dirs);
}

double directed_hausdorff(const Zonotope& a, const Zonotope& b) {
  if (a.dim() != b.dim()) throw Error(ErrorCode::DimError, "Hausdorff distance of mismatched dimensions");
  if (a.dim() <= 2) return directed_hausdorff(planar(a), planar(b));
  double worst = 0.0;
  for (const DualVec& u : sphere_directions(4096)) worst = std::max(worst, support(a, u) - support(b, u));
  return worst;
}

double perimeter(const ConvexPolygon& p, const Seminorm& n) {
  n.check_dim(2);
  const auto& vs = p.vertices();
  if (vs.size() < 2) return 0.0;
  double per = 0.0;
  for (std::size_t i = 0; i < vs.size(); ++i) per += n(vs[(i + 1) % vs.size()] - vs[i]);
  return per;
}

double perimeter(const Zonotope& z, const Seminorm& n) {
  if (z.dim() != 2) throw Error(ErrorCode::DimError, "perimeter requires d = 2");
  return perimeter(vertices_2d(z), n);
}

double crofton_perimeter(const ConvexPolygon& c, const ZonalMeasure& sigma) {
  if (sigma.dim() != 2) throw Error(ErrorCode::DimError, "planar Crofton formula requires d = 2");
  if (c.empty()) throw Error(ErrorCode::EmptyBody, "perimeter of an empty body");
  double total = 0.0;
  for (const ZonalAtom& a : sigma.atoms()) {
    total += a.weight * (support(c, a.eta) + support(c, -a.eta));
  }
  return 2.0 * total;
}

PerimeterIdentityReport mass_perimeter_identity_check(const VectorMeasure& mu, const Seminorm& n) {
  if (mu.dim() != 2) throw Error(ErrorCode::DimError, "mass-perimeter identity requires d = 2");
  PerimeterIdentityReport r{};
  r.mass = total_variation(mu, n);
  r.half_perimeter = 0.5 * perimeter(range(mu), n);
  r.abs_gap = std::abs(r.mass - r.half_perimeter);
  r.rel_gap = r.mass > 0.0 ? r.abs_gap / r.mass : r.abs_gap;
  return r;
}

PerimeterMonotonicityReport perimeter_monotonicity_check(const ConvexPolygon& inner, const ConvexPolygon& outer,
                                                         const Seminorm& n) {
  if (!contains_2d(outer, inner)) throw Error(ErrorCode::NotContained, "inner body is not contained in outer body");
  PerimeterMonotonicityReport r{};
  r.inner_perimeter = perimeter(inner, n);
  r.outer_perimeter = perimeter(outer, n);
  r.hausdorff = hausdorff_distance(inner, outer);
  const double per_scale = std::max(r.inner_perimeter, r.outer_perimeter);
  const double geo_scale = std::max(inner.scale(), outer.scale());
  r.monotone = r.inner_perimeter <= r.outer_perimeter + 1e-12 * per_scale;
  r.strict_required = is_strictly_convex(n, 2) && r.hausdorff > 1e-9 * geo_scale;
  r.strict_ok = r.inner_perimeter < r.outer_perimeter;
  return r;
}

}  // namespace vecmeasure
