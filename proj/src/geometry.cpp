#include "vecmeasure/geometry.hpp"

#include <algorithm>
#include <limits>
#include <numbers>

namespace vecmeasure {

namespace {

void require_planar(const Vec& v) {
  if (v.dim() != 2) throw Error(ErrorCode::DimError, "planar geometry requires d = 2");
}

void require_nonempty(const ConvexPolygon& body) {
  if (body.empty()) throw Error(ErrorCode::EmptyBody, "convex body has no points");
}

double point_segment_distance(const Vec& p, const Vec& a, const Vec& b) {
  const Vec ab = b - a;
  const double len2 = dot(ab, ab);
  double t = len2 > 0.0 ? dot(p - a, ab) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return euclidean_norm(p - (a + t * ab));
}

bool near(const Vec& a, const Vec& b) { return euclidean_norm(a - b) < kVertexMergeTol; }

}  // namespace

double pairing(const DualVec& eta, const Vec& v) {
  if (eta.dim() != v.dim()) throw Error(ErrorCode::DimError, "pairing of mismatched dimensions");
  double s = 0.0;
  for (std::size_t i = 0; i < v.dim(); ++i) s += eta[i] * v[i];
  return s;
}

double dot(const Vec& a, const Vec& b) { return pairing(as_dual(a), b); }

double euclidean_norm(const Vec& v) {
  switch (v.dim()) {
    case 1: return std::abs(v[0]);
    case 2: return std::hypot(v[0], v[1]);
    default: return std::hypot(v[0], v[1], v[2]);
  }
}

double euclidean_norm(const DualVec& eta) { return euclidean_norm(as_primal(eta)); }

double cross2(const Vec& a, const Vec& b) { return a[0] * b[1] - a[1] * b[0]; }

DualVec as_dual(const Vec& v) { return DualVec(v.coords()); }
Vec as_primal(const DualVec& eta) { return Vec(eta.coords()); }

LinearMap::LinearMap(std::size_t rows, std::size_t cols, std::vector<double> entries)
    : rows_(rows), cols_(cols), a_(std::move(entries)) {
  if (rows == 0 || cols == 0 || rows > kMaxDim || cols > kMaxDim)
    throw Error(ErrorCode::BadDim, "linear map dimensions must be within 1..3");
  if (a_.size() != rows * cols) throw Error(ErrorCode::DimError, "linear map entry count mismatch");
  for (double x : a_)
    if (!std::isfinite(x)) throw Error(ErrorCode::InvalidArgument, "non-finite matrix entry");
}

LinearMap LinearMap::identity(std::size_t dim) { return scaling(dim, 1.0); }

LinearMap LinearMap::scaling(std::size_t dim, double factor) {
  std::vector<double> a(dim * dim, 0.0);
  for (std::size_t i = 0; i < dim; ++i) a[i * dim + i] = factor;
  return LinearMap(dim, dim, std::move(a));
}

Vec LinearMap::apply(const Vec& v) const {
  if (v.dim() != cols_) throw Error(ErrorCode::DimError, "linear map applied to wrong dimension");
  Vec out = Vec::zero(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    double s = 0.0;
    for (std::size_t c = 0; c < cols_; ++c) s += at(r, c) * v[c];
    out[r] = s;
  }
  return out;
}

DualVec LinearMap::apply_transpose(const DualVec& eta) const {
  if (eta.dim() != rows_) throw Error(ErrorCode::DimError, "adjoint applied to wrong dimension");
  DualVec out = DualVec::zero(cols_);
  for (std::size_t c = 0; c < cols_; ++c) {
    double s = 0.0;
    for (std::size_t r = 0; r < rows_; ++r) s += at(r, c) * eta[r];
    out[c] = s;
  }
  return out;
}

ConvexPolygon ConvexPolygon::hull(std::span<const Vec> points) {
  std::vector<Vec> pts;
  pts.reserve(points.size());
  for (const Vec& p : points) {
    require_planar(p);
    pts.push_back(p);
  }
  std::sort(pts.begin(), pts.end(), [](const Vec& a, const Vec& b) {
    return a[0] < b[0] || (a[0] == b[0] && a[1] < b[1]);
  });
  std::vector<Vec> unique;
  for (const Vec& p : pts) {
    if (unique.empty() || !near(unique.back(), p)) unique.push_back(p);
  }

  ConvexPolygon out;
  if (unique.size() <= 1) {
    out.vertices_ = std::move(unique);
    return out;
  }

  // Andrew's monotone chain; collinear points are dropped (cross <= 0 pops).
  std::vector<Vec> h(2 * unique.size());
  std::size_t k = 0;
  for (const Vec& p : unique) {
    while (k >= 2 && cross2(h[k - 1] - h[k - 2], p - h[k - 2]) <= 0.0) --k;
    h[k++] = p;
  }
  for (std::size_t i = unique.size() - 1, lower = k + 1; i-- > 0;) {
    const Vec& p = unique[i];
    while (k >= lower && cross2(h[k - 1] - h[k - 2], p - h[k - 2]) <= 0.0) --k;
    h[k++] = p;
  }
  h.resize(k - 1);

  // Cyclic dedup of near-coincident vertices left by the chain.
  std::vector<Vec> verts;
  for (const Vec& p : h) {
    if (verts.empty() || !near(verts.back(), p)) verts.push_back(p);
  }
  while (verts.size() > 1 && near(verts.front(), verts.back())) verts.pop_back();
  out.vertices_ = std::move(verts);
  return out;
}

double ConvexPolygon::scale() const noexcept {
  double s = 0.0;
  for (const Vec& v : vertices_) s = std::max({s, std::abs(v[0]), std::abs(v[1])});
  return s;
}

double support(const ConvexPolygon& body, const DualVec& u) {
  require_nonempty(body);
  double best = -std::numeric_limits<double>::infinity();
  for (const Vec& v : body.vertices()) best = std::max(best, pairing(u, v));
  return best;
}

double point_to_convex_distance(const Vec& p, const ConvexPolygon& body) {
  require_nonempty(body);
  require_planar(p);
  const auto& vs = body.vertices();
  if (vs.size() == 1) return euclidean_norm(p - vs[0]);
  if (vs.size() == 2) return point_segment_distance(p, vs[0], vs[1]);

  bool inside = true;
  for (std::size_t i = 0; i < vs.size() && inside; ++i) {
    const Vec& a = vs[i];
    const Vec& b = vs[(i + 1) % vs.size()];
    if (cross2(b - a, p - a) < 0.0) inside = false;
  }
  if (inside) return 0.0;

  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < vs.size(); ++i) {
    best = std::min(best, point_segment_distance(p, vs[i], vs[(i + 1) % vs.size()]));
  }
  return best;
}

// dist(., b) is convex, so its maximum over conv(a) is attained at a vertex.
double directed_hausdorff(const ConvexPolygon& a, const ConvexPolygon& b) {
  require_nonempty(a);
  require_nonempty(b);
  double worst = 0.0;
  for (const Vec& v : a.vertices()) worst = std::max(worst, point_to_convex_distance(v, b));
  return worst;
}

double hausdorff_distance(const ConvexPolygon& a, const ConvexPolygon& b) {
  return std::max(directed_hausdorff(a, b), directed_hausdorff(b, a));
}

std::vector<DualVec> half_circle_directions(std::size_t count) {
  std::vector<DualVec> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    const double t = std::numbers::pi * static_cast<double>(k) / static_cast<double>(count);
    out.push_back(DualVec{std::cos(t), std::sin(t)});
  }
  return out;
}

std::vector<DualVec> circle_directions(std::size_t count) {
  std::vector<DualVec> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    const double t = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(count);
    out.push_back(DualVec{std::cos(t), std::sin(t)});
  }
  return out;
}

std::vector<DualVec> sphere_directions(std::size_t count) {
  std::vector<DualVec> out;
  out.reserve(count);
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (std::size_t k = 0; k < count; ++k) {
    const double z = 1.0 - (2.0 * static_cast<double>(k) + 1.0) / static_cast<double>(count);
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = golden * static_cast<double>(k);
    out.push_back(DualVec{r * std::cos(phi), r * std::sin(phi), z});
  }
  return out;
}

std::vector<DualVec> direction_grid(std::size_t dim, std::size_t count) {
  switch (dim) {
    case 1: return {DualVec{1.0}};
    case 2: return half_circle_directions(count);
    case 3: return sphere_directions(count);
    default: throw Error(ErrorCode::BadDim, "direction grid needs d in 1..3");
  }
}

}  // namespace vecmeasure
