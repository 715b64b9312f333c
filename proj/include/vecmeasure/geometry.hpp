#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "vecmeasure/error.hpp"

namespace vecmeasure {

inline constexpr std::size_t kMaxDim = 3;

/// Absolute distance below which two polygon vertices are merged.
inline constexpr double kVertexMergeTol = 1e-12;

struct PrimalTag {};
struct DualTag {};

/// Fixed-capacity coordinate vector of dimension 1..3. The tag separates
/// elements of V from linear forms on V so they cannot be mixed by accident;
/// the pairing between the two is the coordinate dot product.
template <class Tag>
class BasicVec {
 public:
  BasicVec() = default;

  BasicVec(std::initializer_list<double> coords) : BasicVec(std::span<const double>(coords.begin(), coords.size())) {}

  explicit BasicVec(std::span<const double> coords) {
    if (coords.empty() || coords.size() > kMaxDim) {
      throw Error(ErrorCode::BadDim, "vector dimension must be 1, 2 or 3");
    }
    dim_ = coords.size();
    for (std::size_t i = 0; i < dim_; ++i) {
      if (!std::isfinite(coords[i])) throw Error(ErrorCode::InvalidArgument, "non-finite coordinate");
      c_[i] = coords[i];
    }
  }

  static BasicVec zero(std::size_t dim) {
    if (dim == 0 || dim > kMaxDim) throw Error(ErrorCode::BadDim, "vector dimension must be 1, 2 or 3");
    BasicVec v;
    v.dim_ = dim;
    return v;
  }

  static BasicVec unit(std::size_t dim, std::size_t axis) {
    BasicVec v = zero(dim);
    v.c_.at(axis) = 1.0;
    return v;
  }

  std::size_t dim() const noexcept { return dim_; }
  double operator[](std::size_t i) const noexcept { return c_[i]; }
  double& operator[](std::size_t i) noexcept { return c_[i]; }
  std::span<const double> coords() const noexcept { return {c_.data(), dim_}; }

  bool is_zero() const noexcept {
    for (std::size_t i = 0; i < dim_; ++i)
      if (c_[i] != 0.0) return false;
    return true;
  }

  BasicVec& operator+=(const BasicVec& o) {
    check_same(o);
    for (std::size_t i = 0; i < dim_; ++i) c_[i] += o.c_[i];
    return *this;
  }
  BasicVec& operator-=(const BasicVec& o) {
    check_same(o);
    for (std::size_t i = 0; i < dim_; ++i) c_[i] -= o.c_[i];
    return *this;
  }
  BasicVec& operator*=(double s) noexcept {
    for (std::size_t i = 0; i < dim_; ++i) c_[i] *= s;
    return *this;
  }

  friend BasicVec operator+(BasicVec a, const BasicVec& b) { return a += b; }
  friend BasicVec operator-(BasicVec a, const BasicVec& b) { return a -= b; }
  friend BasicVec operator*(BasicVec a, double s) noexcept { return a *= s; }
  friend BasicVec operator*(double s, BasicVec a) noexcept { return a *= s; }
  friend BasicVec operator-(BasicVec a) noexcept { return a *= -1.0; }

  friend bool operator==(const BasicVec& a, const BasicVec& b) noexcept {
    if (a.dim_ != b.dim_) return false;
    for (std::size_t i = 0; i < a.dim_; ++i)
      if (a.c_[i] != b.c_[i]) return false;
    return true;
  }

 private:
  void check_same(const BasicVec& o) const {
    if (o.dim_ != dim_) throw Error(ErrorCode::DimError, "vector dimensions differ");
  }

  std::array<double, kMaxDim> c_{};
  std::size_t dim_ = 0;
};

using Vec = BasicVec<PrimalTag>;
using DualVec = BasicVec<DualTag>;

/// The duality pairing <eta, v>.
double pairing(const DualVec& eta, const Vec& v);

double dot(const Vec& a, const Vec& b);
double euclidean_norm(const Vec& v);
double euclidean_norm(const DualVec& eta);
double cross2(const Vec& a, const Vec& b);

/// Riesz identification of V and V' through the coordinate inner product.
DualVec as_dual(const Vec& v);
Vec as_primal(const DualVec& eta);

/// Real matrix acting V -> W, stored row-major (rows = dim W, cols = dim V).
class LinearMap {
 public:
  LinearMap(std::size_t rows, std::size_t cols, std::vector<double> entries);
  static LinearMap identity(std::size_t dim);
  static LinearMap scaling(std::size_t dim, double factor);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  double at(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

  Vec apply(const Vec& v) const;
  /// Adjoint action on linear forms: <T^t eta, v> = <eta, T v>.
  DualVec apply_transpose(const DualVec& eta) const;

 private:
  std::size_t rows_, cols_;
  std::vector<double> a_;
};

/// Convex polygon in the plane, stored as counterclockwise vertices without
/// repetition. Degenerate bodies are allowed: two vertices is a segment, one
/// vertex is a point, zero vertices is the empty body.
class ConvexPolygon {
 public:
  ConvexPolygon() = default;

  /// Convex hull of arbitrary planar points. Points closer than
  /// kVertexMergeTol are merged and collinear vertices removed.
  static ConvexPolygon hull(std::span<const Vec> points);

  const std::vector<Vec>& vertices() const noexcept { return vertices_; }
  std::size_t size() const noexcept { return vertices_.size(); }
  bool empty() const noexcept { return vertices_.empty(); }

  /// Largest absolute coordinate; used to scale tolerances.
  double scale() const noexcept;

 private:
  std::vector<Vec> vertices_;
};

double support(const ConvexPolygon& body, const DualVec& u);
double point_to_convex_distance(const Vec& p, const ConvexPolygon& body);
double directed_hausdorff(const ConvexPolygon& a, const ConvexPolygon& b);
double hausdorff_distance(const ConvexPolygon& a, const ConvexPolygon& b);

/// `count` unit directions evenly spread over the half circle [0, pi).
std::vector<DualVec> half_circle_directions(std::size_t count);
/// `count` unit directions evenly spread over the full circle [0, 2 pi).
std::vector<DualVec> circle_directions(std::size_t count);
/// Fibonacci-lattice unit directions on the 2-sphere.
std::vector<DualVec> sphere_directions(std::size_t count);
/// Direction grid suited to dimension `dim` (1: {+1}; 2: half circle; 3: sphere).
std::vector<DualVec> direction_grid(std::size_t dim, std::size_t count);

}  // namespace vecmeasure
