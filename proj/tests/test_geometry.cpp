#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "support/oracles.hpp"
#include "vecmeasure/geometry.hpp"
#include "vecmeasure/rng.hpp"

using namespace vecmeasure;

namespace {

ConvexPolygon square() {
  const std::vector<Vec> pts{{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}};
  return ConvexPolygon::hull(pts);
}

std::vector<oracle::P2> to_p2(const ConvexPolygon& p) {
  std::vector<oracle::P2> out;
  for (const Vec& v : p.vertices()) out.push_back({v[0], v[1]});
  return out;
}

ConvexPolygon random_polygon(Rng& r, int k) {
  std::vector<Vec> pts;
  for (int i = 0; i < k; ++i) pts.push_back(Vec{r.uniform(-1.0, 1.0), r.uniform(-1.0, 1.0)});
  return ConvexPolygon::hull(pts);
}

}  // namespace

TEST(Vec, RejectsBadDimensionsAndNonFinite) {
  EXPECT_THROW(Vec(std::span<const double>{}), Error);
  EXPECT_THROW((Vec{1.0, 2.0, 3.0, 4.0}), Error);
  EXPECT_THROW((Vec{1.0, NAN}), Error);
  try {
    Vec{1.0} + Vec{1.0, 2.0};
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DimError);
  }
}

TEST(Vec, PairingAndCross) {
  EXPECT_DOUBLE_EQ(pairing(DualVec{1.0, 2.0}, Vec{3.0, -1.0}), 1.0);
  EXPECT_DOUBLE_EQ(cross2(Vec{1.0, 0.0}, Vec{0.0, 1.0}), 1.0);
  EXPECT_THROW(pairing(DualVec{1.0}, Vec{1.0, 0.0}), Error);
}

TEST(LinearMap, ApplyAndTranspose) {
  const LinearMap t(2, 3, {1.0, 2.0, 3.0, 4.0, 5.0, 6.0});
  const Vec v = t.apply(Vec{1.0, 0.0, -1.0});
  EXPECT_EQ(v, (Vec{-2.0, -2.0}));
  const DualVec eta{1.0, 1.0};
  // <eta, T v> = <T^t eta, v>
  EXPECT_DOUBLE_EQ(pairing(eta, v), pairing(t.apply_transpose(eta), Vec{1.0, 0.0, -1.0}));
}

TEST(ConvexPolygon, HullOfSquareWithInteriorAndCollinearPoints) {
  const std::vector<Vec> pts{{0.0, 0.0}, {0.5, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.5, 0.5}, {0.0, 1.0}, {1.0, 1.0}};
  const ConvexPolygon p = ConvexPolygon::hull(pts);
  ASSERT_EQ(p.size(), 4U);
  EXPECT_EQ(p.vertices().front(), (Vec{0.0, 0.0}));
  for (std::size_t i = 0; i < p.size(); ++i) {
    const auto& vs = p.vertices();
    EXPECT_GT(cross2(vs[(i + 1) % 4] - vs[i], vs[(i + 2) % 4] - vs[(i + 1) % 4]), 0.0);
  }
}

TEST(ConvexPolygon, DegenerateHulls) {
  const std::vector<Vec> one{{2.0, 3.0}, {2.0, 3.0 + 1e-14}};
  EXPECT_EQ(ConvexPolygon::hull(one).size(), 1U);
  const std::vector<Vec> seg{{0.0, 0.0}, {1.0, 1.0}, {0.5, 0.5}};
  EXPECT_EQ(ConvexPolygon::hull(seg).size(), 2U);
  EXPECT_TRUE(ConvexPolygon::hull(std::vector<Vec>{}).empty());
}

TEST(ConvexPolygon, AgreesWithGiftWrapping) {
  Rng r(7);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<oracle::P2> raw;
    std::vector<Vec> pts;
    for (int i = 0; i < 3 + trial % 20; ++i) {
      const double x = r.uniform(-1.0, 1.0), y = r.uniform(-1.0, 1.0);
      raw.push_back({x, y});
      pts.push_back(Vec{x, y});
    }
    const auto ref = oracle::gift_wrap(raw);
    const ConvexPolygon p = ConvexPolygon::hull(pts);
    ASSERT_EQ(p.size(), ref.size());
    const auto euclid = [](double x, double y) { return std::hypot(x, y); };
    EXPECT_NEAR(oracle::polygon_perimeter(ref, euclid), oracle::polygon_perimeter(to_p2(p), euclid), 1e-12);
  }
}

TEST(Hausdorff, SquareExamples) {
  const ConvexPolygon sq = square();
  EXPECT_EQ(hausdorff_distance(sq, sq), 0.0);
  const std::vector<Vec> diag{{0.0, 0.0}, {1.0, 1.0}};
  const ConvexPolygon seg = ConvexPolygon::hull(diag);
  EXPECT_NEAR(hausdorff_distance(sq, seg), std::sqrt(0.5), 1e-15);
  EXPECT_EQ(directed_hausdorff(seg, sq), 0.0);
  const std::vector<Vec> far{{3.0, 0.0}};
  EXPECT_NEAR(point_to_convex_distance(Vec{3.0, 0.0}, sq), 2.0, 1e-15);
  EXPECT_NEAR(hausdorff_distance(ConvexPolygon::hull(far), sq), std::hypot(3.0, 1.0), 1e-15);
}

TEST(Hausdorff, MetricAxiomsAndSampledLowerBound) {
  Rng r(11);
  for (int trial = 0; trial < 200; ++trial) {
    const ConvexPolygon a = random_polygon(r, 1 + trial % 8);
    const ConvexPolygon b = random_polygon(r, 1 + (trial / 8) % 8);
    const ConvexPolygon c = random_polygon(r, 3);
    const double ab = hausdorff_distance(a, b);
    EXPECT_EQ(ab, hausdorff_distance(b, a));
    EXPECT_LE(ab, hausdorff_distance(a, c) + hausdorff_distance(c, b) + 1e-9);
    EXPECT_EQ(hausdorff_distance(a, a), 0.0);
    // Support-function sampling approaches the exact value from below.
    const double sampled = oracle::sampled_hausdorff(to_p2(a), to_p2(b), 20000);
    EXPECT_LE(sampled, ab + 1e-12);
    EXPECT_GE(sampled, ab - 1e-3);
  }
}

TEST(Directions, GridsAreUnitAndSized) {
  EXPECT_EQ(direction_grid(1, 64).size(), 1U);
  const auto half = half_circle_directions(64);
  ASSERT_EQ(half.size(), 64U);
  for (const DualVec& u : half) EXPECT_NEAR(euclidean_norm(u), 1.0, 1e-15);
  for (const DualVec& u : sphere_directions(100)) EXPECT_NEAR(euclidean_norm(u), 1.0, 1e-14);
  EXPECT_EQ(circle_directions(4).size(), 4U);
}
