#include <gtest/gtest.h>

#include <cmath>

#include "support/oracles.hpp"
#include "vecmeasure/measures.hpp"
#include "vecmeasure/rng.hpp"
#include "vecmeasure/zonotope.hpp"

using namespace vecmeasure;

namespace {

ConvexPolygon unit_square() {
  const std::vector<Vec> pts{{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}};
  return ConvexPolygon::hull(pts);
}

ConvexPolygon diagonal() {
  const std::vector<Vec> pts{{0.0, 0.0}, {1.0, 1.0}};
  return ConvexPolygon::hull(pts);
}

std::vector<Vec> random_gens(Rng& r, int m) {
  std::vector<Vec> g;
  for (int i = 0; i < m; ++i) g.push_back(Vec{r.uniform(-1.0, 1.0), r.uniform(-1.0, 1.0)});
  return g;
}

std::vector<oracle::P2> p2(const std::vector<Vec>& vs) {
  std::vector<oracle::P2> out;
  for (const Vec& v : vs) out.push_back({v[0], v[1]});
  return out;
}

}  // namespace

TEST(Zonotope, CanonicalFlipsKeepTheSet) {
  const Zonotope a(2, {Vec{1.0, 0.0}, Vec{0.0, -1.0}, Vec{0.0, 0.0}});
  ASSERT_EQ(a.generators().size(), 2U);
  for (const Vec& g : a.generators()) EXPECT_TRUE(g[1] > 0.0 || (g[1] == 0.0 && g[0] > 0.0));
  EXPECT_EQ(a.offset(), (Vec{0.0, -1.0}));
  EXPECT_EQ(vertices_2d(a).size(), 4U);
  EXPECT_EQ(a.center(), (Vec{0.5, -0.5}));
}

TEST(Zonotope, VertexCounts) {
  EXPECT_EQ(vertices_2d(Zonotope(2, {Vec{1.0, 1.0}})).size(), 2U);
  EXPECT_EQ(vertices_2d(Zonotope(2, {})).size(), 1U);
  Rng r(4);
  EXPECT_EQ(vertices_2d(Zonotope(2, random_gens(r, 6))).size(), 12U);
  // Parallel generators collapse.
  EXPECT_EQ(vertices_2d(Zonotope(2, {Vec{1.0, 1.0}, Vec{2.0, 2.0}, Vec{-1.0, -1.0}})).size(), 2U);
  EXPECT_THROW(vertices_2d(Zonotope(3, {Vec{1.0, 0.0, 0.0}})), Error);
}

TEST(Zonotope, VerticesMatchSubsetSumHull) {
  Rng r(12);
  for (int trial = 0; trial < 100; ++trial) {
    const auto gens = random_gens(r, 1 + trial % 10);
    const Vec offset{r.uniform(-1.0, 1.0), r.uniform(-1.0, 1.0)};
    std::vector<oracle::P2> g;
    for (const Vec& v : gens) g.push_back({v[0], v[1]});
    const auto ref = oracle::gift_wrap(oracle::subset_sums(g, {offset[0], offset[1]}));
    const ConvexPolygon p = vertices_2d(Zonotope(2, gens, offset));
    ASSERT_EQ(p.size(), ref.size());
    EXPECT_LE(oracle::sampled_hausdorff(p2(p.vertices()), ref, 720), 1e-12);
  }
}

TEST(Support, MatchesBruteForceAndMinkowski) {
  Rng r(13);
  for (int trial = 0; trial < 50; ++trial) {
    const auto ga = random_gens(r, 4), gb = random_gens(r, 3);
    const Zonotope a(2, ga), b(2, gb);
    std::vector<oracle::P2> pa;
    for (const Vec& v : ga) pa.push_back({v[0], v[1]});
    const auto pts = oracle::subset_sums(pa);
    for (const DualVec& u : circle_directions(32)) {
      EXPECT_NEAR(support(a, u), oracle::support(pts, u[0], u[1]), 1e-14);
      EXPECT_NEAR(support(minkowski_sum(a, b), u), support(a, u) + support(b, u), 1e-14);
    }
  }
}

TEST(LinearImage, CommutesWithSupport) {
  const Zonotope z(2, {Vec{1.0, 0.0}, Vec{1.0, 2.0}}, Vec{0.5, 0.5});
  const LinearMap t(3, 2, {1.0, 2.0, 0.0, 1.0, -1.0, 1.0});
  const Zonotope image = linear_image(z, t);
  EXPECT_EQ(image.dim(), 3U);
  for (const DualVec& u : sphere_directions(50)) EXPECT_NEAR(support(image, u), support(z, t.apply_transpose(u)), 1e-14);
}

TEST(Containment, Examples) {
  const ConvexPolygon sq = unit_square();
  EXPECT_TRUE(contains_2d(sq, sq));
  EXPECT_TRUE(contains_2d(sq, diagonal()));
  EXPECT_FALSE(contains_2d(diagonal(), sq));
  const Zonotope z(2, {Vec{1.0, 0.0}, Vec{0.0, 1.0}});
  EXPECT_TRUE(contains_2d(z, Zonotope(2, {Vec{1.0, 1.0}})));
  EXPECT_FALSE(contains_2d(z, Zonotope(2, {Vec{1.0, 1.01}})));
}

TEST(Containment, AgreesWithDenseSupportSampling) {
  Rng r(14);
  int contained = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const auto ga = random_gens(r, 1 + trial % 6);
    std::vector<Vec> gb;
    const double shrink = r.uniform(0.0, 0.8);
    for (const Vec& g : random_gens(r, 1 + trial % 4)) gb.push_back(shrink * g);
    const Zonotope outer(2, ga), inner(2, gb, Vec{0.1 * r.uniform(-1.0, 1.0), 0.1 * r.uniform(-1.0, 1.0)});
    const bool exact = contains_2d(outer, inner);
    double worst = -INFINITY;
    for (const DualVec& u : circle_directions(10000)) worst = std::max(worst, support(inner, u) - support(outer, u));
    if (exact) {
      ++contained;
      EXPECT_LE(worst, 1e-12);
    } else {
      EXPECT_GT(worst, -1e-3);
    }
  }
  EXPECT_GT(contained, 10);
}

TEST(Perimeter, Examples) {
  const ConvexPolygon sq = unit_square();
  EXPECT_DOUBLE_EQ(perimeter(sq, Seminorm::euclidean()), 4.0);
  EXPECT_DOUBLE_EQ(perimeter(sq, Seminorm::lp(1.0)), 4.0);
  EXPECT_DOUBLE_EQ(perimeter(diagonal(), Seminorm::euclidean()), 2.0 * std::sqrt(2.0));
  EXPECT_EQ(perimeter(ConvexPolygon::hull(std::vector<Vec>{{1.0, 1.0}}), Seminorm::euclidean()), 0.0);
  EXPECT_THROW(perimeter(Zonotope(3, {Vec{1.0, 0.0, 0.0}}), Seminorm::euclidean()), Error);
}

TEST(Perimeter, TwiceGeneratorSumMatchesGiftWrapHull) {
  Rng r(15);
  const std::vector<Seminorm> norms{Seminorm::euclidean(), Seminorm::lp(1.0), Seminorm::lp(4.0),
                                    Seminorm::polygonal({DualVec{1.0, 0.5}, DualVec{-0.3, 1.0}})};
  for (const Seminorm& n : norms) {
    for (int trial = 0; trial < 40; ++trial) {
      const auto gens = random_gens(r, 1 + trial % 9);
      std::vector<oracle::P2> g;
      double generator_sum = 0.0;
      for (const Vec& v : gens) {
        g.push_back({v[0], v[1]});
        generator_sum += 2.0 * n(v);
      }
      const auto hull = oracle::gift_wrap(oracle::subset_sums(g));
      const double ref = oracle::polygon_perimeter(hull, [&](double x, double y) { return n(Vec{x, y}); });
      EXPECT_NEAR(ref, generator_sum, 1e-9 * generator_sum);
      EXPECT_NEAR(perimeter(Zonotope(2, gens), n), generator_sum, 1e-9 * generator_sum);
    }
  }
}

TEST(MassPerimeter, Examples) {
  const VectorMeasure squares(1, 2, {{{0.0}, Vec{1.0, 0.0}}, {{1.0}, Vec{0.0, 1.0}}});
  const PerimeterIdentityReport l1 = mass_perimeter_identity_check(squares, Seminorm::lp(1.0));
  EXPECT_DOUBLE_EQ(l1.mass, 2.0);
  EXPECT_DOUBLE_EQ(l1.half_perimeter, 2.0);
  const VectorMeasure single(1, 2, {{{0.0}, Vec{3.0, 4.0}}});
  const PerimeterIdentityReport s = mass_perimeter_identity_check(single, Seminorm::euclidean());
  EXPECT_DOUBLE_EQ(s.mass, 5.0);
  EXPECT_DOUBLE_EQ(s.half_perimeter, 5.0);
  EXPECT_THROW(mass_perimeter_identity_check(VectorMeasure(1, 3), Seminorm::euclidean()), Error);

  Rng r(16);
  std::vector<Atom> atoms;
  for (int i = 0; i < 50; ++i) atoms.push_back({{static_cast<double>(i)}, Vec{r.uniform(-1.0, 1.0), r.uniform(-1.0, 1.0)}});
  EXPECT_LE(mass_perimeter_identity_check(VectorMeasure(1, 2, atoms), Seminorm::euclidean()).rel_gap, 1e-9);
}

TEST(Crofton, Examples) {
  const ZonalMeasure l1(2, {{DualVec{1.0, 0.0}, 1.0}, {DualVec{0.0, 1.0}, 1.0}});
  EXPECT_DOUBLE_EQ(crofton_perimeter(unit_square(), l1), 4.0);
  EXPECT_EQ(crofton_perimeter(ConvexPolygon::hull(std::vector<Vec>{{2.0, 2.0}}), l1), 0.0);
  const ConvexPolygon tri = ConvexPolygon::hull(std::vector<Vec>{{0.0, 0.0}, {2.0, 0.3}, {0.4, 1.5}});
  const ZonalMeasure sigma(2, {{DualVec{1.0, 0.5}, 1.0}, {DualVec{-0.3, 1.0}, 2.0}});
  EXPECT_NEAR(crofton_perimeter(tri, sigma), perimeter(tri, sigma.as_seminorm()), 1e-12);
}

TEST(PerimeterMonotonicity, StrictForEuclideanOnlyWeakForL1) {
  const PerimeterMonotonicityReport e = perimeter_monotonicity_check(diagonal(), unit_square(), Seminorm::euclidean());
  EXPECT_NEAR(e.inner_perimeter, 2.0 * std::sqrt(2.0), 1e-15);
  EXPECT_TRUE(e.strict_required);
  EXPECT_TRUE(e.passed());

  const PerimeterMonotonicityReport l1 = perimeter_monotonicity_check(diagonal(), unit_square(), Seminorm::lp(1.0));
  EXPECT_DOUBLE_EQ(l1.inner_perimeter, 4.0);
  EXPECT_DOUBLE_EQ(l1.outer_perimeter, 4.0);
  EXPECT_FALSE(l1.strict_required);
  EXPECT_TRUE(l1.passed());

  const PerimeterMonotonicityReport same = perimeter_monotonicity_check(unit_square(), unit_square(), Seminorm::euclidean());
  EXPECT_EQ(same.inner_perimeter, same.outer_perimeter);
  EXPECT_TRUE(same.passed());

  try {
    perimeter_monotonicity_check(unit_square(), diagonal(), Seminorm::euclidean());
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), ErrorCode::NotContained);
  }
}

TEST(Hausdorff, ZonotopeRangesAndContinuityBound) {
  const Zonotope sq(2, {Vec{1.0, 0.0}, Vec{0.0, 1.0}});
  EXPECT_NEAR(hausdorff_distance(sq, Zonotope(2, {Vec{1.0, 1.0}})), std::sqrt(0.5), 1e-15);
  EXPECT_EQ(directed_hausdorff(Zonotope(2, {Vec{1.0, 1.0}}), sq), 0.0);

  Rng r(17);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<Atom> a, b;
    double diff = 0.0;
    for (int i = 0; i < 1 + trial % 7; ++i) {
      const Vec v{r.uniform(-1.0, 1.0), r.uniform(-1.0, 1.0)};
      const Vec dv{r.uniform(-0.1, 0.1), r.uniform(-0.1, 0.1)};
      a.push_back({{static_cast<double>(i)}, v});
      b.push_back({{static_cast<double>(i)}, v + dv});
      diff += euclidean_norm(dv);
    }
    EXPECT_LE(hausdorff_distance(range(VectorMeasure(1, 2, a)), range(VectorMeasure(1, 2, b))), diff + 1e-12);
  }
}
