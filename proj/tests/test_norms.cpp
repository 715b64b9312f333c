#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "support/oracles.hpp"
#include "vecmeasure/norms.hpp"
#include "vecmeasure/rng.hpp"

using namespace vecmeasure;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Seminorm l1_polygonal() { return Seminorm::polygonal({DualVec{1.0, 0.0}, DualVec{0.0, 1.0}}); }

Vec random_vec(Rng& r, std::size_t d) {
  std::vector<double> c(d);
  for (double& x : c) x = r.uniform(-2.0, 2.0);
  return Vec(std::span<const double>(c));
}

std::vector<Seminorm> families(Rng& r, std::size_t d) {
  std::vector<Seminorm> out{Seminorm::euclidean(), Seminorm::lp(1.0), Seminorm::lp(3.0), Seminorm::lp(kInf),
                            Seminorm::weighted_lp(1.5, std::vector<double>(d, 0.7))};
  std::vector<DualVec> gens;
  for (std::size_t i = 0; i < d + 2; ++i) gens.push_back(as_dual(random_vec(r, d)));
  out.push_back(Seminorm::polygonal(d, gens));
  if (d == 3) out.push_back(Seminorm::sum_of_circles());
  return out;
}

}  // namespace

TEST(Eval, ClosedForms) {
  EXPECT_DOUBLE_EQ(Seminorm::euclidean()(Vec{3.0, 4.0}), 5.0);
  EXPECT_DOUBLE_EQ(Seminorm::lp(1.0)(Vec{1.0, -1.0}), 2.0);
  EXPECT_DOUBLE_EQ(Seminorm::sum_of_circles()(Vec{1.0, 0.0, 0.0}), 2.0);
  EXPECT_DOUBLE_EQ(Seminorm::lp(kInf)(Vec{1.0, -3.0, 2.0}), 3.0);
  EXPECT_DOUBLE_EQ(Seminorm::weighted_lp(2.0, {3.0, 0.0})(Vec{1.0, 5.0}), 3.0);
  const Seminorm three = Seminorm::polygonal({DualVec{1.0, 0.0}, DualVec{0.0, 1.0}, DualVec{1.0, 1.0}});
  EXPECT_DOUBLE_EQ(three(Vec{1.0, 0.0}), 2.0);
}

TEST(Eval, DimensionErrors) {
  try {
    Seminorm::sum_of_circles()(Vec{1.0, 0.0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DimError);
  }
  EXPECT_THROW(l1_polygonal()(Vec{1.0, 0.0, 0.0}), Error);
  EXPECT_THROW(Seminorm::weighted_lp(2.0, {1.0, 1.0})(Vec{1.0}), Error);
}

TEST(Eval, SeminormAxiomsOnRandomInputs) {
  Rng r(3);
  for (std::size_t d = 1; d <= 3; ++d) {
    for (const Seminorm& n : families(r, d)) {
      for (int trial = 0; trial < 200; ++trial) {
        const Vec v = random_vec(r, d), w = random_vec(r, d);
        const double lambda = r.uniform(-5.0, 5.0);
        EXPECT_GE(n(v), 0.0);
        EXPECT_LE(n(v + w), (n(v) + n(w)) * (1.0 + 1e-12));
        EXPECT_NEAR(n(lambda * v), std::abs(lambda) * n(v), 1e-12 * std::abs(lambda) * n(v) + 1e-300);
      }
    }
  }
}

TEST(DualEval, ClosedForms) {
  EXPECT_DOUBLE_EQ(dual_eval(Seminorm::euclidean(), DualVec{3.0, 4.0}), 5.0);
  EXPECT_DOUBLE_EQ(dual_eval(Seminorm::lp(1.0), DualVec{1.0, -2.0}), 2.0);
  EXPECT_NEAR(dual_eval(l1_polygonal(), DualVec{1.0, 1.0}), 1.0, 1e-15);
  EXPECT_NEAR(dual_eval(Seminorm::lp(kInf), DualVec{1.0, -2.0}), 3.0, 1e-15);
  EXPECT_NEAR(dual_eval(Seminorm::lp(2.0), DualVec{1.0, 1.0}), std::sqrt(2.0), 1e-15);
  // Not annihilating the kernel of a seminorm.
  EXPECT_EQ(dual_eval(Seminorm::polygonal({DualVec{1.0, 0.0}}), DualVec{0.0, 1.0}), kInf);
  EXPECT_NEAR(dual_eval(Seminorm::polygonal({DualVec{1.0, 0.0}}), DualVec{2.0, 0.0}), 2.0, 1e-15);
}

TEST(DualEval, MatchesUnitSphereScan) {
  Rng r(5);
  const std::vector<Seminorm> norms{Seminorm::lp(1.5), Seminorm::lp(4.0), Seminorm::weighted_lp(3.0, {1.0, 2.0}),
                                    Seminorm::polygonal({DualVec{1.0, 0.3}, DualVec{-0.2, 1.0}, DualVec{0.5, 0.5}})};
  for (const Seminorm& n : norms) {
    for (int trial = 0; trial < 5; ++trial) {
      const DualVec eta{r.uniform(-1.0, 1.0), r.uniform(-1.0, 1.0)};
      const double scan = oracle::dual_norm_scan([&](double x, double y) { return n(Vec{x, y}); }, eta[0], eta[1]);
      EXPECT_NEAR(dual_eval(n, eta), scan, 1e-8 * scan);
      EXPECT_GE(dual_eval(n, eta), scan * (1.0 - 1e-14));
    }
  }
}

TEST(DualEval, SumOfCirclesNumericBracketsByDuality) {
  const Seminorm n = Seminorm::sum_of_circles();
  Rng r(9);
  for (int trial = 0; trial < 10; ++trial) {
    const DualVec eta{r.uniform(-1.0, 1.0), r.uniform(-1.0, 1.0), r.uniform(-1.0, 1.0)};
    const double dual = dual_eval(n, eta);
    // <eta, v> <= |eta|' |v| for every v.
    for (int k = 0; k < 2000; ++k) {
      const Vec v{r.uniform(-1.0, 1.0), r.uniform(-1.0, 1.0), r.uniform(-1.0, 1.0)};
      EXPECT_LE(pairing(eta, v), dual * n(v) * (1.0 + 1e-9));
    }
  }
  // By symmetry the maximiser for e1 is v = e1, so |e1|' = 1/2.
  EXPECT_NEAR(dual_eval(n, DualVec{1.0, 0.0, 0.0}), 0.5, 1e-9);
}

TEST(StrictConvexity, ExactClassification) {
  EXPECT_TRUE(is_strictly_convex(Seminorm::euclidean(), 2));
  EXPECT_FALSE(is_strictly_convex(Seminorm::lp(1.0), 2));
  EXPECT_FALSE(is_strictly_convex(Seminorm::lp(kInf), 3));
  EXPECT_TRUE(is_strictly_convex(Seminorm::lp(3.0), 3));
  EXPECT_TRUE(is_strictly_convex(Seminorm::sum_of_circles()));
  EXPECT_FALSE(is_strictly_convex(l1_polygonal()));
  EXPECT_FALSE(is_strictly_convex(Seminorm::weighted_lp(2.0, {1.0, 0.0}), 2));
}

TEST(StrictConvexity, ProbeAgreesWithClassification) {
  EXPECT_TRUE(strict_convexity_probe(Seminorm::euclidean(), 2, 10000, 1e-9, 1));
  EXPECT_FALSE(strict_convexity_probe(Seminorm::lp(1.0), 2, 10, 1e-9, 1));
  EXPECT_FALSE(strict_convexity_probe(l1_polygonal(), 2, 10, 1e-9, 1));
  EXPECT_TRUE(strict_convexity_probe(Seminorm::sum_of_circles(), 3, 2000, 1e-9, 1));
  EXPECT_FALSE(strict_convexity_probe(Seminorm::lp(kInf), 3, 100, 1e-9, 1));
}

TEST(StrictConvexity, FiniteZonalNormsNeverStrict) {
  Rng r(21);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<ZonalAtom> atoms;
    for (int k = 0; k < 1 + trial % 6; ++k)
      atoms.push_back({DualVec{r.uniform(-1.0, 1.0), r.uniform(-1.0, 1.0)}, r.uniform(0.1, 1.0)});
    const Seminorm n = ZonalMeasure(2, atoms).as_seminorm();
    EXPECT_FALSE(is_strictly_convex(n, 2));
    EXPECT_FALSE(strict_convexity_probe(n, 2, 100, 1e-9, static_cast<std::uint64_t>(trial)));
  }
}

TEST(ZonalMeasure, CanonicalForm) {
  const ZonalMeasure sigma(2, {{DualVec{0.0, -1.0}, 1.0}, {DualVec{0.0, 1.0}, 2.0}, {DualVec{0.0, 0.0}, 5.0}});
  ASSERT_EQ(sigma.size(), 1U);
  EXPECT_EQ(sigma.atoms()[0].eta, (DualVec{0.0, 1.0}));
  EXPECT_DOUBLE_EQ(sigma.atoms()[0].weight, 3.0);
  EXPECT_THROW(ZonalMeasure(2, {{DualVec{1.0, 0.0}, 0.0}}), Error);
}

TEST(ZonalFromPolygonal, Examples) {
  const ZonalMeasure l1 = zonal_from_polygonal_2d(l1_polygonal());
  EXPECT_EQ(l1.size(), 2U);
  EXPECT_DOUBLE_EQ(l1.induced(Vec{1.0, 1.0}), 2.0);
  EXPECT_EQ(zonal_from_polygonal_2d(Seminorm::polygonal({DualVec{1.0, 0.0}})).size(), 1U);
  const Seminorm three = Seminorm::polygonal({DualVec{1.0, 0.0}, DualVec{0.0, 1.0}, DualVec{1.0, 1.0}});
  EXPECT_DOUBLE_EQ(zonal_from_polygonal_2d(three).induced(Vec{1.0, 0.0}), 2.0);
  try {
    zonal_from_polygonal_2d(Seminorm::euclidean());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::WrongKind);
  }
}

TEST(ZonalFromPolygonal, RoundTripOnRandomGenerators) {
  Rng r(31);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<DualVec> gens;
    for (int k = 0; k < 1 + trial % 7; ++k) gens.push_back(DualVec{r.uniform(-1.0, 1.0), r.uniform(-1.0, 1.0)});
    const Seminorm n = Seminorm::polygonal(gens);
    EXPECT_LE(validate_zonal(n, zonal_from_polygonal_2d(n), 720, 1e-12).max_rel_error, 1e-12);
  }
}

TEST(ZonalApprox, EuclideanAndLp) {
  const ZonalApproximation e = zonal_approx_2d(Seminorm::euclidean(), 1e-3);
  const double at_e1 = e.sigma.induced(Vec{1.0, 0.0});
  EXPECT_GE(at_e1, 0.999);
  EXPECT_LE(at_e1, 1.0 + 1e-15);
  EXPECT_LE(e.certified_eps, 1e-3);
  // An inscribed polygon with k vertices has error ~ (pi/k)^2 / 2.
  EXPECT_LE(e.sigma.size(), 200U);

  const Seminorm l4 = Seminorm::lp(4.0);
  const ZonalApproximation a = zonal_approx_2d(l4, 1e-2);
  const ZonalValidation v = validate_zonal(l4, a.sigma, 360, 1e-2);
  EXPECT_TRUE(v.pass);
  for (const DualVec& u : circle_directions(360)) {
    const Vec x = as_primal(u);
    EXPECT_LE(a.sigma.induced(x), l4(x) * (1.0 + 1e-12));
  }
}

TEST(ZonalApprox, PolygonalIsExactAndSeminormsRejected) {
  const ZonalApproximation p = zonal_approx_2d(l1_polygonal(), 0.5);
  EXPECT_EQ(p.certified_eps, 0.0);
  EXPECT_EQ(p.sigma.size(), 2U);
  EXPECT_THROW(zonal_approx_2d(Seminorm::weighted_lp(2.0, {1.0, 0.0}), 1e-2), Error);
}

TEST(ZonalEuclidean, TwoDimensionalQuadrature) {
  const EuclideanZonal z = zonal_euclidean(2, 10000);
  EXPECT_DOUBLE_EQ(z.kappa, 0.25);
  EXPECT_NEAR(z.sigma.induced(Vec{1.0, 0.0}), 1.0, 1e-6);
  EXPECT_TRUE(validate_zonal(Seminorm::euclidean(), z.sigma, 360, 1e-5).pass);
  EXPECT_FALSE(validate_zonal(Seminorm::euclidean(), zonal_euclidean(2, 4).sigma, 360, 1e-6).pass);
}

TEST(ZonalEuclidean, NormalisedConstantIsTwoOverPi) {
  // (1/2pi) int |cos| = 2/pi, from an independent Simpson rule.
  EXPECT_NEAR(oracle::mean_abs_cos(80000), 2.0 / std::numbers::pi, 1e-12);
  const EuclideanZonal z = zonal_euclidean(2, 400000);
  const double normalised = z.sigma.induced(Vec{1.0, 0.0}) / (2.0 * std::numbers::pi * z.kappa);
  EXPECT_NEAR(normalised, 2.0 / std::numbers::pi, 1e-9);
}

TEST(ZonalEuclidean, ThreeDimensionalQuadrature) {
  const EuclideanZonal z = zonal_euclidean(3, 20000);
  EXPECT_NEAR(z.kappa, 0.5 / std::numbers::pi, 1e-16);
  EXPECT_TRUE(validate_zonal(Seminorm::euclidean(), z.sigma, 200, 1e-3).pass);
  EXPECT_THROW(zonal_euclidean(1, 100), Error);
  EXPECT_THROW(zonal_euclidean(2, 3), Error);
}

TEST(ValidateZonal, L1ExactMeasure) {
  const ZonalMeasure sigma(2, {{DualVec{1.0, 0.0}, 1.0}, {DualVec{0.0, 1.0}, 1.0}});
  const ZonalValidation v = validate_zonal(Seminorm::lp(1.0), sigma, 360, 0.0);
  EXPECT_EQ(v.max_rel_error, 0.0);
  EXPECT_TRUE(v.pass);
}
