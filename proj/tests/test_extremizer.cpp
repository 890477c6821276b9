// Copyright 2026 The gupcert Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "gup/dualbound.hpp"
#include "gup/error.hpp"
#include "gup/extremizer.hpp"
#include "gup/quadrature.hpp"
#include "gup/specialfn.hpp"

namespace {

using namespace gup;

constexpr double kPi = std::numbers::pi;
constexpr double kHalfWidth = 1.0 / (2.0 * kPi);

TEST(Cosine, ReferenceValues) {
  // Least-squares projection in mpmath onto all polynomials of degree <= 6.
  EXPECT_NEAR(bestApproxErrorCos(12.0, 6), 0.34616435524949753558, 1e-13);
  EXPECT_NEAR(cosNormSquared(12.0), 0.1531496400639613353, 1e-15);
}

TEST(Cosine, CoefficientsReconstructTheNorm) {
  for (double D : {3.0, 20.0, 75.0}) {
    const auto d = cosLegendreCoefficients(D, static_cast<int>(D) + 60);
    double s = 0.0;
    for (double v : d) s += v * v;
    EXPECT_NEAR(s, cosNormSquared(D), 1e-13);
    EXPECT_NEAR(bestApproxErrorCos(D, 0) * bestApproxErrorCos(D, 0), cosNormSquared(D) - d[0] * d[0], 1e-13);
  }
}

TEST(Cosine, TransformMatchesQuadrature) {
  const auto rule = compositeGaussLegendre(-kHalfWidth, kHalfWidth, 16, 32);
  for (double D : {5.0, 30.0})
    for (double x : {0.0, 2.0, 29.5, 44.0}) {
      const double q = rule.apply([&](double t) { return std::cos(2.0 * kPi * D * t) * std::cos(2.0 * kPi * x * t); });
      EXPECT_NEAR(cosTransform(D, x), q, 1e-13);
    }
}

TEST(ValleePoussin, MultipliersAndLambda) {
  for (int n : {1, 4, 9}) EXPECT_EQ(vallePoussinLambdaSum(n), 2.0 * n * n + 5.0 * n + 3.0);
  const int n = 6;
  for (int k = 0; k <= n + 1; ++k) EXPECT_EQ(vallePoussinMultiplier(k, n), 1.0);
  for (int k = 2 * n + 1; k <= 3 * n; ++k) EXPECT_EQ(vallePoussinMultiplier(k, n), 0.0);
  for (int k = n + 2; k <= 2 * n; ++k) {
    EXPECT_LT(vallePoussinMultiplier(k, n), vallePoussinMultiplier(k - 1, n));
    EXPECT_GE(vallePoussinMultiplier(k, n), 0.0);
  }
  EXPECT_THROW(vallePoussinMean(std::vector<double>(5, 1.0), 3), InvalidArgument);
}

TEST(LegendreSeries, TransformPair) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  std::vector<double> c(9);
  for (double& v : c) v = coef(rng);
  const auto rule = compositeGaussLegendre(-kHalfWidth, kHalfWidth, 8, 32);
  for (double x : {0.0, 1.7, 12.0, 40.0}) {
    const double q = rule.apply([&](double t) { return legendreSeries(c, t) * std::cos(2.0 * kPi * x * t); });
    EXPECT_NEAR(fourierLegendreSeries(c, x), q, 1e-12);
  }
}

TEST(LegendreSeries, CommutationProperty) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  for (int n : {2, 5, 8}) {
    std::vector<double> c(2 * n + 4);
    for (double& v : c) v = coef(rng);
    const std::vector<double> pts{-25.0, -3.3, 0.0, 0.7, 9.0, 31.0};
    EXPECT_LT(commutationError(c, n, pts), 1e-10);
  }
}

TEST(Window, BoundsAndFeasibility) {
  const double lambda = 0.5;
  const double c = 1.0;
  const double y0 = minimalFeasibleY(lambda, c);
  EXPECT_NEAR(c * lambda * y0 * y0, 5.0, 1e-12);
  for (double y : {y0 + 0.1, 8.0, 15.0}) {
    const auto w = degreeWindow(y, lambda, c);
    ASSERT_TRUE(w.feasible) << y;
    EXPECT_GE(w.N, w.lower);
    EXPECT_LE(w.N, w.upper);
  }
  EXPECT_FALSE(degreeWindow(0.5 * y0, lambda, c).feasible);
}

TEST(Extremizer, MomentsVanishAndNormsAgree) {
  const auto spec = buildExtremizer(6.0, 0.5, 1.0, 1.0);
  const double scale = spec.hNorm();
  for (int j = 0; j <= 2 * spec.N + 3; ++j) EXPECT_NEAR(spec.moment(j), 0.0, 1e-12 * scale) << j;
  const auto rule = compositeGaussLegendre(-kHalfWidth, kHalfWidth, 32, 32);
  const double l2 = std::sqrt(rule.apply([&](double t) { return spec.h(t) * spec.h(t); }));
  EXPECT_NEAR(l2, spec.hNorm(), 1e-10 * scale);
  EXPECT_NEAR(spec.hHatNorm(2.0), spec.hNorm(), 1e-8 * scale);
  EXPECT_EQ(spec.h(0.2), 0.0);
}

TEST(Extremizer, WitnessStaysBelowUpperBound) {
  const double lambda = calibrateLambda(0.5, 2.0, 2.0);
  ASSERT_GT(lambda, 0.0);
  for (double y : {4.0, 6.0}) {
    const auto spec = buildExtremizer(y, 0.5, lambda, kDefaultExtremizerC);
    const auto w = extremizerWitness(spec, 2.0, 2.0);
    EXPECT_GT(w.ratio, 0.0);
    EXPECT_NEAR(w.ratio, w.value / (w.primalNorm + w.dualNorm), 1e-12 * w.ratio);
    EXPECT_LE(w.ratio, optimizedUpperBoundGaussian(y, 0.5, 2.0, 2.0, 1).bound);
  }
}

TEST(Vemuri, IndicatorReference) {
  // mpmath: 2^{1/4} sum over even n of 2^{n/2} |g^{(n)}(0)|^2 / ((2 pi)^n n!), a = 1/2.
  const std::vector<double> one{1.0};
  const auto r = vemuriNormIdentity(one, 0.5, 1.0 / std::sqrt(2.0));
  EXPECT_NEAR(r.rhs, 1.5677763480769267, 1e-12);
  EXPECT_NEAR(r.lhs, 1.5677763480769267, 1e-10);
}

TEST(Radial, BestApproxDecaysLikeInverseY) {
  for (double y : {20.0, 40.0}) {
    const double e = radialBestApprox(RadialProblem{3, y, 1.0, 1});
    EXPECT_GT(e * y, 1.3);
    EXPECT_LT(e * y, 1.5);
  }
  EXPECT_LT(radialBestApprox(RadialProblem{3, 5.0, 1.0, 30}), 1e-6);
}

TEST(Radial, WitnessIsPositiveAndBelowOneDimensionalFallback) {
  const auto w = radialWitness(3, 6.0, 0.5, 1.0, 1.0);
  EXPECT_GT(w.ratio, 0.0);
  EXPECT_NEAR(w.M, 6.0 / (2.0 * kPi), 1e-14);
  EXPECT_LE(w.ratio, gaussianFallbackBound(0.5, 2.0, 3));
  EXPECT_THROW(radialWitness(5, 6.0, 0.5, 1.0, 1.0), InvalidArgument);
}

}  // namespace
