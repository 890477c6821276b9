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

#include <gtest/gtest.h>

#include "gup/dualbound.hpp"
#include "gup/error.hpp"

namespace {

using namespace gup;

constexpr double kPi = std::numbers::pi;

TEST(Phi, NormalizedWithVanishingMoments) {
  for (double m : {0.0, 1.0, 2.5}) {
    for (int m0 : {3, 6, 11}) {
      if (m0 < std::ceil(m)) continue;
      const PhiSpec phi = buildPhi(0.7, m, m0, 2.0, 1);
      const double zero = 0.0;
      EXPECT_NEAR(phiHat(phi, std::span<const double>(&zero, 1)).real(), 1.0, 1e-12);
      EXPECT_NEAR(phiIntegral(phi), 1.0, 1e-12);
      const auto mom = phiMoments(phi, m0);
      for (int k = 1; k <= m0; ++k) EXPECT_NEAR(mom[k], 0.0, 1e-12) << "m=" << m << " m0=" << m0 << " k=" << k;
    }
  }
}

TEST(Phi, OneMinusAgreesWithDirectWhereNoCancellation) {
  const PhiSpec phi = buildPhi(1.0, 1.0, 6, 2.0, 1);
  for (double xi : {0.3, 1.0, 2.5, 10.0, 60.0}) {
    const auto direct = 1.0 - phiHat(phi, std::span<const double>(&xi, 1));
    const auto scaled = oneMinusPhiHat(phi, std::span<const double>(&xi, 1));
    EXPECT_NEAR(scaled.logAbs(), std::log(std::abs(direct)), 1e-8) << "xi=" << xi;
  }
}

TEST(Phi, SmallArgumentIsPowerLaw) {
  // Unweighted, even m0: 1 - phi-hat ~ c xi^{m0 + 2}.
  const PhiSpec phi = buildPhi(1.0, 0.0, 4, 2.0, 1);
  const double a = 1e-3;
  const double b = 2e-3;
  const double slope = (oneMinusPhiHat(phi, std::span<const double>(&b, 1)).logAbs() -
                        oneMinusPhiHat(phi, std::span<const double>(&a, 1)).logAbs()) /
                       std::log(2.0);
  EXPECT_NEAR(slope, 6.0, 1e-3);
}

TEST(Phi, TensorProductFactorizes) {
  const PhiSpec phi2 = buildPhi(0.8, 1.0, 5, 2.0, 2);
  const PhiSpec phi1 = buildPhi(0.8, 1.0, 5, 2.0, 1);
  const PhiSpec flat = buildPhi(0.8, 0.0, 5, 2.0, 1);
  const std::vector<double> x{0.31, -0.2};
  const double x0 = x[0];
  const double x1 = x[1];
  EXPECT_NEAR(phiValue(phi2, x),
              phiValue(phi1, std::span<const double>(&x0, 1)) * phiValue(flat, std::span<const double>(&x1, 1)),
              1e-12);
}

TEST(GaussianBound, FallbackClosedForm) {
  EXPECT_NEAR(gaussianFallbackBound(0.5, 2.0, 1), 1.0, 1e-15);
  EXPECT_NEAR(gaussianFallbackBound(0.3, 3.0, 2), std::pow(1.5 * 0.3, -2.0 / 3.0), 1e-14);
}

TEST(GaussianBound, ParamsValidate) {
  const auto p = makeGaussianParams(0.5, 0.9);
  EXPECT_NEAR(p.A * p.B, 0.25, 1e-15);
  EXPECT_THROW(makeGaussianParams(0.5, 1.2), InvalidArgument);
  EXPECT_THROW(makeGaussianParams(1.5, 0.9), InvalidArgument);
}

// Gaussians exp(-pi a x^2), alpha < a < 1/alpha, are admissible test functions.
TEST(GaussianBound, DominatesGaussianTestFunctions) {
  const double alpha = 0.5;
  for (double y : {1.0, 3.0, 5.0}) {
    const auto r = optimizedUpperBoundGaussian(y, alpha, 2.0, 2.0, 1);
    EXPECT_LE(r.bound, r.fallbackBound * (1.0 + 1e-12));
    for (double a : {0.6, 1.0, 1.5, 1.9}) {
      const double primal = std::pow(2.0 * (a - alpha), -0.25);
      const double dual = std::pow(a, -0.5) * std::pow(2.0 * (1.0 / a - alpha), -0.25);
      EXPECT_LE(std::exp(-kPi * a * y * y), r.bound * (primal + dual)) << "y=" << y << " a=" << a;
    }
  }
}

TEST(GaussianBound, DecaysLikeTheWeight) {
  const auto a = optimizedUpperBoundGaussian(4.0, 0.5, 2.0, 2.0, 1);
  const auto b = optimizedUpperBoundGaussian(6.0, 0.5, 2.0, 2.0, 1);
  const double sa = a.bound * std::exp(kPi * 0.5 * 16.0);
  const double sb = b.bound * std::exp(kPi * 0.5 * 36.0);
  EXPECT_GT(sa / sb, 0.2);
  EXPECT_LT(sa / sb, 5.0);
}

TEST(MomentBound, ParamsBalanceExponents) {
  const auto p = makeMomentParams(3.0, 2.0, 4.0, 1);
  EXPECT_NEAR(p.n - 1.0 / (4.0 / 3.0), 3.0 - 0.5, 1e-14);
}

TEST(MomentBound, DominatesGaussianTestFunctions) {
  const auto params = makeMomentParams(2.0, 2.0, 2.0, 1);
  const double y = 2.0;
  const auto r = momentUpperBound(y, params, MomentRegime::Pointwise);
  EXPECT_GT(r.bound, 0.0);
  EXPECT_LE(r.bound, momentTerms(y, params, 2.0 * params.m / y).bound * (1.0 + 1e-12));
  for (double a : {0.2, 0.5, 1.0, 3.0}) {
    const double m = params.m;
    const double n = params.n;
    const double primal = std::sqrt(std::tgamma(m + 0.5) / std::pow(2.0 * kPi * a, m + 0.5));
    const double dual = std::sqrt(std::tgamma(n + 0.5) / std::pow(2.0 * kPi / a, n + 0.5) / a);
    EXPECT_LE(std::exp(-kPi * a * y * y), r.bound * (primal + dual)) << "a=" << a;
  }
}

}  // namespace
