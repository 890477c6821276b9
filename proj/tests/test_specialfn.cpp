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

#include "gup/quadrature.hpp"
#include "gup/specialfn.hpp"

namespace {

using namespace gup;

constexpr double kPi = std::numbers::pi;

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

// Reference values from mpmath at 40 digits.
TEST(SpecialFn, ReferenceValues) {
  EXPECT_LT(rel(legendreP(7, 0.37), -0.087036466699964375), 1e-13);
  EXPECT_LT(rel(besselJ(2.5, 7.3), -0.30084943158749981156), 1e-12);
  EXPECT_LT(rel(besselJ(1.3, 4.1), 0.050671468909502906544), 1e-11);
  EXPECT_LT(rel(besselJ(0.0, 20.0), 0.16702466434058315473), 1e-11);
  EXPECT_LT(rel(sphericalBessel(20, 3.0), 2.3942249272752632036e-16), 1e-12);
  EXPECT_LT(rel(sphericalBessel(3, 50.0), 0.019812594595663751546), 1e-12);
  EXPECT_LT(rel(sphericalBessel(0, 0.5), 0.95885107720840600055), 1e-14);
  EXPECT_LT(rel(fourierLegendreKernel(3, 12.5), -0.17522700808205163915), 1e-12);
  EXPECT_LT(rel(fourierLegendreKernel(3, -12.5), -0.17522700808205163915), 1e-12);
  EXPECT_LT(rel(hermiteFunction(10, 0.7), -0.0053145499654412283626), 1e-12);
  EXPECT_LT(rel(radialKernelL(3, 0.8), -2.3776412907378839303), 1e-12);
  EXPECT_LT(rel(radialKernelL(2, 0.3), 1.8256688007569689651), 1e-12);
}

TEST(SpecialFn, LimitsAtZero) {
  EXPECT_NEAR(fourierLegendreKernel(0, 0.0), 1.0 / std::sqrt(kPi), 1e-15);
  EXPECT_EQ(fourierLegendreKernel(4, 0.0), 0.0);
  EXPECT_NEAR(radialKernelL(3, 0.0), unitSphereArea(3), 1e-12);
  EXPECT_NEAR(radialKernelL(1, 0.2), 2.0 * std::cos(2.0 * kPi * 0.2), 1e-14);
  EXPECT_NEAR(unitSphereArea(2), 2.0 * kPi, 1e-14);
}

TEST(SpecialFn, NormalizedLegendreIsOrthonormal) {
  const double h = 1.0 / (2.0 * kPi);
  const auto rule = gaussLegendre(40, -h, h);
  for (int j = 0; j <= 12; ++j)
    for (int k = 0; k <= j; ++k) {
      const double s = rule.apply([&](double x) { return normalizedLegendre(j, x) * normalizedLegendre(k, x); });
      EXPECT_NEAR(s, j == k ? 1.0 : 0.0, 1e-13);
    }
}

TEST(SpecialFn, HermiteFunctionsAreOrthonormal) {
  const auto rule = compositeGaussLegendre(-6.0, 6.0, 24, 20);
  for (int j = 0; j <= 20; j += 3)
    for (int k = 0; k <= j; k += 1) {
      const double s = rule.apply([&](double x) { return hermiteFunction(j, x) * hermiteFunction(k, x); });
      EXPECT_NEAR(s, j == k ? 1.0 : 0.0, 1e-12);
    }
}

TEST(SpecialFn, BoostedHermiteMatchesProduct) {
  for (double x : {0.0, 0.4, 2.5, -3.0}) {
    const auto v = hermiteFunctions(30, x, 0.8);
    for (int n = 0; n <= 30; n += 5)
      EXPECT_NEAR(v[n], hermiteFunction(n, x) * std::exp(0.8 * kPi * x * x), 1e-12 * std::max(1.0, std::abs(v[n])));
  }
}

TEST(SpecialFn, SphericalBesselRecurrenceAgreesWithSingle) {
  for (double x : {0.01, 1.0, 7.5, 40.0, 200.0}) {
    const auto all = sphericalBesselAll(60, x);
    for (int n = 0; n <= 60; n += 7) EXPECT_NEAR(all[n], sphericalBessel(n, x), 1e-14 + 1e-12 * std::abs(all[n]));
  }
}

}  // namespace
