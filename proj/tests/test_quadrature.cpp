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

#include "gup/error.hpp"
#include "gup/orthopoly.hpp"
#include "gup/quadrature.hpp"

namespace {

using namespace gup;

constexpr double kPi = std::numbers::pi;

TEST(Quadrature, GaussLegendreIsExactToDegree2nMinus1) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  for (int n : {1, 2, 5, 12, 40}) {
    const auto rule = gaussLegendre(n, -0.5, 2.0);
    for (int deg = 0; deg <= 2 * n - 1; deg += std::max(1, n / 3)) {
      double exact = 0.0;
      double quad = 0.0;
      for (int j = 0; j <= deg; ++j) {
        const double c = coef(rng);
        exact += c * (std::pow(2.0, j + 1) - std::pow(-0.5, j + 1)) / (j + 1);
        quad += c * rule.apply([j](double x) { return std::pow(x, j); });
      }
      EXPECT_NEAR(quad, exact, 1e-12 * std::max(1.0, std::abs(exact))) << "n=" << n << " deg=" << deg;
    }
  }
}

TEST(Quadrature, WeightsArePositiveAndSumToLength) {
  const auto rule = compositeGaussLegendre(1.0, 4.0, 7, 9);
  ASSERT_EQ(rule.size(), 63u);
  double sum = 0.0;
  for (double w : rule.weights) {
    EXPECT_GT(w, 0.0);
    sum += w;
  }
  EXPECT_NEAR(sum, 3.0, 1e-14);
}

TEST(Quadrature, AdaptiveHandlesEndpointSingularity) {
  const auto r = integrateAdaptive([](double x) { return std::sqrt(x); }, 0.0, 1.0, 1e-12);
  EXPECT_NEAR(r.value, 2.0 / 3.0, 1e-11);
  EXPECT_GT(r.panels, 1);
}

TEST(Quadrature, GaussianLineMatchesClosedForm) {
  const double v = integrateGaussianLine([](double x) { return x * x * std::exp(-kPi * x * x); }, 1.0, 1e-13);
  EXPECT_NEAR(v, 1.0 / (2.0 * kPi), 1e-13);
}

TEST(Quadrature, PeakedFindsNarrowBump) {
  const double v = integratePeaked([](double x) { return std::exp(-1e4 * (x - 7.3) * (x - 7.3)); }, 0.0, 20.0);
  EXPECT_NEAR(v, std::sqrt(kPi / 1e4), 1e-12);
}

TEST(Quadrature, RejectsBadArguments) {
  EXPECT_THROW(gaussLegendre(0, 0.0, 1.0), InvalidArgument);
  EXPECT_THROW(integrate([](double x) { return x; }, 0.0, 1.0, -1.0), InvalidArgument);
}

TEST(Orthopoly, LanczosBasisIsOrthonormal) {
  const auto rule = gaussLegendre(60, -1.0, 1.0);
  DiscreteMeasure mu{rule.nodes, rule.weights};
  for (std::size_t i = 0; i < mu.size(); ++i) mu.weights[i] *= std::pow(std::abs(mu.nodes[i] - 0.3), 1.5) + 0.1;
  const auto basis = lanczosBasis(mu, 20);
  ASSERT_EQ(basis.degree(), 20);
  std::vector<std::vector<double>> values;
  for (double x : mu.nodes) values.push_back(basis.evaluateAll(x));
  for (int j = 0; j <= 20; ++j)
    for (int k = 0; k <= j; ++k) {
      double s = 0.0;
      for (std::size_t i = 0; i < mu.size(); ++i) s += mu.weights[i] * values[i][j] * values[i][k];
      EXPECT_NEAR(s, j == k ? 1.0 : 0.0, 1e-12);
    }
}

}  // namespace
