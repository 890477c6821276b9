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
#include <random>

#include <gtest/gtest.h>

#include "gup/error.hpp"
#include "gup/kernel.hpp"
#include "gup/specialfn.hpp"

namespace {

using namespace gup;

double reproducingDefect(const KernelSpec& k, const std::vector<double>& legendreCoeffs) {
  const DiscreteMeasure mu = weightMeasure(k.weight, 48);
  auto q = [&](double x) {
    const auto p = legendrePAll(static_cast<int>(legendreCoeffs.size()) - 1, x);
    double s = 0.0;
    for (std::size_t j = 0; j < p.size(); ++j) s += legendreCoeffs[j] * p[j];
    return s;
  };
  double integral = 0.0;
  for (std::size_t i = 0; i < mu.size(); ++i) integral += mu.weights[i] * k.kernel(mu.nodes[i]) * q(mu.nodes[i]);
  return std::abs(integral - q(0.0));
}

// ||P*||^{-2} = e_0^T M^{-1} e_0 for the monomial Gram matrix M, from mpmath.
TEST(Kernel, MinimalNormMatchesReference) {
  const auto a = minNormPolynomial(WeightSpec{1.0, 0.0, 2.0, 1}, 4, 2.0);
  EXPECT_NEAR(a.pstarNorm, 1.0 / std::sqrt(28.7109375), 1e-13);
  const auto b = minNormPolynomial(WeightSpec{0.75, 0.5, 2.0, 1}, 6, 2.0);
  EXPECT_NEAR(b.pstarNorm, 1.0 / std::sqrt(6.5373035559034634057), 1e-12);
  EXPECT_NEAR(a.pstar(0.0), 1.0, 1e-14);
}

TEST(Kernel, UnweightedKernelIsLegendreSum) {
  const auto k = minNormPolynomial(WeightSpec{0.0, 0.0, 2.0, 1}, 8, 2.0);
  for (double x : {-0.9, -0.2, 0.0, 0.55, 1.0}) {
    double s = 0.0;
    for (int j = 0; j <= 8; ++j) s += (2 * j + 1) / 2.0 * legendreP(j, 0.0) * legendreP(j, x);
    EXPECT_NEAR(k.kernel(x), s, 1e-12);
  }
}

class KernelProperty : public ::testing::TestWithParam<double> {};

// The duality identity holds for every exponent; IRLS leaves a small discrete gap when p != 2.
TEST_P(KernelProperty, DualNormIdentity) {
  const double p = GetParam();
  for (double m : {0.0, 0.5, 2.0}) {
    for (double shift : {0.0, 0.4}) {
      const auto k = minNormPolynomial(WeightSpec{m, shift, p, 1}, 10, p);
      EXPECT_NEAR(k.kernelNorm * k.pstarNorm, 1.0, 1e-8) << "m=" << m << " shift=" << shift;
      EXPECT_NEAR(k.pstar(0.0), 1.0, 1e-10);
      EXPECT_LT(k.dualityGap, p == 2.0 ? 1e-12 : 1e-4);
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Exponents, KernelProperty, ::testing::Values(2.0, 1.5, 3.0, 4.0));

TEST(Kernel, ReproducesPolynomialsForPEqualsTwo) {
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  for (double m : {0.0, 1.0, 2.5}) {
    for (double shift : {0.0, 0.4, 3.0}) {
      const auto k = minNormPolynomial(WeightSpec{m, shift, 2.0, 1}, 12, 2.0);
      EXPECT_LT(k.normalResidual, 1e-10);
      for (int t = 0; t < 5; ++t) {
        std::vector<double> c(13);
        for (double& v : c) v = coef(rng);
        EXPECT_LT(reproducingDefect(k, c), 1e-10) << "m=" << m << " shift=" << shift;
      }
    }
  }
}

// For p != 2 the fixed rule integrates |P|^p across its sign changes only to about 1e-5.
TEST(Kernel, NormNonIncreasingInDegree) {
  for (double p : {2.0, 3.0}) {
    const double slack = p == 2.0 ? 1e-12 : 1e-4;
    double last = INFINITY;
    for (int m0 = 2; m0 <= 12; ++m0) {
      const double norm = minNormPolynomial(WeightSpec{1.0, 0.2, p, 1}, m0, p).pstarNorm;
      EXPECT_LE(norm, last * (1.0 + slack)) << "p=" << p << " m0=" << m0;
      last = norm;
    }
  }
}

TEST(Kernel, PerturbationDoesNotDecreaseNorm) {
  const WeightSpec w{1.0, 0.0, 2.0, 1};
  const auto k = minNormPolynomial(w, 6, 2.0);
  const DiscreteMeasure mu = weightMeasure(w, 48);
  auto norm = [&](double eps, int j) {
    double s = 0.0;
    for (std::size_t i = 0; i < mu.size(); ++i) {
      const double x = mu.nodes[i];
      const double v = k.pstar(x) + eps * std::pow(x, j);
      s += mu.weights[i] * v * v;
    }
    return std::sqrt(s);
  };
  const double base = norm(0.0, 1);
  for (int j = 1; j <= 6; ++j)
    for (double eps : {1e-3, -1e-3}) EXPECT_GE(norm(eps, j), base * (1.0 - 1e-14)) << j;
}

TEST(Kernel, DocumentedSmallCases) {
  const auto one = minNormPolynomial(WeightSpec{0.0, 0.0, 2.0, 1}, 1, 2.0);
  EXPECT_NEAR(one.pstarNorm, std::sqrt(2.0), 1e-14);
  EXPECT_NEAR(one.kernel(0.37), 0.5, 1e-14);
  const auto two = minNormPolynomial(WeightSpec{0.0, 0.0, 2.0, 1}, 2, 2.0);
  EXPECT_NEAR(two.kernel(0.0), 9.0 / 8.0, 1e-14);
  EXPECT_NEAR(two.kernel(0.6), 9.0 / 8.0 - 15.0 / 8.0 * 0.36, 1e-14);
  EXPECT_NEAR(two.pstarNorm, std::sqrt(8.0 / 9.0), 1e-14);
}

TEST(Kernel, NormGrowsWithDegree) {
  const std::vector<int> degrees{2, 4, 8, 16};
  const auto report = nikolskiiReport(WeightSpec{1.0, 0.0, 2.0, 1}, degrees, 2.0);
  ASSERT_EQ(report.rows.size(), degrees.size());
  for (std::size_t i = 1; i < report.rows.size(); ++i)
    EXPECT_GT(report.rows[i].kernelNorm, report.rows[i - 1].kernelNorm);
}

TEST(Kernel, RejectsBadWeights) {
  EXPECT_THROW(minNormPolynomial(WeightSpec{-1.0, 0.0, 2.0, 1}, 4, 2.0), InvalidArgument);
  EXPECT_THROW(minNormPolynomial(WeightSpec{0.0, 0.0, 2.0, 1}, 4, 0.5), InvalidArgument);
}

}  // namespace
