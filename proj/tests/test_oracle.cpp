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

#include "gup/error.hpp"
#include "gup/oracle.hpp"
#include "gup/specialfn.hpp"

namespace {

using namespace gup;

// mpmath at 40 digits: G from quadrature of Hermite products, value sqrt(v^T G^{-1} v).
TEST(Oracle, ReferenceValuesAtDegreeEight) {
  const GramOracle g = buildGram(0.5, 8);
  EXPECT_NEAR(g.sharpConstant(0.5), 0.59929139560498615447, 1e-13);
  EXPECT_NEAR(g.sharpConstant(1.5), 0.034535410136550220034, 1e-14);
  EXPECT_NEAR(g.hermiteWitness(0, 0.0), 0.7071067811865475244, 1e-14);
}

TEST(Oracle, GramStructure) {
  const GramOracle g = buildGram(0.4, 24);
  const auto A = g.A();
  const auto G = g.G();
  for (int j = 0; j <= 24; ++j)
    for (int k = 0; k <= 24; ++k) {
      EXPECT_NEAR(G(j, k), G(k, j), 1e-12 * std::abs(G(j, j)));
      if ((j - k) % 4 == 0) {
        EXPECT_NEAR(G(j, k), 2.0 * A(j, k), 1e-12 * std::abs(G(j, k)) + 1e-300);
      } else {
        EXPECT_EQ(G(j, k), 0.0);
      }
    }
  EXPECT_TRUE(g.withinPrecision());
}

TEST(Oracle, MonotoneInDegreeAndAboveEachWitness) {
  for (double y : {0.0, 1.0, 3.0}) {
    double last = 0.0;
    for (int n : {8, 16, 32, 64}) {
      const GramOracle g = buildGram(0.5, n);
      const double v = g.sharpConstant(y);
      EXPECT_GE(v, last * (1.0 - 1e-13)) << "y=" << y << " n=" << n;
      for (int k = 0; k <= n; k += 5) EXPECT_LE(g.hermiteWitness(k, y), v * (1.0 + 1e-12));
      last = v;
    }
  }
}

TEST(Oracle, SolverConvergesAtOriginAndReportsOtherwise) {
  OracleSolver solver(0.5, 16, 1e-3);
  const auto r0 = solver.evaluate(0.0);
  EXPECT_TRUE(r0.converged);
  EXPECT_LT(std::abs(r0.value - r0.previous), 1e-3 * r0.value);
  EXPECT_EQ(r0.nHistory.size(), r0.valueHistory.size());
  OracleSolver strict(0.5, 16, 1e-12);
  EXPECT_THROW(strict(6.0), AccuracyFailure);
}

TEST(Oracle, SweepBracketsWithoutFailures) {
  SweepOptions opt;
  opt.tol = 1e-3;
  const auto rows = asymptoticSweep(0.5, {3.0, 3.5}, 2.0, 2.0, 1, opt);
  ASSERT_EQ(rows.size(), 2u);
  for (const auto& r : rows) {
    EXPECT_TRUE(r.ok) << r.error;
    EXPECT_TRUE(bracketingHolds(r));
    EXPECT_NEAR(r.asymptote, std::sqrt(1.0 + r.y) * std::exp(-std::numbers::pi * 0.5 * r.y * r.y), 1e-15);
  }
  const auto noOracle = asymptoticSweep(0.5, {3.0}, 2.0, 3.0, 1, opt);
  EXPECT_TRUE(std::isnan(noOracle[0].oracle));
  EXPECT_TRUE(bracketingHolds(noOracle[0]));
}

}  // namespace
