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


#pragma once

#include <memory>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace gup {

/// Gram data, in quadruple precision, of the Hermite functions h_0..h_nMax under the weight
/// exp(2 pi alpha x^2).
/// f = sum c_n h_n has ||f e^{pi alpha x^2}||_2^2 + ||f-hat e^{pi alpha xi^2}||_2^2 = c* G c.
/// G couples only indices congruent mod 4; each block is 2 U^T U for the weighted node values U,
/// so it is handled through a QR factorization of U rather than by forming G.
class GramOracle {
 public:
  GramOracle(double alpha, int nMax);
  ~GramOracle();
  GramOracle(GramOracle&&) noexcept;
  GramOracle& operator=(GramOracle&&) noexcept;

  double alpha() const { return alpha_; }
  int nMax() const { return nMax_; }
  /// A_jk = int h_j h_k exp(2 pi alpha x^2) dx; entries overflow double for nMax near 1024.
  Eigen::MatrixXd A() const;
  Eigen::MatrixXd G() const;
  /// Squared ratio of extreme diagonal entries of the block R factors, a condition proxy for G.
  double conditionEstimate() const { return condition_; }
  /// Diagonal jitter added to G when a block is numerically singular (0 when none was needed).
  double jitter() const { return jitter_; }
  /// True when conditionEstimate() times the working epsilon stays below 1e-2.
  bool withinPrecision() const;

  /// sqrt(v^T G^{-1} v) with v_n = h_n(y).
  double sharpConstant(double y) const;
  /// |h_n(y)| / sqrt(G_nn): the ratio attained by the single witness h_n.
  double hermiteWitness(int n, double y) const;

 private:
  struct Impl;
  double alpha_;
  int nMax_;
  std::unique_ptr<Impl> impl_;
  double condition_ = 1.0;
  double jitter_ = 0.0;
};

GramOracle buildGram(double alpha, int nMax);

struct OracleResult {
  double value = 0.0;
  double previous = 0.0;  // value at nMax / 2
  int nMax = 0;
  bool converged = false;
  std::vector<int> nHistory;
  std::vector<double> valueHistory;
};

inline constexpr int kOracleMaxDegree = 1024;

/// Doubles nMax from nStart until the relative change is below tol; throws AccuracyFailure
/// at the cap or once the Gram conditioning exceeds the working precision.
OracleResult oracleSharpConstant(double y, double alpha, int nStart = 16, double tol = 1e-6);

/// Same, sharing the Gram factorizations across calls.
class OracleSolver {
 public:
  explicit OracleSolver(double alpha, int nStart = 16, double tol = 1e-6);
  /// Throws AccuracyFailure, carrying the last two values, when not converged.
  OracleResult operator()(double y);
  /// Same iteration, reporting non-convergence through the converged flag.
  OracleResult evaluate(double y);

 private:
  const GramOracle& gram(int nMax);

  double alpha_;
  int nStart_;
  double tol_;
  std::vector<std::unique_ptr<GramOracle>> cache_;
};

struct SweepRow {
  double y = 0.0;
  double lower = 0.0;
  double oracle = 0.0;  // NaN outside p = q = 2, d = 1
  double upper = 0.0;
  double asymptote = 0.0;  // (1 + y)^{d/p} exp(-pi alpha y^2)
  double ratioLower = 0.0;
  double ratioOracle = 0.0;
  double ratioUpper = 0.0;
  int oracleNMax = 0;
  bool oracleConverged = false;  // an unconverged oracle still reports its last truncation value
  bool ok = true;
  std::string error;
};

struct SweepOptions {
  double lambda = 0.0;  // 0 selects calibrateLambda
  double c = 0.0;       // 0 selects kDefaultExtremizerC
  int nStart = 16;
  double tol = 1e-6;
  double ratio = 0.9;   // A / alpha for the upper bound
};

/// Rows of lower bound, oracle and upper bound against the asymptote; failed rows are flagged
/// and the sweep continues.
std::vector<SweepRow> asymptoticSweep(double alpha, const std::vector<double>& yGrid, double p = 2.0,
                                      double q = 2.0, int d = 1, const SweepOptions& options = {});

/// lower <= sqrt(2) oracle and oracle <= sqrt(2) upper (lower <= upper without an oracle).
bool bracketingHolds(const SweepRow& row);

}  // namespace gup
