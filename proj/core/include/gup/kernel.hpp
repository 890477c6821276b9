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

#include <span>
#include <string>
#include <vector>

#include "gup/orthopoly.hpp"

namespace gup {

/// The weight ((x_1 - alphaShift)^2 + x_2^2 + ... + x_d^2)^{pm/2}.
struct WeightSpec {
  double m = 0.0;
  double alphaShift = 0.0;
  double p = 2.0;
  int d = 1;

  void validate() const;
  double operator()(double x) const;
  double operator()(std::span<const double> x) const;
};

/// Discretization of the d = 1 weight on [-1, 1]: Gauss-Legendre panels (four, split at the
/// weight's center when it lies inside, geometrically graded towards it when pm is not an
/// integer) with the weight folded into the quadrature weights.
DiscreteMeasure weightMeasure(const WeightSpec& weight, int nodesPerPanel);

/// Minimizer P* of ||P||_{p,w} over degree <= m0 with P(0) = 1, and the associated kernel
/// K = |P*|^{p-2} P* / ||P*||^p.
struct KernelSpec {
  WeightSpec weight;
  int m0 = 0;
  double p = 2.0;
  std::vector<double> pstarCoeffs;  // Legendre basis on [-1, 1]
  OrthonormalBasis basis;           // orthonormal for the weight
  std::vector<double> basisCoeffs;  // P* in `basis`
  double pstarNorm = 0.0;           // ||P*||_{p,w}
  double kernelNorm = 0.0;          // ||K||_{p',w}
  int iterations = 0;
  double dualityGap = 0.0;       // max_k |<K, p_k>_w - p_k(0)|
  double normalResidual = 0.0;   // p = 2 normal-equation residual

  double pstar(double x) const;
  double kernel(double x) const;
};

KernelSpec minNormPolynomial(const WeightSpec& weight, int m0, double p, double tol = 1e-12);

double kernelEval(const KernelSpec& spec, double x);

/// The measure used for `spec`, for integrals of K against further factors.
DiscreteMeasure kernelMeasure(const KernelSpec& spec);

struct NikolskiiRow {
  int m0 = 0;
  double kernelNorm = 0.0;
  double geometricC = 0.0;   // ||K||^{1/(m0+m)}
  double polynomialC = 0.0;  // ||K|| |alpha|^m / (1 + m0^{1/p} + m^{1/p})
};

struct NikolskiiReport {
  std::vector<NikolskiiRow> rows;
  double geometricC = 0.0;
  double polynomialC = 0.0;
  std::string note;
};

NikolskiiReport nikolskiiReport(const WeightSpec& weight, std::span<const int> m0Range, double p);

}  // namespace gup
