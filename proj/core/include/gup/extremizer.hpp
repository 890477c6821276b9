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
#include <vector>

namespace gup {

// ---- cosine approximation on [-1/(2 pi), 1/(2 pi)] ----

/// d_k(g_D) = j_k(D), k = 0 .. kMax, for g_D(xi) = cos(2 pi D xi).
std::vector<double> cosLegendreCoefficients(double D, int kMax);

/// ||g_D||_2^2 = 1/(2 pi) + sin(2D) / (4 pi D).
double cosNormSquared(double D);

/// Best L2 approximation error of g_D by polynomials of degree <= N, from the coefficient tail.
double bestApproxErrorCos(double D, int N);

/// g_D-hat(x) = (1/2)[sin(x - D)/(pi (x - D)) + sin(x + D)/(pi (x + D))].
double cosTransform(double D, double x);

// ---- Vallee-Poussin means ----

/// Lambda_n = sum_{j=0}^n (4j + 3) = 2n^2 + 5n + 3.
double vallePoussinLambdaSum(int n);

/// theta_k: 1 for k <= n + 1, sum_{j=k}^{2n} lambda_j / (Lambda_{2n} - Lambda_n) in between,
/// 0 for k > 2n.
double vallePoussinMultiplier(int k, int n);

/// theta_k * coeffs_k. Requires coeffs.size() > 2n.
std::vector<double> vallePoussinMean(std::span<const double> coeffs, int n);

/// sum_k a_k P~_{2k}(xi) with the normalized Legendre functions.
double legendreSeries(std::span<const double> evenCoeffs, double xi);

/// sum_k a_k j_k(x).
double fourierLegendreSeries(std::span<const double> evenCoeffs, double x);

/// Max over `points` of |V_n^J(g-hat)(x) - (V_n^L g)-hat(x)| for g = sum_k a_k P~_{2k}: the first
/// by multipliers on the Fourier-Bessel side, the second by quadrature of the Fourier integral
/// of the Legendre-side mean.
double commutationError(std::span<const double> coeffs, int n, std::span<const double> points);

// ---- the one-dimensional extremizer ----

struct NWindow {
  double lower = 0.0;  // c y M / 8
  double upper = 0.0;  // floor(c y M) / 4
  int N = 0;
  bool feasible = false;
};

/// Admissible degree window for M = lambda y; N is the integer in the window nearest 3 c y M / 16.
NWindow degreeWindow(double y, double lambda, double c);

/// Smallest y with a nonempty window: c lambda y^2 >= 5.
double minimalFeasibleY(double lambda, double c);

struct ExtremizerSpec {
  double y = 0.0;
  double alpha = 0.5;
  double lambda = 0.1;
  double c = 1.0;
  double M = 0.0;
  double D = 0.0;
  int N = 1;
  std::vector<double> theta;    // k = 0 .. 2N
  std::vector<double> dCoeffs;  // j_k(D), k = 0 .. kTail
  std::vector<double> hCoeffs;  // (1 - theta_k) d_k

  /// h(xi) on [-1/(2 pi), 1/(2 pi)], zero outside.
  double h(double xi) const;
  /// h-hat(x) = g_D-hat(x) - sum theta_k d_k j_k(x).
  double hHat(double x) const;
  /// ||h||_2 (= ||h-hat||_2).
  double hNorm() const;
  /// int h(xi) xi^j d xi.
  double moment(int j) const;
  /// ||h-hat||_p, 1 < p <= infinity.
  double hHatNorm(double p) const;
};

ExtremizerSpec buildExtremizer(double y, double alpha, double lambda, double c);

/// f-hat(xi) = alpha^{-1/2} int h_M(eta) exp(-pi (xi - eta)^2 / alpha) d eta for f(x) = h-hat(M x) exp(-pi alpha x^2).
double witnessTransform(const ExtremizerSpec& spec, double xi);

struct WitnessRatio {
  double ratio = 0.0;
  double value = 0.0;       // |f(y)|
  double primalNorm = 0.0;  // ||f exp(pi alpha x^2)||_p
  double dualNorm = 0.0;    // ||f-hat exp(pi alpha xi^2)||_q
};

WitnessRatio extremizerWitness(const ExtremizerSpec& spec, double p, double q);

double extremizerLowerBound(const ExtremizerSpec& spec, double p, double q);

inline constexpr double kDefaultExtremizerC = 1.0;

/// The grid lambda in {0.02, 0.05, 0.1, 0.2, 0.5, 1} maximizing the witness at yCalibration,
/// among those whose window is nonempty there; 0 if none is.
double calibrateLambda(double alpha, double p, double q, double c = kDefaultExtremizerC, double yCalibration = 6.0);

/// (ratio at yNorm / sqrt(d))^d.
double tensorLowerBound(int d, double yNorm, double alpha, double lambda, double c, double p, double q);

// ---- the alpha = 1/sqrt(2) norm identity ----

struct VemuriResult {
  double lhs = 0.0;
  double rhs = 0.0;
  int terms = 0;
};

/// For g-hat(xi) = sum_j coeffs_j P_j(xi / a) on [-a, a] and f = exp(-pi alpha x^2) g:
/// lhs = ||f-hat exp(pi alpha xi^2)||_2^2 by quadrature, rhs = 2^{1/4} sum_n 2^{n/2} |g^{(n)}(0)|^2 / ((2 pi)^n n!).
VemuriResult vemuriNormIdentity(std::span<const double> coeffs, double a, double alpha);

// ---- radial constructions (p = q = 2, d in {2, 3}) ----

struct RadialProblem {
  int d = 3;
  double y = 1.0;
  double M = 1.0;
  int N = 1;
};

inline constexpr int kMaxRadialDegree = 60;

/// Weighted best-approximation error of L(xi y) on [0, M] by polynomials of degree <= N.
double radialBestApprox(const RadialProblem& prob);

struct RadialWitness {
  double ratio = 0.0;
  double hHatAtY = 0.0;
  double hNorm = 0.0;    // ||h||_2 = ||h-hat||_2
  double dualNorm = 0.0; // ||f-hat exp(pi alpha |xi|^2)||_2
  double bestApprox = 0.0;
  double M = 0.0;  // support radius lambda y / (2 pi)
  int N = 0;       // from degreeWindow(y, lambda, c), as in one dimension
};

/// Radial witness for d in {2, 3}: h0 = (L - P*) / E~^2 on the ball of radius M, damped by
/// the Gaussian; p = q = 2.
RadialWitness radialWitness(int d, double y, double alpha, double lambda, double c);

double radialLowerBound(int d, double y, double alpha, double lambda, double c);

}  // namespace gup
