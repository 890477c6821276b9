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

#include <complex>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "gup/kernel.hpp"

namespace gup {

/// A complex number z * exp(logScale), for quantities far below the double range.
struct ScaledComplex {
  std::complex<double> z{0.0, 0.0};
  double logScale = 0.0;

  double logAbs() const;
  std::complex<double> value() const;
};

/// Transform data for one factor t -> K(t) w(t) on [-1, 1] dilated to [-delta, delta]:
///   F(xi) = int K(t) w(t) exp(-2 pi i delta xi t) dt.
/// 1 - F is evaluated without cancellation: a moment series where the argument is small
/// against the degree, a direct Gauss rule otherwise.
class FactorTransform {
 public:
  FactorTransform(std::shared_ptr<const KernelSpec> kernel, double delta, double thetaMax);

  ScaledComplex oneMinus(double xi) const;
  std::complex<double> value(double xi) const;

  double delta() const { return delta_; }
  double l1Norm() const { return l1Norm_; }
  /// Bound on the rounding error of the direct rule, in absolute terms.
  double roundoff() const { return roundoff_; }
  /// Arguments 2 pi delta |xi| up to this use the moment series.
  double seriesRadius() const { return seriesRadius_; }
  const KernelSpec& kernel() const { return *kernel_; }
  double mass() const { return mass_; }
  /// int t^j K(t) w(t) dt for j = 0 .. m0 + kSeriesTerms.
  const std::vector<double>& moments() const { return moments_; }

  static constexpr int kSeriesTerms = 80;

 private:
  std::complex<double> directOneMinus(double theta, const std::vector<double>& nodes,
                                      const std::vector<double>& weights) const;
  void directRule(double thetaMax, std::vector<double>& nodes, std::vector<double>& weights) const;

  int m0_ = 0;
  double delta_ = 1.0;
  double thetaMax_ = 0.0;
  double seriesRadius_ = 0.0;
  double l1Norm_ = 0.0;
  double mass_ = 0.0;
  std::vector<double> moments_;
  std::vector<double> nodes_;
  std::vector<double> weights_;  // quadrature weight times K w
  double roundoff_ = 0.0;
  std::shared_ptr<const KernelSpec> kernel_;
};

/// phi(x) = prod_i delta^{-1} K_i(x_i / delta) w_i(x_i / delta) on [-delta, delta]^d; the first
/// factor uses the weight |t - center|^{pm}, the others are unweighted.
struct PhiSpec {
  double delta = 1.0;
  double m = 0.0;
  int m0 = 1;
  double p = 2.0;
  int d = 1;
  double center = 1.0;
  std::vector<std::shared_ptr<const KernelSpec>> factors;
  std::vector<std::shared_ptr<const FactorTransform>> transforms;
};

/// Builds phi. `thetaMax` is the largest 2 pi delta |xi| the cached direct rule resolves
/// (larger arguments are still handled, at a higher cost).
PhiSpec buildPhi(double delta, double m, int m0, double p, int d, double center = 1.0,
                 double thetaMax = 400.0);

double phiValue(const PhiSpec& spec, std::span<const double> x);
std::complex<double> phiHat(const PhiSpec& spec, std::span<const double> xi);
ScaledComplex oneMinusPhiHat(const PhiSpec& spec, std::span<const double> xi);
/// int phi.
double phiIntegral(const PhiSpec& spec);
/// int phi(x) x_1^k dx for k = 0 .. kMax.
std::vector<double> phiMoments(const PhiSpec& spec, int kMax);

struct GaussianBoundParams {
  double alpha = 0.5;
  double A = 0.45;
  double B = 0.5 / 0.9;
  double k = 0.05;
  int N = 40;
  double lambdaScale = 0.0;  // sqrt(sqrt(A / B))

  void validate() const;
};

/// A = ratio * alpha, B = alpha / ratio with ratio in (0, 1).
GaussianBoundParams makeGaussianParams(double alpha, double ratio = 0.9, double k = 0.05, int N = 40);

/// The two dual terms at a point y = (y, 0, ..., 0) for weights exp(pi A x^2) on f and
/// exp(pi B xi^2) on f-hat:
///   termI  = || (1 - phi-hat) exp(-pi B xi^2) ||_{q'},
///   termII = || phi(y - .) exp(-pi A x^2) ||_{p'}.
struct DualTerms {
  double logTermI = 0.0;
  double logTermII = 0.0;
  double termI() const;
  double termII() const;
};

DualTerms gaussianDualTerms(const PhiSpec& phi, double y, double A, double B, double p, double q,
                            int resolution = 1);

struct GaussianBoundResult {
  double bound = 0.0;      // min(max of rescaled terms, fallback)
  double sumBound = 0.0;   // sum of rescaled terms
  double termI = 0.0;      // rescaled
  double termII = 0.0;     // rescaled
  double fallbackBound = 0.0;
  bool fallback = false;
  double m = 0.0;
  double kEffective = 0.0;
  double delta = 0.0;
  int m0 = 0;
  double k = 0.0;
  int N = 0;
  std::string note;
};

/// Largest m0 the parameter scheme is allowed to use.
inline constexpr int kMaxSchemeDegree = 480;

/// The bound |f(y)| <= exp(...)-weighted dual terms for the parameter scheme
///   m = floor(2 pi A k y'^2), k(y) = m / (2 pi A y'^2), delta = k(y) y', m0 = min(N m, cap),
/// evaluated at y' = y / lambda and rescaled back to weights (alpha, alpha).
GaussianBoundResult dualityUpperBoundGaussian(double y, const GaussianBoundParams& params, double p,
                                              double q, int d, int resolution = 1);

/// Minimum of the above over k in {0.02, 0.05, 0.1} and N in {20, 40, 80}.
GaussianBoundResult optimizedUpperBoundGaussian(double y, double alpha, double p, double q, int d,
                                                double ratio = 0.9);

/// |f(y)| <= ||f-hat||_1 <= (q' alpha)^{-d/(2q')} ||f-hat exp(pi alpha xi^2)||_q.
double gaussianFallbackBound(double alpha, double q, int d);

struct MomentParams {
  double m = 3.0;
  double n = 3.0;
  double p = 2.0;
  double q = 2.0;
  int d = 1;
  double epsilon = 1e-9;

  void validate() const;
};

/// n from n - d/q' = m - d/p.
MomentParams makeMomentParams(double m, double p, double q, int d = 1, double epsilon = 1e-9);

enum class MomentRegime { Pointwise, Factorial };

struct MomentBoundResult {
  double bound = 0.0;
  double sumBound = 0.0;
  double termI = 0.0;
  double termII = 0.0;
  double delta = 0.0;
  double lambda = 0.0;
  int m0 = 0;
};

/// Bound on sup |f(y)| / (||f |x|^m||_p + ||f-hat |xi|^n||_q) from the dual terms
///   termI  = || (1 - phi-hat) |xi|^{-n} ||_{q'},  termII = || |x - y|^{-m} phi ||_{p'}
/// with m0 = ceil(m + n); pointwise regime delta = lambda m / y (lambda by golden section),
/// factorial regime delta = sqrt(m0).
MomentBoundResult momentUpperBound(double y, const MomentParams& params, MomentRegime regime);

/// The moment-scheme terms for an explicit delta.
MomentBoundResult momentTerms(double y, const MomentParams& params, double delta);

}  // namespace gup
