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


#include "gup/specialfn.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "gup/error.hpp"

namespace gup {

namespace {

constexpr double kPi = std::numbers::pi;

// Power series for J_nu(x); accurate while x is moderate relative to the order.
double besselSeries(double nu, double x) {
  if (x == 0.0) return nu == 0.0 ? 1.0 : 0.0;
  const double half = 0.5 * x;
  const double q = -half * half;
  double term = std::exp(nu * std::log(half) - std::lgamma(nu + 1.0));
  double sum = term;
  for (int m = 1; m < 500; ++m) {
    term *= q / (m * (m + nu));
    sum += term;
    if (std::abs(term) <= 1e-17 * std::abs(sum)) break;
  }
  return sum;
}

bool isHalfInteger(double nu, int& n) {
  const double t = nu - 0.5;
  const double r = std::round(t);
  if (std::abs(t - r) > 1e-14 || r < 0) return false;
  n = static_cast<int>(r);
  return true;
}

// j_0..j_nMax for small x by the series j_n(x) = x^n/(2n+1)!! * sum (-x^2/2)^m / (m! (2n+3)...(2n+2m+1)).
std::vector<double> sphericalSeriesAll(int nMax, double x) {
  std::vector<double> out(nMax + 1, 0.0);
  double lead = 1.0;  // x^n / (2n+1)!!
  for (int n = 0; n <= nMax; ++n) {
    if (n > 0) lead *= x / (2.0 * n + 1.0);
    if (lead == 0.0) break;
    double term = 1.0;
    double sum = 1.0;
    for (int m = 1; m < 100; ++m) {
      term *= -0.5 * x * x / (m * (2.0 * n + 2.0 * m + 1.0));
      sum += term;
      if (std::abs(term) <= 1e-17 * std::abs(sum)) break;
    }
    out[n] = lead * sum;
  }
  return out;
}

}  // namespace

double legendreP(int m, double x) {
  if (m < 0) throw InvalidArgument("legendreP: degree must be >= 0");
  if (m == 0) return 1.0;
  double p0 = 1.0;
  double p1 = x;
  for (int k = 1; k < m; ++k) {
    const double p2 = ((2.0 * k + 1.0) * x * p1 - k * p0) / (k + 1.0);
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

std::vector<double> legendrePAll(int mMax, double x) {
  if (mMax < 0) throw InvalidArgument("legendrePAll: degree must be >= 0");
  std::vector<double> p(mMax + 1);
  p[0] = 1.0;
  if (mMax >= 1) p[1] = x;
  for (int k = 1; k < mMax; ++k) p[k + 1] = ((2.0 * k + 1.0) * x * p[k] - k * p[k - 1]) / (k + 1.0);
  return p;
}

double normalizedLegendre(int k, double x) {
  if (k < 0) throw InvalidArgument("normalizedLegendre: index must be >= 0");
  const double sign = (k % 2 == 0) ? 1.0 : -1.0;
  return sign * std::sqrt((4.0 * k + 1.0) * kPi) * legendreP(2 * k, 2.0 * kPi * x);
}

std::vector<double> sphericalBesselAll(int nMax, double x) {
  if (nMax < 0) throw InvalidArgument("sphericalBesselAll: order must be >= 0");
  if (x < 0.0) throw InvalidArgument("sphericalBesselAll: argument must be >= 0");
  if (x == 0.0) {
    std::vector<double> out(nMax + 1, 0.0);
    out[0] = 1.0;
    return out;
  }
  if (x < 0.5) return sphericalSeriesAll(nMax, x);

  std::vector<double> out(nMax + 1, 0.0);
  const double j0 = std::sin(x) / x;
  const double j1 = std::sin(x) / (x * x) - std::cos(x) / x;
  out[0] = j0;
  if (nMax == 0) return out;
  out[1] = j1;
  if (nMax <= x) {
    for (int l = 1; l < nMax; ++l) out[l + 1] = (2.0 * l + 1.0) / x * out[l] - out[l - 1];
    return out;
  }

  // Miller's downward recurrence, normalized by the larger of j_0 and j_1.
  const double top = std::max<double>(nMax, x);
  const int start = static_cast<int>(top + 30.0 + 4.0 * std::sqrt(top));
  double above = 0.0;
  double cur = 1e-300;
  for (int l = start; l >= 1; --l) {
    const double below = (2.0 * l + 1.0) / x * cur - above;
    if (l <= nMax) out[l] = cur;
    above = cur;
    cur = below;
    if (std::abs(cur) > 1e250) {
      cur *= 1e-250;
      above *= 1e-250;
      for (int i = l; i <= nMax; ++i) out[i] *= 1e-250;
    }
  }
  out[0] = cur;
  const double scale = (std::abs(j0) >= std::abs(j1)) ? j0 / out[0] : j1 / out[1];
  for (double& v : out) v *= scale;
  out[0] = j0;
  return out;
}

double sphericalBessel(int n, double x) { return sphericalBesselAll(n, x)[n]; }

double besselJ(double nu, double x) {
  if (x < 0.0) throw InvalidArgument("besselJ: argument must be >= 0");
  if (nu < 0.0) throw InvalidArgument("besselJ: order must be >= 0");
  if (x == 0.0) return nu == 0.0 ? 1.0 : 0.0;
  int n = 0;
  if (isHalfInteger(nu, n)) return std::sqrt(2.0 * x / kPi) * sphericalBessel(n, x);
  if (x <= 12.0 || x <= 0.5 * nu) return besselSeries(nu, x);
  return std::cyl_bessel_j(nu, x);
}

std::vector<double> fourierLegendreKernels(int kMax, double xi) {
  if (kMax < 0) throw InvalidArgument("fourierLegendreKernels: index must be >= 0");
  const auto sb = sphericalBesselAll(2 * kMax, std::abs(xi));
  std::vector<double> out(kMax + 1);
  for (int k = 0; k <= kMax; ++k) out[k] = std::sqrt((4.0 * k + 1.0) / kPi) * sb[2 * k];
  return out;
}

double fourierLegendreKernel(int k, double xi) { return fourierLegendreKernels(k, xi)[k]; }

std::vector<double> hermiteFunctions(int nMax, double x, double gaussianBoost) {
  if (nMax < 0) throw InvalidArgument("hermiteFunctions: index must be >= 0");
  std::vector<double> out(nMax + 1);
  const double base = (gaussianBoost - 1.0) * kPi * x * x;
  const double t = std::sqrt(2.0 * kPi) * x;
  double prev = 0.0;
  double cur = std::pow(2.0, 0.25);
  double logScale = 0.0;
  out[0] = cur * std::exp(base);
  for (int n = 0; n < nMax; ++n) {
    double next = std::sqrt(2.0 / (n + 1.0)) * t * cur - std::sqrt(n / (n + 1.0)) * prev;
    prev = cur;
    cur = next;
    if (std::abs(cur) > 1e150) {
      cur *= 1e-150;
      prev *= 1e-150;
      logScale += 150.0 * std::numbers::ln10;
    }
    out[n + 1] = cur * std::exp(base + logScale);
  }
  return out;
}

double hermiteFunction(int n, double x) { return hermiteFunctions(n, x)[n]; }

double unitSphereArea(int dim) {
  if (dim < 1) throw InvalidArgument("unitSphereArea: dimension must be >= 1");
  return 2.0 * std::pow(kPi, 0.5 * dim) / std::tgamma(0.5 * dim);
}

double radialKernelL(int d, double z) {
  if (d < 1) throw InvalidArgument("radialKernelL: dimension must be >= 1");
  if (z < 0.0) throw InvalidArgument("radialKernelL: argument must be >= 0");
  if (d == 1) return 2.0 * std::cos(2.0 * kPi * z);
  if (z == 0.0) return unitSphereArea(d);
  const double nu = 0.5 * (d - 2);
  if (d == 3) return 2.0 * std::sin(2.0 * kPi * z) / z;
  return 2.0 * kPi * besselJ(nu, 2.0 * kPi * z) / std::pow(z, nu);
}

}  // namespace gup
