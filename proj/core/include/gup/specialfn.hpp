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

#include <vector>

namespace gup {

/// Classical Legendre polynomial P_m(x) by the three-term recurrence.
double legendreP(int m, double x);

/// P_0(x), ..., P_mMax(x).
std::vector<double> legendrePAll(int mMax, double x);

/// The even-index normalized Legendre function (-1)^k sqrt((4k+1) pi) P_{2k}(2 pi x),
/// orthonormal in L2([-1/(2pi), 1/(2pi)]).
double normalizedLegendre(int k, double x);

/// Bessel function of the first kind J_nu(x), nu >= 0, x >= 0.
/// Half-integer orders go through spherical Bessel recurrences; other orders use the
/// power series for x <= 12 and the standard library beyond.
double besselJ(double nu, double x);

/// Spherical Bessel functions j_0(x), ..., j_nMax(x) for x >= 0.
/// Upward recurrence where it is stable (n <= x), normalized downward recurrence otherwise.
std::vector<double> sphericalBesselAll(int nMax, double x);

double sphericalBessel(int n, double x);

/// j_k(xi) = sqrt((4k+1)/(2|xi|)) J_{2k+1/2}(|xi|): the Fourier transform of the normalized
/// Legendre function of index 2k. Even in xi; j_0(0) = 1/sqrt(pi), j_k(0) = 0 for k >= 1.
double fourierLegendreKernel(int k, double xi);

/// j_0(xi), ..., j_kMax(xi) in one recurrence pass.
std::vector<double> fourierLegendreKernels(int kMax, double xi);

/// L2-normalized Hermite function for the exp(-2 pi i x xi) Fourier convention:
/// h_0(x) = 2^{1/4} exp(-pi x^2) and FT(h_n) = (-i)^n h_n.
double hermiteFunction(int n, double x);

/// h_0(x) * g, ..., h_nMax(x) * g with g = exp(gaussianBoost * pi * x^2), evaluated with a
/// running log-scale so neither factor under- or overflows on its own.
std::vector<double> hermiteFunctions(int nMax, double x, double gaussianBoost = 0.0);

/// Surface area of the unit sphere S^{dim-1} in R^dim, 2 pi^{dim/2} / Gamma(dim/2).
double unitSphereArea(int dim);

/// Radial Fourier kernel L(z) = 2 pi J_{(d-2)/2}(2 pi z) / z^{(d-2)/2}, normalized so that
/// L(0) = unitSphereArea(d). For d = 1 this is 2 cos(2 pi z).
double radialKernelL(int d, double z);

}  // namespace gup
