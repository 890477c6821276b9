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

#include <functional>
#include <span>
#include <vector>

namespace gup {

using RealFunction = std::function<double(double)>;

/// A fixed quadrature rule on a finite interval: sum_i weights[i] * f(nodes[i]).
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  double a = 0.0;
  double b = 0.0;

  std::size_t size() const { return nodes.size(); }

  template <typename F>
  double apply(F&& f) const {
    double s = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) s += weights[i] * f(nodes[i]);
    return s;
  }
};

/// n-point Gauss-Legendre rule on [a, b]; exact for polynomials of degree <= 2n - 1.
/// Nodes come from Newton iteration on the Legendre recurrence.
QuadratureRule gaussLegendre(int n, double a, double b);

/// Gauss-Legendre rule of n nodes on each panel of a partition given by sorted breakpoints.
QuadratureRule compositeGaussLegendre(std::span<const double> breakpoints, int nodesPerPanel);

/// Same, with `panels` equal panels on [a, b].
QuadratureRule compositeGaussLegendre(double a, double b, int panels, int nodesPerPanel);

struct IntegrationResult {
  double value = 0.0;
  double errorEstimate = 0.0;
  int panels = 0;
};

/// Adaptive bisection with a per-panel (n, 2n)-node Gauss estimate.
/// Throws AccuracyFailure (with best estimate) once 2^16 panels are exceeded.
IntegrationResult integrateAdaptive(const RealFunction& f, double a, double b, double tol);

/// Adaptive integration of f over [a, b] to absolute tolerance tol.
double integrate(const RealFunction& f, double a, double b, double tol);

/// Integral over the real line of an integrand bounded by poly(x) * exp(-decayRate * pi * x^2).
double integrateGaussianLine(const RealFunction& f, double decayRate, double tol);

/// Truncation radius used by integrateGaussianLine: the smallest R with
/// exp(-decayRate*pi*R^2) * (1+R)^64 <= tol/10.
double gaussianTruncationRadius(double decayRate, double tol);

/// Integrate a non-negative function whose mass sits in an unknown sub-window of [a, b]:
/// the window is located from a scan on `scanPoints` points (values below peak * cutoff are
/// dropped), then integrated with a composite rule. Deterministic; resolution scales the rule.
double integratePeaked(const RealFunction& f, double a, double b, int scanPoints = 2000,
                       double cutoff = 1e-30, int resolution = 1);

}  // namespace gup
