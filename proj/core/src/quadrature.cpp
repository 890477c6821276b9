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


#include "gup/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "gup/error.hpp"

namespace gup {

namespace {

constexpr int kAdaptiveNodes = 10;
constexpr int kMaxPanels = 1 << 16;

// Legendre P_n(x) and its derivative by the three-term recurrence.
void legendreWithDerivative(int n, double x, double& p, double& dp) {
  double p0 = 1.0;
  double p1 = x;
  if (n == 0) {
    p = 1.0;
    dp = 0.0;
    return;
  }
  for (int k = 1; k < n; ++k) {
    const double p2 = ((2.0 * k + 1.0) * x * p1 - k * p0) / (k + 1.0);
    p0 = p1;
    p1 = p2;
  }
  p = p1;
  dp = n * (x * p1 - p0) / (x * x - 1.0);
}

struct ReferenceRule {
  std::vector<double> x;
  std::vector<double> w;
};

ReferenceRule referenceRule(int n) {
  ReferenceRule r;
  r.x.resize(n);
  r.w.resize(n);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double p = 0.0;
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      legendreWithDerivative(n, x, p, dp);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) <= 1e-14 * std::max(1.0, std::abs(x))) break;
    }
    legendreWithDerivative(n, x, p, dp);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    r.x[i] = -x;
    r.w[i] = w;
    r.x[n - 1 - i] = x;
    r.w[n - 1 - i] = w;
  }
  if (n % 2 == 1) r.x[n / 2] = 0.0;
  return r;
}

// Reference rules are reused heavily by the adaptive integrator.
const ReferenceRule& cachedRule(int n) {
  static const ReferenceRule r10 = referenceRule(kAdaptiveNodes);
  static const ReferenceRule r20 = referenceRule(2 * kAdaptiveNodes);
  if (n == kAdaptiveNodes) return r10;
  return r20;
}

struct PanelEstimate {
  double coarse = 0.0;
  double fine = 0.0;
  double fineAbs = 0.0;
};

PanelEstimate estimatePanel(const RealFunction& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  PanelEstimate e;
  const auto& r1 = cachedRule(kAdaptiveNodes);
  for (int i = 0; i < kAdaptiveNodes; ++i) e.coarse += r1.w[i] * f(c + h * r1.x[i]);
  const auto& r2 = cachedRule(2 * kAdaptiveNodes);
  for (int i = 0; i < 2 * kAdaptiveNodes; ++i) {
    const double v = f(c + h * r2.x[i]);
    e.fine += r2.w[i] * v;
    e.fineAbs += r2.w[i] * std::abs(v);
  }
  e.coarse *= h;
  e.fine *= h;
  e.fineAbs *= h;
  return e;
}

}  // namespace

QuadratureRule gaussLegendre(int n, double a, double b) {
  if (n < 1) throw InvalidArgument("gaussLegendre: n must be >= 1");
  if (!(a < b)) throw InvalidArgument("gaussLegendre: need a < b");
  const ReferenceRule ref = referenceRule(n);
  QuadratureRule rule;
  rule.a = a;
  rule.b = b;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  for (int i = 0; i < n; ++i) {
    rule.nodes[i] = c + h * ref.x[i];
    rule.weights[i] = h * ref.w[i];
  }
  return rule;
}

QuadratureRule compositeGaussLegendre(std::span<const double> breakpoints, int nodesPerPanel) {
  if (breakpoints.size() < 2) throw InvalidArgument("compositeGaussLegendre: need two breakpoints");
  if (nodesPerPanel < 1) throw InvalidArgument("compositeGaussLegendre: nodesPerPanel must be >= 1");
  const ReferenceRule ref = referenceRule(nodesPerPanel);
  QuadratureRule rule;
  rule.a = breakpoints.front();
  rule.b = breakpoints.back();
  rule.nodes.reserve((breakpoints.size() - 1) * nodesPerPanel);
  rule.weights.reserve(rule.nodes.capacity());
  for (std::size_t p = 0; p + 1 < breakpoints.size(); ++p) {
    const double lo = breakpoints[p];
    const double hi = breakpoints[p + 1];
    if (!(lo < hi)) continue;
    const double c = 0.5 * (lo + hi);
    const double h = 0.5 * (hi - lo);
    for (int i = 0; i < nodesPerPanel; ++i) {
      rule.nodes.push_back(c + h * ref.x[i]);
      rule.weights.push_back(h * ref.w[i]);
    }
  }
  return rule;
}

QuadratureRule compositeGaussLegendre(double a, double b, int panels, int nodesPerPanel) {
  if (!(a < b)) throw InvalidArgument("compositeGaussLegendre: need a < b");
  if (panels < 1) throw InvalidArgument("compositeGaussLegendre: panels must be >= 1");
  std::vector<double> bp(panels + 1);
  for (int i = 0; i <= panels; ++i) bp[i] = a + (b - a) * i / panels;
  bp.back() = b;
  return compositeGaussLegendre(bp, nodesPerPanel);
}

IntegrationResult integrateAdaptive(const RealFunction& f, double a, double b, double tol) {
  if (!(tol > 0.0)) throw InvalidArgument("integrate: tol must be positive");
  IntegrationResult result;
  if (a == b) return result;
  if (a > b) {
    result = integrateAdaptive(f, b, a, tol);
    result.value = -result.value;
    return result;
  }
  struct Panel {
    double lo;
    double hi;
    PanelEstimate est;
  };
  const double width = b - a;
  std::vector<Panel> stack;
  stack.push_back({a, b, estimatePanel(f, a, b)});
  double accepted = 0.0;
  double acceptedErr = 0.0;
  int panels = 1;
  while (!stack.empty()) {
    Panel p = stack.back();
    stack.pop_back();
    const double err = std::abs(p.est.fine - p.est.coarse);
    const double localTol = tol * (p.hi - p.lo) / width;
    const double roundoff = 64.0 * std::numeric_limits<double>::epsilon() * p.est.fineAbs;
    if (err <= std::max(localTol, roundoff) || p.hi - p.lo <= 1e-13 * width) {
      accepted += p.est.fine;
      acceptedErr += err;
      continue;
    }
    if (panels + 1 > kMaxPanels) {
      double estimate = accepted + p.est.fine;
      double errEst = acceptedErr + err;
      for (const auto& q : stack) {
        estimate += q.est.fine;
        errEst += std::abs(q.est.fine - q.est.coarse);
      }
      throw AccuracyFailure("integrate: panel cap exceeded", estimate, errEst);
    }
    const double mid = 0.5 * (p.lo + p.hi);
    stack.push_back({mid, p.hi, estimatePanel(f, mid, p.hi)});
    stack.push_back({p.lo, mid, estimatePanel(f, p.lo, mid)});
    ++panels;
  }
  result.value = accepted;
  result.errorEstimate = acceptedErr;
  result.panels = panels;
  return result;
}

double integrate(const RealFunction& f, double a, double b, double tol) {
  return integrateAdaptive(f, a, b, tol).value;
}

double gaussianTruncationRadius(double decayRate, double tol) {
  if (!(decayRate > 0.0)) throw InvalidArgument("gaussianTruncationRadius: decayRate must be > 0");
  if (!(tol > 0.0)) throw InvalidArgument("gaussianTruncationRadius: tol must be > 0");
  const double target = std::log(tol / 10.0);
  auto g = [&](double r) { return -decayRate * std::numbers::pi * r * r + 64.0 * std::log1p(r); };
  if (g(0.0) <= target) return 0.0;
  // g rises then falls; the first crossing below target lies beyond the maximum.
  double lo = 0.0;
  double hi = 1.0;
  while (g(hi) > target) {
    lo = hi;
    hi *= 2.0;
  }
  for (int i = 0; i < 200 && hi - lo > 1e-12 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (g(mid) > target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return hi;
}

double integrateGaussianLine(const RealFunction& f, double decayRate, double tol) {
  if (!(decayRate > 0.0)) throw InvalidArgument("integrateGaussianLine: decayRate must be > 0");
  const double r = gaussianTruncationRadius(decayRate, tol);
  if (r == 0.0) return 0.0;
  return integrate(f, -r, 0.0, 0.5 * tol) + integrate(f, 0.0, r, 0.5 * tol);
}

double integratePeaked(const RealFunction& f, double a, double b, int scanPoints, double cutoff,
                       int resolution) {
  if (!(a < b)) return 0.0;
  scanPoints = std::max(scanPoints, 16);
  std::vector<double> values(scanPoints + 1);
  double peak = 0.0;
  for (int i = 0; i <= scanPoints; ++i) {
    values[i] = std::abs(f(a + (b - a) * i / scanPoints));
    peak = std::max(peak, values[i]);
  }
  if (peak == 0.0 || !std::isfinite(peak)) return peak == 0.0 ? 0.0 : peak;
  int first = scanPoints;
  int last = 0;
  for (int i = 0; i <= scanPoints; ++i) {
    if (values[i] >= peak * cutoff) {
      first = std::min(first, i);
      last = std::max(last, i);
    }
  }
  const double lo = a + (b - a) * std::max(first - 1, 0) / scanPoints;
  const double hi = a + (b - a) * std::min(last + 1, scanPoints) / scanPoints;
  const auto rule = compositeGaussLegendre(lo, hi, 64 * std::max(resolution, 1), 16);
  return rule.apply(f);
}

}  // namespace gup
