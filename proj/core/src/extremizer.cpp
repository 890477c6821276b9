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


#include "gup/extremizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "gup/error.hpp"
#include "gup/orthopoly.hpp"
#include "gup/quadrature.hpp"
#include "gup/specialfn.hpp"

namespace gup {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kHalfWidth = 1.0 / (2.0 * kPi);
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kLogNegligible = -700.0;

double sinc(double t) {
  if (std::abs(t) < 1e-4) return 1.0 - t * t / 6.0;
  return std::sin(t) / t;
}

int tailIndex(double D, int kFloor) {
  const int fromD = static_cast<int>(std::ceil(std::abs(D) / 2.0));
  return std::max(kFloor, fromD) + 60;
}

// log-sum-exp accumulator for positive weights.
class LogSum {
 public:
  void add(double weight, double logValue) {
    if (!(weight > 0.0) || logValue == kNegInf) return;
    const double l = std::log(weight) + logValue;
    if (l > max_) {
      sum_ = sum_ * std::exp(max_ - l) + 1.0;
      max_ = l;
    } else {
      sum_ += std::exp(l - max_);
    }
  }
  double log() const { return sum_ > 0.0 ? max_ + std::log(sum_) : kNegInf; }

 private:
  double max_ = kNegInf;
  double sum_ = 0.0;
};

double logAddExp(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  const double hi = std::max(a, b);
  return hi + std::log1p(std::exp(std::min(a, b) - hi));
}

// Smallest x >= start (stepping by `step`) with f(x) <= target, f eventually decreasing.
template <typename F>
double firstBelow(F&& f, double start, double step, double target) {
  double x = start;
  for (int i = 0; i < 100000 && f(x) > target; ++i) x += step;
  return x;
}

// Rule on [-1/(2 pi), 1/(2 pi)] that resolves degree `degree` polynomials times cos(2 pi D xi).
QuadratureRule intervalRule(int degree, double D) {
  const int panels = 8;
  const int n = degree / 2 + static_cast<int>(std::ceil(std::abs(D) / (2.0 * panels))) + 24;
  return compositeGaussLegendre(-kHalfWidth, kHalfWidth, panels, n);
}

// exp(-k) I_0(k).
double besselI0Scaled(double k) {
  if (k < 0.0) k = -k;
  if (k <= 20.0) {
    const double q = 0.25 * k * k;
    double term = 1.0;
    double sum = 1.0;
    for (int j = 1; j < 200; ++j) {
      term *= q / (static_cast<double>(j) * j);
      sum += term;
      if (term < 1e-17 * sum) break;
    }
    return sum * std::exp(-k);
  }
  double a = 1.0;
  double sum = 1.0;
  for (int j = 1; j < 60; ++j) {
    a *= (2.0 * j - 1.0) * (2.0 * j - 1.0) / (8.0 * j * k);
    sum += a;
    if (a < 1e-17 * sum) break;
  }
  return sum / std::sqrt(2.0 * kPi * k);
}

// exp(-k) int_{S^{d-1}} exp(k w_1) dw.
double sphericalMeanScaled(int d, double k) {
  if (d == 3) {
    if (k < 1e-8) return 4.0 * kPi * (1.0 - k);
    return -2.0 * kPi * std::expm1(-2.0 * k) / k;
  }
  if (d == 2) return 2.0 * kPi * besselI0Scaled(k);
  throw InvalidArgument("radial transform: only d = 2 and d = 3 are supported");
}

}  // namespace

std::vector<double> cosLegendreCoefficients(double D, int kMax) {
  if (kMax < 0) throw InvalidArgument("cosLegendreCoefficients: kMax must be >= 0");
  return fourierLegendreKernels(kMax, D);
}

double cosNormSquared(double D) {
  if (D == 0.0) return 1.0 / kPi;
  return 1.0 / (2.0 * kPi) + std::sin(2.0 * D) / (4.0 * kPi * D);
}

double bestApproxErrorCos(double D, int N) {
  if (N < 0) throw InvalidArgument("bestApproxErrorCos: N must be >= 0");
  const int kStart = N / 2 + 1;
  const int kEnd = tailIndex(D, kStart);
  const auto d = fourierLegendreKernels(kEnd, D);
  double tail = 0.0;
  for (int k = kEnd; k >= kStart; --k) tail += d[k] * d[k];
  return std::sqrt(std::max(0.0, tail));
}

double cosTransform(double D, double x) {
  return 0.5 / kPi * (sinc(x - D) + sinc(x + D));
}

double vallePoussinLambdaSum(int n) {
  if (n < 0) return 0.0;
  return 2.0 * n * n + 5.0 * n + 3.0;
}

double vallePoussinMultiplier(int k, int n) {
  if (n < 1) throw InvalidArgument("vallePoussin: n must be >= 1");
  if (k < 0) throw InvalidArgument("vallePoussin: k must be >= 0");
  if (k <= n + 1) return 1.0;
  if (k > 2 * n) return 0.0;
  const double denom = vallePoussinLambdaSum(2 * n) - vallePoussinLambdaSum(n);
  return (vallePoussinLambdaSum(2 * n) - vallePoussinLambdaSum(k - 1)) / denom;
}

std::vector<double> vallePoussinMean(std::span<const double> coeffs, int n) {
  if (n < 1) throw InvalidArgument("vallePoussinMean: n must be >= 1");
  if (static_cast<int>(coeffs.size()) <= 2 * n)
    throw InvalidArgument("vallePoussinMean: need more than 2n coefficients");
  std::vector<double> out(coeffs.size());
  for (std::size_t k = 0; k < coeffs.size(); ++k) out[k] = vallePoussinMultiplier(static_cast<int>(k), n) * coeffs[k];
  return out;
}

double legendreSeries(std::span<const double> evenCoeffs, double xi) {
  if (evenCoeffs.empty()) return 0.0;
  if (std::abs(xi) > kHalfWidth) return 0.0;
  const int K = static_cast<int>(evenCoeffs.size()) - 1;
  const auto p = legendrePAll(2 * K, 2.0 * kPi * xi);
  double s = 0.0;
  for (int k = 0; k <= K; ++k) {
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    s += evenCoeffs[k] * sign * std::sqrt((4.0 * k + 1.0) * kPi) * p[2 * k];
  }
  return s;
}

double fourierLegendreSeries(std::span<const double> evenCoeffs, double x) {
  if (evenCoeffs.empty()) return 0.0;
  const auto j = fourierLegendreKernels(static_cast<int>(evenCoeffs.size()) - 1, x);
  double s = 0.0;
  for (std::size_t k = 0; k < evenCoeffs.size(); ++k) s += evenCoeffs[k] * j[k];
  return s;
}

double commutationError(std::span<const double> coeffs, int n, std::span<const double> points) {
  const auto mean = vallePoussinMean(coeffs, n);
  const int K = static_cast<int>(coeffs.size()) - 1;
  double worst = 0.0;
  for (double x : points) {
    // Fourier-Bessel side: the coefficients of g-hat against j_k are those of g (orthonormality
    // of j_k in L2(R)), and the mean multiplies them by theta_k.
    const double viaBessel = fourierLegendreSeries(mean, x);
    // Legendre side: evaluate the mean on the interval and transform by quadrature.
    const auto rule = intervalRule(2 * K, x);
    double viaQuadrature = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i)
      viaQuadrature += rule.weights[i] * legendreSeries(mean, rule.nodes[i]) * std::cos(2.0 * kPi * x * rule.nodes[i]);
    worst = std::max(worst, std::abs(viaBessel - viaQuadrature));
  }
  return worst;
}

NWindow degreeWindow(double y, double lambda, double c) {
  NWindow w;
  const double q = c * lambda * y * y;
  w.lower = q / 8.0;
  w.upper = std::floor(q) / 4.0;
  const int lo = std::max(1, static_cast<int>(std::floor(w.lower)) + 1);
  const int hi = static_cast<int>(std::ceil(w.upper)) - 1;
  if (lo > hi) return w;
  const double target = 3.0 * q / 16.0;
  w.N = std::clamp(static_cast<int>(std::lround(target)), lo, hi);
  w.feasible = true;
  return w;
}

double minimalFeasibleY(double lambda, double c) {
  if (!(lambda > 0.0) || !(c > 0.0)) throw InvalidArgument("minimalFeasibleY: lambda and c must be > 0");
  return std::sqrt(5.0 / (c * lambda));
}

double ExtremizerSpec::h(double xi) const {
  if (std::abs(xi) > kHalfWidth) return 0.0;
  const int kMax = 2 * N;
  const auto p = legendrePAll(2 * kMax, 2.0 * kPi * xi);
  double s = std::cos(2.0 * kPi * D * xi);
  for (int k = 0; k <= kMax; ++k) {
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    s -= theta[k] * dCoeffs[k] * sign * std::sqrt((4.0 * k + 1.0) * kPi) * p[2 * k];
  }
  return s;
}

double ExtremizerSpec::hHat(double x) const {
  const int kMax = 2 * N;
  const auto j = fourierLegendreKernels(kMax, x);
  double s = cosTransform(D, x);
  for (int k = 0; k <= kMax; ++k) s -= theta[k] * dCoeffs[k] * j[k];
  return s;
}

double ExtremizerSpec::hNorm() const {
  double s = 0.0;
  for (std::size_t k = hCoeffs.size(); k-- > 0;) s += hCoeffs[k] * hCoeffs[k];
  return std::sqrt(s);
}

double ExtremizerSpec::moment(int j) const {
  if (j < 0) throw InvalidArgument("moment: order must be >= 0");
  const auto rule = intervalRule(4 * N + j, D);
  double s = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i) s += rule.weights[i] * h(rule.nodes[i]) * std::pow(rule.nodes[i], j);
  return s;
}

double ExtremizerSpec::hHatNorm(double p) const {
  if (p == 2.0) return hNorm();
  if (!(p > 1.0)) throw InvalidArgument("hHatNorm: p must be > 1");
  const double X = std::max({4.0 * D, 64.0, 32.0 * N});
  // |h-hat(x)| <= tailConst / x for x >= X.
  double tailConst = 2.0 / kPi;
  for (int k = 0; k <= 2 * N; ++k) tailConst += theta[k] * std::abs(dCoeffs[k]) * std::sqrt((4.0 * k + 1.0) / kPi);
  tailConst *= 1.05;
  const auto rule = compositeGaussLegendre(0.0, X, static_cast<int>(std::ceil(2.0 * X)), 16);
  if (std::isinf(p)) {
    double best = std::abs(hHat(0.0));
    for (double x : rule.nodes) best = std::max(best, std::abs(hHat(x)));
    return std::max(best, tailConst / X);
  }
  double s = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i) s += rule.weights[i] * std::pow(std::abs(hHat(rule.nodes[i])), p);
  s += std::pow(tailConst, p) * std::pow(X, 1.0 - p) / (p - 1.0);
  return std::pow(2.0 * s, 1.0 / p);
}

ExtremizerSpec buildExtremizer(double y, double alpha, double lambda, double c) {
  if (!(y > 0.0) || !std::isfinite(y)) throw InvalidArgument("buildExtremizer: y must be > 0");
  if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidArgument("buildExtremizer: alpha must lie in (0, 1)");
  if (!(lambda > 0.0) || !(c > 0.0)) throw InvalidArgument("buildExtremizer: lambda and c must be > 0");
  const NWindow w = degreeWindow(y, lambda, c);
  if (!w.feasible)
    throw InvalidArgument("buildExtremizer: empty degree window; the minimal feasible y is " +
                          std::to_string(minimalFeasibleY(lambda, c)));
  ExtremizerSpec spec;
  spec.y = y;
  spec.alpha = alpha;
  spec.lambda = lambda;
  spec.c = c;
  spec.M = lambda * y;
  spec.D = spec.M * y;
  spec.N = w.N;
  spec.theta.resize(2 * spec.N + 1);
  for (int k = 0; k <= 2 * spec.N; ++k) spec.theta[k] = vallePoussinMultiplier(k, spec.N);
  const int kTail = tailIndex(spec.D, 2 * spec.N);
  spec.dCoeffs = cosLegendreCoefficients(spec.D, kTail);
  spec.hCoeffs.resize(kTail + 1);
  for (int k = 0; k <= kTail; ++k) {
    const double t = (k <= 2 * spec.N) ? spec.theta[k] : 0.0;
    spec.hCoeffs[k] = (1.0 - t) * spec.dCoeffs[k];
  }
  return spec;
}

namespace {

struct TabulatedH {
  QuadratureRule rule;
  std::vector<double> values;
  double l1 = 0.0;
};

TabulatedH tabulate(const ExtremizerSpec& spec) {
  TabulatedH t;
  t.rule = intervalRule(4 * spec.N, spec.D);
  t.values.resize(t.rule.size());
  for (std::size_t i = 0; i < t.rule.size(); ++i) {
    t.values[i] = spec.h(t.rule.nodes[i]);
    t.l1 += t.rule.weights[i] * std::abs(t.values[i]);
  }
  return t;
}

double transformFromTable(const ExtremizerSpec& spec, const TabulatedH& t, double xi) {
  double s = 0.0;
  for (std::size_t i = 0; i < t.rule.size(); ++i) {
    const double r = xi - spec.M * t.rule.nodes[i];
    s += t.rule.weights[i] * t.values[i] * std::exp(-kPi * r * r / spec.alpha);
  }
  return s / std::sqrt(spec.alpha);
}

}  // namespace

double witnessTransform(const ExtremizerSpec& spec, double xi) { return transformFromTable(spec, tabulate(spec), xi); }

WitnessRatio extremizerWitness(const ExtremizerSpec& spec, double p, double q) {
  if (!(p > 1.0) || !(q >= 1.0)) throw InvalidArgument("extremizerWitness: need p > 1 and q >= 1");
  const double alpha = spec.alpha;
  WitnessRatio out;
  out.value = std::abs(spec.hHat(spec.D)) * std::exp(-kPi * alpha * spec.y * spec.y);
  out.primalNorm = (std::isinf(p) ? 1.0 : std::pow(spec.M, -1.0 / p)) * spec.hHatNorm(p);

  const TabulatedH table = tabulate(spec);
  // Beyond the vertex, |f-hat(xi)| exp(pi alpha xi^2) <= B0 exp(E(xi)).
  const double a = spec.M / (2.0 * kPi);
  const double logB0 = std::log(std::max(table.l1, 1e-300)) - 0.5 * std::log(alpha);
  auto E = [&](double xi) { return kPi * alpha * xi * xi - kPi * (xi - a) * (xi - a) / alpha; };
  auto dE = [&](double xi) { return 2.0 * kPi * alpha * xi - 2.0 * kPi * (xi - a) / alpha; };
  const double vertex = a / (1.0 - alpha * alpha);
  const double xiMax = firstBelow([&](double xi) { return logB0 + E(xi); }, vertex + 1.0, 0.25, kLogNegligible);
  const int panels = static_cast<int>(std::ceil(4.0 * xiMax));
  const auto rule = compositeGaussLegendre(0.0, xiMax, panels, 16);
  if (std::isinf(q)) {
    double best = kNegInf;
    for (double xi : rule.nodes) {
      const double v = std::abs(transformFromTable(spec, table, xi));
      if (v > 0.0) best = std::max(best, std::log(v) + kPi * alpha * xi * xi);
    }
    out.dualNorm = std::exp(std::max(best, logB0 + E(xiMax)));
  } else {
    LogSum acc;
    for (std::size_t i = 0; i < rule.size(); ++i) {
      const double xi = rule.nodes[i];
      const double v = std::abs(transformFromTable(spec, table, xi));
      if (v > 0.0) acc.add(rule.weights[i], q * (std::log(v) + kPi * alpha * xi * xi));
    }
    const double tail = q * (logB0 + E(xiMax)) - std::log(q * std::abs(dE(xiMax)));
    out.dualNorm = std::exp((std::log(2.0) + logAddExp(acc.log(), tail)) / q);
  }
  out.ratio = out.value / (out.primalNorm + out.dualNorm);
  return out;
}

double extremizerLowerBound(const ExtremizerSpec& spec, double p, double q) {
  return extremizerWitness(spec, p, q).ratio;
}

double calibrateLambda(double alpha, double p, double q, double c, double yCalibration) {
  double best = 0.0;
  double bestLambda = 0.0;
  for (double lambda : {0.02, 0.05, 0.1, 0.2, 0.5, 1.0}) {
    if (!degreeWindow(yCalibration, lambda, c).feasible) continue;
    const double r = extremizerLowerBound(buildExtremizer(yCalibration, alpha, lambda, c), p, q);
    if (r > best) {
      best = r;
      bestLambda = lambda;
    }
  }
  return bestLambda;
}

double tensorLowerBound(int d, double yNorm, double alpha, double lambda, double c, double p, double q) {
  if (d < 1) throw InvalidArgument("tensorLowerBound: d must be >= 1");
  const double y1 = yNorm / std::sqrt(static_cast<double>(d));
  const double r = extremizerLowerBound(buildExtremizer(y1, alpha, lambda, c), p, q);
  return std::pow(r, d);
}

VemuriResult vemuriNormIdentity(std::span<const double> coeffs, double a, double alpha) {
  if (!(a > 0.0) || !std::isfinite(a)) throw InvalidArgument("vemuri: support half-width must be > 0");
  if (std::abs(alpha - 1.0 / std::sqrt(2.0)) > 1e-12) throw InvalidArgument("vemuri: alpha must equal 1/sqrt(2)");
  VemuriResult out;
  const int J = static_cast<int>(coeffs.size()) - 1;
  if (J < 0) return out;
  auto gHat = [&](double xi) {
    if (std::abs(xi) > a) return 0.0;
    const auto p = legendrePAll(J, xi / a);
    double s = 0.0;
    for (int j = 0; j <= J; ++j) s += coeffs[j] * p[j];
    return s;
  };

  // Right side: moments mu_n = int_{-1}^{1} g-hat(a t) t^n dt, m_n = a^{n+1} mu_n.
  constexpr int kTermCap = 2000;
  const double rate = std::sqrt(2.0) * 2.0 * kPi * a * a;
  const int nGuess = std::min(kTermCap, static_cast<int>(std::ceil(2.0 * std::exp(1.0) * rate)) + 80);
  const auto unit = gaussLegendre(std::max(8, (J + nGuess) / 2 + 8), -1.0, 1.0);
  std::vector<double> g(unit.size());
  double l1 = 0.0;
  for (std::size_t i = 0; i < unit.size(); ++i) {
    g[i] = gHat(a * unit.nodes[i]);
    l1 += unit.weights[i] * std::abs(g[i]);
  }
  if (l1 == 0.0) return out;
  const double logPrefix = 0.25 * std::log(2.0);
  double sum = 0.0;
  bool done = false;
  std::vector<double> power(unit.size(), 1.0);
  for (int n = 0; n <= kTermCap; ++n) {
    double mu = 0.0;
    for (std::size_t i = 0; i < unit.size(); ++i) {
      mu += unit.weights[i] * g[i] * power[i];
      power[i] *= unit.nodes[i];
    }
    if (mu != 0.0) {
      const double logTerm = logPrefix + 0.5 * n * std::log(2.0) + n * std::log(2.0 * kPi) +
                             (2.0 * n + 2.0) * std::log(a) + 2.0 * std::log(std::abs(mu)) - std::lgamma(n + 1.0);
      sum += std::exp(logTerm);
    }
    out.terms = n + 1;
    // Envelope with |mu_n| <= ||g-hat(a .)||_1 bounds every later term once it decreases.
    const double logEnvelope = logPrefix + n * std::log(rate) + 2.0 * std::log(a) + 2.0 * std::log(l1) - std::lgamma(n + 1.0);
    if (n > rate && sum > 0.0 && logEnvelope < std::log(sum) + std::log(1e-16)) {
      done = true;
      break;
    }
  }
  if (!done) throw AccuracyFailure("vemuri: series did not decay before the term cap", sum, 0.0);
  out.rhs = sum;

  // Left side: f-hat = g-hat * alpha^{-1/2} exp(-pi xi^2 / alpha), integrated against exp(2 pi alpha xi^2).
  const int etaPanels = std::max(4, static_cast<int>(std::ceil(8.0 * a)));
  const auto etaRule = compositeGaussLegendre(-a, a, etaPanels, J / 2 + 24);
  std::vector<double> gEta(etaRule.size());
  double l1Eta = 0.0;
  for (std::size_t i = 0; i < etaRule.size(); ++i) {
    gEta[i] = gHat(etaRule.nodes[i]);
    l1Eta += etaRule.weights[i] * std::abs(gEta[i]);
  }
  const double logB0 = std::log(l1Eta) - 0.5 * std::log(alpha);
  auto E = [&](double xi) { return kPi * alpha * xi * xi - kPi * (xi - a) * (xi - a) / alpha; };
  const double vertex = a / (1.0 - alpha * alpha);
  const double xiMax = firstBelow([&](double xi) { return logB0 + E(xi); }, vertex + 1.0, 0.25, kLogNegligible);
  const auto xiRule = compositeGaussLegendre(-xiMax, xiMax, static_cast<int>(std::ceil(8.0 * xiMax)), 16);
  LogSum acc;
  for (std::size_t k = 0; k < xiRule.size(); ++k) {
    const double xi = xiRule.nodes[k];
    double s = 0.0;
    for (std::size_t i = 0; i < etaRule.size(); ++i) {
      const double r = xi - etaRule.nodes[i];
      s += etaRule.weights[i] * gEta[i] * std::exp(-kPi * r * r / alpha);
    }
    s /= std::sqrt(alpha);
    if (s != 0.0) acc.add(xiRule.weights[k], 2.0 * (std::log(std::abs(s)) + kPi * alpha * xi * xi));
  }
  out.lhs = std::exp(acc.log());
  return out;
}

namespace {

struct RadialFit {
  DiscreteMeasure measure;
  std::vector<double> residual;  // L(xi y) - P*(xi) at the nodes
  double error = 0.0;
};

RadialFit radialFit(const RadialProblem& prob) {
  if (prob.d < 2) throw InvalidArgument("radialBestApprox: d must be >= 2");
  if (!(prob.y > 0.0) || !(prob.M > 0.0)) throw InvalidArgument("radialBestApprox: y and M must be > 0");
  if (prob.N < 0) throw InvalidArgument("radialBestApprox: N must be >= 0");
  if (prob.N > kMaxRadialDegree)
    throw InvalidArgument("radialBestApprox: N above " + std::to_string(kMaxRadialDegree) + " is not supported");
  const int panels = 4 + static_cast<int>(std::ceil(2.0 * prob.y * prob.M));
  const int nodes = std::max(24, prob.N + 12);
  const auto rule = compositeGaussLegendre(0.0, prob.M, panels, nodes);
  RadialFit fit;
  fit.measure.nodes = rule.nodes;
  fit.measure.weights.resize(rule.size());
  for (std::size_t i = 0; i < rule.size(); ++i)
    fit.measure.weights[i] = rule.weights[i] * std::pow(rule.nodes[i], prob.d - 1);
  const OrthonormalBasis basis = lanczosBasis(fit.measure, prob.N);
  std::vector<double> target(rule.size());
  std::vector<std::vector<double>> pk(rule.size());
  std::vector<double> coeff(prob.N + 1, 0.0);
  for (std::size_t i = 0; i < rule.size(); ++i) {
    target[i] = radialKernelL(prob.d, rule.nodes[i] * prob.y);
    pk[i] = basis.evaluateAll(rule.nodes[i]);
    for (int k = 0; k <= prob.N; ++k) coeff[k] += fit.measure.weights[i] * target[i] * pk[i][k];
  }
  fit.residual.resize(rule.size());
  double e2 = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    double approx = 0.0;
    for (int k = 0; k <= prob.N; ++k) approx += coeff[k] * pk[i][k];
    fit.residual[i] = target[i] - approx;
    e2 += fit.measure.weights[i] * fit.residual[i] * fit.residual[i];
  }
  fit.error = std::sqrt(e2);
  return fit;
}

}  // namespace

double radialBestApprox(const RadialProblem& prob) { return radialFit(prob).error; }

RadialWitness radialWitness(int d, double y, double alpha, double lambda, double c) {
  if (d != 2 && d != 3) throw InvalidArgument("radialWitness: d must be 2 or 3");
  if (!(y > 0.0)) throw InvalidArgument("radialWitness: y must be > 0");
  if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidArgument("radialWitness: alpha must lie in (0, 1)");
  if (!(lambda > 0.0) || !(c > 0.0)) throw InvalidArgument("radialWitness: lambda and c must be > 0");
  const NWindow w = degreeWindow(y, lambda, c);
  if (!w.feasible)
    throw InvalidArgument("radialWitness: empty degree window; the minimal feasible y is " +
                          std::to_string(minimalFeasibleY(lambda, c)));
  RadialWitness out;
  // Support radius lambda y / (2 pi): the radial analogue of M [-1/(2 pi), 1/(2 pi)] in one dimension.
  out.M = lambda * y / (2.0 * kPi);
  out.N = w.N;
  const RadialFit fit = radialFit(RadialProblem{d, y, out.M, out.N});
  out.bestApprox = fit.error;
  const double e2 = fit.error * fit.error;
  const auto& mu = fit.measure;
  std::vector<double> h0(mu.size());
  double hatY = 0.0;
  double l1 = 0.0;
  for (std::size_t i = 0; i < mu.size(); ++i) {
    h0[i] = fit.residual[i] / e2;
    hatY += mu.weights[i] * h0[i] * radialKernelL(d, mu.nodes[i] * y);
    l1 += mu.weights[i] * std::abs(h0[i]);
  }
  out.hHatAtY = hatY;
  const double sphere = unitSphereArea(d);
  out.hNorm = std::sqrt(sphere) / fit.error;

  // f-hat(rho) = alpha^{-d/2} int_0^M h0(r) r^{d-1} exp(-pi (rho - r)^2 / alpha) S~(2 pi rho r / alpha) dr.
  auto fHat = [&](double rho) {
    double s = 0.0;
    for (std::size_t i = 0; i < mu.size(); ++i) {
      const double r = mu.nodes[i];
      s += mu.weights[i] * h0[i] * std::exp(-kPi * (rho - r) * (rho - r) / alpha) *
           sphericalMeanScaled(d, 2.0 * kPi * rho * r / alpha);
    }
    return s * std::pow(alpha, -0.5 * d);
  };
  const double logB0 = std::log(std::max(l1, 1e-300)) + std::log(sphere) - 0.5 * d * std::log(alpha);
  const double M = out.M;
  auto E = [&](double rho) { return kPi * alpha * rho * rho - kPi * (rho - M) * (rho - M) / alpha; };
  auto dE = [&](double rho) { return 2.0 * kPi * alpha * rho - 2.0 * kPi * (rho - M) / alpha; };
  const double vertex = M / (1.0 - alpha * alpha);
  auto logTail = [&](double rho) { return 2.0 * (logB0 + E(rho)) + (d - 1) * std::log(rho); };
  const double rhoMax = firstBelow(logTail, vertex + 1.0, 0.25, kLogNegligible);
  const auto rule = compositeGaussLegendre(0.0, rhoMax, static_cast<int>(std::ceil(4.0 * rhoMax)), 16);
  LogSum acc;
  for (std::size_t k = 0; k < rule.size(); ++k) {
    const double rho = rule.nodes[k];
    const double v = std::abs(fHat(rho));
    if (v > 0.0) acc.add(rule.weights[k], 2.0 * (std::log(v) + kPi * alpha * rho * rho) + (d - 1) * std::log(rho));
  }
  const double tail = std::log(2.0) + logTail(rhoMax) - std::log(std::abs(dE(rhoMax)));
  out.dualNorm = std::sqrt(sphere * std::exp(logAddExp(acc.log(), tail)));
  out.ratio = std::abs(hatY) * std::exp(-kPi * alpha * y * y) / (out.hNorm + out.dualNorm);
  return out;
}

double radialLowerBound(int d, double y, double alpha, double lambda, double c) {
  return radialWitness(d, y, alpha, lambda, c).ratio;
}

}  // namespace gup
