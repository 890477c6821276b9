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


#include "gup/dualbound.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "gup/error.hpp"
#include "gup/quadrature.hpp"

namespace gup {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kTailExponent = 800;  // integration windows stop where the integrand is below e^{-800}

double dualExponent(double p) {
  if (std::isinf(p)) return 1.0;
  if (p == 1.0) return std::numeric_limits<double>::infinity();
  return p / (p - 1.0);
}

double logAddExp(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  const double hi = std::max(a, b);
  return hi + std::log1p(std::exp(std::min(a, b) - hi));
}

// Streaming log-sum-exp of w_i exp(l_i) with w_i > 0.
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
  void addMax(double logValue) { peak_ = std::max(peak_, logValue); }
  double log() const { return sum_ > 0.0 ? max_ + std::log(sum_) : kNegInf; }
  double peak() const { return peak_; }

 private:
  double max_ = kNegInf;
  double sum_ = 0.0;
  double peak_ = kNegInf;
};

ScaledComplex normalized(std::complex<double> z, double logScale) {
  const double a = std::abs(z);
  if (a == 0.0 || !std::isfinite(a)) return {z, a == 0.0 ? 0.0 : logScale};
  return {z / a, logScale + std::log(a)};
}

ScaledComplex scaledAdd(const ScaledComplex& a, const ScaledComplex& b) {
  if (a.z == 0.0) return b;
  if (b.z == 0.0) return a;
  const double s = std::max(a.logScale, b.logScale);
  return normalized(a.z * std::exp(a.logScale - s) + b.z * std::exp(b.logScale - s), s);
}

ScaledComplex scaledMul(const ScaledComplex& a, const ScaledComplex& b) {
  return normalized(a.z * b.z, a.logScale + b.logScale);
}

std::vector<double> kernelBreakpoints(const WeightSpec& w, int panels) {
  std::vector<double> bp;
  for (int i = 0; i <= panels; ++i) bp.push_back(-1.0 + 2.0 * i / panels);
  if (w.m > 0.0 && w.alphaShift > -1.0 && w.alphaShift < 1.0) bp.push_back(w.alphaShift);
  std::sort(bp.begin(), bp.end());
  bp.erase(std::unique(bp.begin(), bp.end(), [](double u, double v) { return std::abs(u - v) < 1e-15; }), bp.end());
  return bp;
}

double kernelTimesWeight(const KernelSpec& k, double t) { return k.kernel(t) * k.weight(t); }

// log of int_0^{xiMax} |1 - F(xi)|^{q'} exp(-q' pi B xi^2) over a composite rule (or the
// log-sup for q' = infinity), including the rounding allowance of the direct route.
double logOneSidedTermI(const FactorTransform& f, double B, double qq, double xiMax, int resolution) {
  const int panels = std::max(1, static_cast<int>(std::ceil(xiMax * 4.0 * resolution)));
  const auto rule = compositeGaussLegendre(0.0, xiMax, panels, 16);
  const double floorLog = std::log(f.roundoff());
  LogSum acc;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const double xi = rule.nodes[i];
    double la = f.oneMinus(xi).logAbs();
    if (2.0 * kPi * f.delta() * xi > f.seriesRadius()) la = logAddExp(la, floorLog);
    const double gauss = -kPi * B * xi * xi;
    if (std::isinf(qq))
      acc.addMax(la + gauss);
    else
      acc.add(rule.weights[i], qq * (la + gauss));
  }
  return std::isinf(qq) ? acc.peak() : acc.log();
}

// log || (1 - F) exp(-pi B xi^2) ||_{L^{q'}(R)} for one factor, with a certified tail.
double logFactorTermI(const FactorTransform& f, double B, double qq, int resolution) {
  const double logBound = std::log1p(f.l1Norm());
  if (std::isinf(qq)) {
    const double xiMax = std::sqrt((logBound + kTailExponent) / (kPi * B));
    return logOneSidedTermI(f, B, qq, xiMax, resolution);
  }
  const double xiMax = std::sqrt((qq * logBound + kTailExponent) / (qq * kPi * B));
  const double body = std::log(2.0) + logOneSidedTermI(f, B, qq, xiMax, resolution);
  // int_{|xi| > a} (1 + ||phi||_1)^{q'} e^{-c xi^2} <= (1 + ||phi||_1)^{q'} e^{-c a^2} / (c a).
  const double c = qq * kPi * B;
  const double tail = qq * logBound - c * xiMax * xiMax - std::log(c * xiMax);
  return logAddExp(body, tail) / qq;
}

// log of the p'-integral of |phi_i(x)|^{p'} exp(-p' pi A (y - x)^2) for one factor (or its
// log-sup for p' = infinity).
double logFactorTermII(const PhiSpec& phi, std::size_t index, double y, double A, double pp, int resolution) {
  const KernelSpec& k = *phi.factors[index];
  const double delta = phi.delta;
  const double pm = k.weight.p * k.weight.m;
  const double ppEff = std::isinf(pp) ? 1.0 : pp;
  const int panels = 16;
  const int n = resolution * (static_cast<int>(std::ceil(ppEff * (k.m0 + pm) / 2.0)) +
                              static_cast<int>(std::ceil(ppEff * kPi * A * 2.0 * std::abs(y) * delta / panels)) + 20);
  const auto bp = kernelBreakpoints(k.weight, panels);
  const auto rule = compositeGaussLegendre(bp, n);
  LogSum acc;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const double t = rule.nodes[i];
    const double v = std::abs(kernelTimesWeight(k, t)) / delta;
    if (v == 0.0) continue;
    const double r = y - delta * t;
    const double l = std::log(v) - kPi * A * r * r;
    if (std::isinf(pp))
      acc.addMax(l);
    else
      acc.add(rule.weights[i] * delta, pp * l);
  }
  return std::isinf(pp) ? acc.peak() : acc.log();
}

}  // namespace

double ScaledComplex::logAbs() const {
  const double a = std::abs(z);
  return a == 0.0 ? kNegInf : logScale + std::log(a);
}

std::complex<double> ScaledComplex::value() const { return z * std::exp(logScale); }

FactorTransform::FactorTransform(std::shared_ptr<const KernelSpec> kernel, double delta, double thetaMax)
    : delta_(delta), thetaMax_(thetaMax), kernel_(std::move(kernel)) {
  if (!kernel_) throw InvalidArgument("FactorTransform: null kernel");
  if (!(delta > 0.0)) throw InvalidArgument("FactorTransform: delta must be > 0");
  const KernelSpec& k = *kernel_;
  m0_ = k.m0;
  seriesRadius_ = (m0_ + 1) / 4.0;

  const int extra = static_cast<int>(std::ceil(k.weight.p * k.weight.m / 2.0));
  const DiscreteMeasure mu = weightMeasure(k.weight, m0_ + extra + kSeriesTerms / 2 + 10);
  const int jMax = m0_ + kSeriesTerms;
  moments_.assign(jMax + 1, 0.0);
  for (std::size_t i = 0; i < mu.size(); ++i) {
    const double v = mu.weights[i] * k.kernel(mu.nodes[i]);
    l1Norm_ += std::abs(v);
    double power = v;
    for (int j = 0; j <= jMax; ++j) {
      moments_[j] += power;
      power *= mu.nodes[i];
    }
  }
  mass_ = moments_[0];
  roundoff_ = 64.0 * kEps * std::max(1.0, l1Norm_);
  directRule(std::max(thetaMax_, 1.0), nodes_, weights_);
}

void FactorTransform::directRule(double thetaMax, std::vector<double>& nodes, std::vector<double>& weights) const {
  const KernelSpec& k = *kernel_;
  const double pm = k.weight.p * k.weight.m;
  const int panels = 4;
  const int n = static_cast<int>(std::ceil((m0_ + pm + 0.25 * thetaMax) / 2.0)) + 20;
  const auto rule = compositeGaussLegendre(kernelBreakpoints(k.weight, panels), n);
  nodes = rule.nodes;
  weights.resize(rule.size());
  for (std::size_t i = 0; i < rule.size(); ++i) weights[i] = rule.weights[i] * kernelTimesWeight(k, rule.nodes[i]);
}

std::complex<double> FactorTransform::directOneMinus(double theta, const std::vector<double>& nodes,
                                                     const std::vector<double>& weights) const {
  // 1 - F = (1 - mass) + sum w_i (1 - e^{-i theta t_i}), with 1 - cos written as 2 sin^2.
  double re = 1.0;
  double im = 0.0;
  double massDirect = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i) massDirect += weights[i];
  re -= massDirect;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const double h = 0.5 * theta * nodes[i];
    const double s = std::sin(h);
    re += weights[i] * 2.0 * s * s;
    im += weights[i] * std::sin(theta * nodes[i]);
  }
  return {re, im};
}

ScaledComplex FactorTransform::oneMinus(double xi) const {
  const double theta = 2.0 * kPi * delta_ * xi;
  if (theta == 0.0) return {};
  const double at = std::abs(theta);
  if (at <= seriesRadius_) {
    // 1 - F = -sum_{j > m0} (-i theta)^j mu_j / j!, the lower moments being those of the
    // reproducing identity.
    const int j0 = m0_ + 1;
    const double logPrefactor = j0 * std::log(at) - std::lgamma(j0 + 1.0);
    // (-i sgn theta)^j cycles with period 4.
    const std::complex<double> unit(0.0, theta > 0 ? -1.0 : 1.0);
    std::complex<double> phase = std::pow(unit, j0 % 4);
    std::complex<double> sum = 0.0;
    double c = 1.0;
    for (int j = j0; j < static_cast<int>(moments_.size()); ++j) {
      if (j > j0) {
        c *= at / j;
        phase *= unit;
      }
      sum += phase * (c * moments_[j]);
    }
    return normalized(-sum, logPrefactor);
  }
  if (at <= thetaMax_) return normalized(directOneMinus(theta, nodes_, weights_), 0.0);
  std::vector<double> nodes;
  std::vector<double> weights;
  directRule(at, nodes, weights);
  return normalized(directOneMinus(theta, nodes, weights), 0.0);
}

std::complex<double> FactorTransform::value(double xi) const { return 1.0 - oneMinus(xi).value(); }

PhiSpec buildPhi(double delta, double m, int m0, double p, int d, double center, double thetaMax) {
  if (!(delta > 0.0) || !std::isfinite(delta)) throw InvalidArgument("buildPhi: delta must be > 0");
  if (!(m >= 0.0)) throw InvalidArgument("buildPhi: m must be >= 0");
  if (d < 1) throw InvalidArgument("buildPhi: d must be >= 1");
  if (m0 < std::max(1, static_cast<int>(std::ceil(m - 1e-12))))
    throw InvalidArgument("buildPhi: m0 must be >= max(1, ceil(m))");
  PhiSpec spec;
  spec.delta = delta;
  spec.m = m;
  spec.m0 = m0;
  spec.p = p;
  spec.d = d;
  spec.center = center;
  auto first = std::make_shared<const KernelSpec>(minNormPolynomial(WeightSpec{m, center, p, 1}, m0, p));
  auto firstT = std::make_shared<const FactorTransform>(first, delta, thetaMax);
  spec.factors.push_back(first);
  spec.transforms.push_back(firstT);
  if (d > 1) {
    auto rest = std::make_shared<const KernelSpec>(minNormPolynomial(WeightSpec{0.0, 0.0, p, 1}, m0, p));
    auto restT = std::make_shared<const FactorTransform>(rest, delta, thetaMax);
    for (int i = 1; i < d; ++i) {
      spec.factors.push_back(rest);
      spec.transforms.push_back(restT);
    }
  }
  return spec;
}

double phiValue(const PhiSpec& spec, std::span<const double> x) {
  if (static_cast<int>(x.size()) != spec.d) throw InvalidArgument("phiValue: dimension mismatch");
  double v = 1.0;
  for (int i = 0; i < spec.d; ++i) {
    if (std::abs(x[i]) > spec.delta) return 0.0;
    v *= kernelTimesWeight(*spec.factors[i], x[i] / spec.delta) / spec.delta;
  }
  return v;
}

ScaledComplex oneMinusPhiHat(const PhiSpec& spec, std::span<const double> xi) {
  if (static_cast<int>(xi.size()) != spec.d) throw InvalidArgument("phiHat: dimension mismatch");
  // 1 - prod F_i accumulated as R <- R + r - R r.
  ScaledComplex acc = spec.transforms[0]->oneMinus(xi[0]);
  for (int i = 1; i < spec.d; ++i) {
    const ScaledComplex r = spec.transforms[i]->oneMinus(xi[i]);
    ScaledComplex prod = scaledMul(acc, r);
    prod.z = -prod.z;
    acc = scaledAdd(scaledAdd(acc, r), prod);
  }
  return acc;
}

std::complex<double> phiHat(const PhiSpec& spec, std::span<const double> xi) {
  return 1.0 - oneMinusPhiHat(spec, xi).value();
}

double phiIntegral(const PhiSpec& spec) {
  double v = 1.0;
  for (const auto& t : spec.transforms) v *= t->mass();
  return v;
}

std::vector<double> phiMoments(const PhiSpec& spec, int kMax) {
  if (kMax < 0) throw InvalidArgument("phiMoments: kMax must be >= 0");
  const auto& mom = spec.transforms[0]->moments();
  if (kMax >= static_cast<int>(mom.size())) throw InvalidArgument("phiMoments: kMax beyond the tabulated range");
  double rest = 1.0;
  for (int i = 1; i < spec.d; ++i) rest *= spec.transforms[i]->mass();
  std::vector<double> out(kMax + 1);
  double dk = 1.0;
  for (int k = 0; k <= kMax; ++k) {
    out[k] = dk * mom[k] * rest;
    dk *= spec.delta;
  }
  return out;
}

void GaussianBoundParams::validate() const {
  if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidArgument("gaussian bound: alpha must lie in (0, 1)");
  if (!(A > 0.0 && A < alpha && alpha < B)) throw InvalidArgument("gaussian bound: need 0 < A < alpha < B");
  if (std::abs(A * B - alpha * alpha) > 1e-12) throw InvalidArgument("gaussian bound: need A B = alpha^2");
  if (std::abs(lambdaScale * lambdaScale - std::sqrt(A / B)) > 1e-12)
    throw InvalidArgument("gaussian bound: need lambda^2 = sqrt(A / B)");
  if (!(k > 0.0)) throw InvalidArgument("gaussian bound: k must be > 0");
  if (N < 1) throw InvalidArgument("gaussian bound: N must be >= 1");
}

GaussianBoundParams makeGaussianParams(double alpha, double ratio, double k, int N) {
  if (!(ratio > 0.0 && ratio < 1.0)) throw InvalidArgument("gaussian bound: ratio must lie in (0, 1)");
  GaussianBoundParams params;
  params.alpha = alpha;
  params.A = ratio * alpha;
  params.B = alpha / ratio;
  params.k = k;
  params.N = N;
  params.lambdaScale = std::sqrt(std::sqrt(params.A / params.B));
  params.validate();
  return params;
}

double DualTerms::termI() const { return std::exp(logTermI); }
double DualTerms::termII() const { return std::exp(logTermII); }

DualTerms gaussianDualTerms(const PhiSpec& phi, double y, double A, double B, double p, double q, int resolution) {
  if (!(A > 0.0) || !(B > 0.0)) throw InvalidArgument("gaussianDualTerms: weights must be > 0");
  if (!(p >= 1.0) || !(q >= 1.0)) throw InvalidArgument("gaussianDualTerms: exponents must be >= 1");
  if (resolution < 1) throw InvalidArgument("gaussianDualTerms: resolution must be >= 1");
  const double pp = dualExponent(p);
  const double qq = dualExponent(q);
  DualTerms out;

  double logII = 0.0;
  double logRest = 0.0;
  if (phi.d > 1) logRest = logFactorTermII(phi, 1, 0.0, A, pp, resolution);
  logII = logFactorTermII(phi, 0, y, A, pp, resolution) + (phi.d - 1) * logRest;
  out.logTermII = std::isinf(pp) ? logII : logII / pp;

  if (phi.d == 1) {
    out.logTermI = logFactorTermI(*phi.transforms[0], B, qq, resolution);
  } else {
    // |1 - F_1 F_0^{d-1}| <= |r_1| + ||phi_1||_1 sum_i ||phi_0||_1^{i-1} |r_0(xi_i)|, then Minkowski;
    // every summand factorizes over the coordinates.
    const double logGauss = std::isinf(qq) ? 0.0 : -std::log(qq * B) / (2.0 * qq);
    const double l1First = phi.transforms[0]->l1Norm();
    const double l1Rest = phi.transforms[1]->l1Norm();
    const double n1 = logFactorTermI(*phi.transforms[0], B, qq, resolution);
    const double n0 = logFactorTermI(*phi.transforms[1], B, qq, resolution);
    double acc = n1 + (phi.d - 1) * logGauss;
    for (int i = 1; i < phi.d; ++i) {
      const double coef = std::log(l1First) + (i - 1) * std::log(l1Rest);
      acc = logAddExp(acc, coef + n0 + (phi.d - 1) * logGauss);
    }
    out.logTermI = acc;
  }
  return out;
}

double gaussianFallbackBound(double alpha, double q, int d) {
  if (!(alpha > 0.0)) throw InvalidArgument("fallback bound: alpha must be > 0");
  if (d < 1) throw InvalidArgument("fallback bound: d must be >= 1");
  const double qq = dualExponent(q);
  if (std::isinf(qq)) return 1.0;
  return std::pow(qq * alpha, -d / (2.0 * qq));
}

GaussianBoundResult dualityUpperBoundGaussian(double y, const GaussianBoundParams& params, double p, double q, int d,
                                              int resolution) {
  params.validate();
  if (!(y >= 0.0) || !std::isfinite(y)) throw InvalidArgument("gaussian bound: y must be finite and >= 0");
  if (d < 1) throw InvalidArgument("gaussian bound: d must be >= 1");
  if (!(p >= 1.0) || !(q >= 1.0)) throw InvalidArgument("gaussian bound: exponents must be >= 1");

  GaussianBoundResult result;
  result.k = params.k;
  result.N = params.N;
  result.fallbackBound = gaussianFallbackBound(params.alpha, q, d);
  result.bound = result.fallbackBound;
  result.sumBound = result.fallbackBound;
  result.fallback = true;

  const double lambda = params.lambdaScale;
  const double ys = y / lambda;
  const double mRaw = 2.0 * kPi * params.A * params.k * ys * ys;
  const double m = std::floor(mRaw + 1e-12);
  if (m < 1.0) {
    result.note = "m rounds to 0; fallback bound";
    return result;
  }
  const double kEff = m / (2.0 * kPi * params.A * ys * ys);
  if (!(kEff > params.k / 2.0)) {
    result.note = "k(y) leaves (k/2, k); fallback bound";
    return result;
  }
  if (m > kMaxSchemeDegree) {
    result.note = "m exceeds the degree cap; fallback bound";
    return result;
  }
  const int m0 = static_cast<int>(std::min<double>(params.N * m, kMaxSchemeDegree));
  const double delta = kEff * ys;

  const double qq = dualExponent(q);
  const double xiMax = std::sqrt((std::min(qq, 2.0) * 50.0 + kTailExponent) / (std::min(qq, 2.0) * kPi * params.B));
  const PhiSpec phi = buildPhi(delta, m, m0, p, d, 1.0, 2.0 * kPi * delta * xiMax);
  const DualTerms terms = gaussianDualTerms(phi, ys, params.A, params.B, p, q, resolution);

  const double scaleI = std::isinf(qq) ? 0.0 : -d / qq * std::log(lambda);
  const double scaleII = std::isinf(p) ? 0.0 : -d / p * std::log(lambda);
  result.termI = std::exp(terms.logTermI + scaleI);
  result.termII = std::exp(terms.logTermII + scaleII);
  result.m = m;
  result.kEffective = kEff;
  result.delta = delta;
  result.m0 = m0;
  const double lemma = std::max(result.termI, result.termII);
  result.sumBound = std::min(result.termI + result.termII, result.fallbackBound);
  if (lemma < result.fallbackBound) {
    result.bound = lemma;
    result.fallback = false;
  } else {
    result.note = "fallback bound is smaller";
  }
  return result;
}

GaussianBoundResult optimizedUpperBoundGaussian(double y, double alpha, double p, double q, int d, double ratio) {
  GaussianBoundResult best;
  bool have = false;
  for (double k : {0.02, 0.05, 0.1}) {
    for (int N : {20, 40, 80}) {
      const auto params = makeGaussianParams(alpha, ratio, k, N);
      const auto r = dualityUpperBoundGaussian(y, params, p, q, d);
      if (!have || r.bound < best.bound) {
        best = r;
        have = true;
      }
    }
  }
  return best;
}

void MomentParams::validate() const {
  if (d != 1) throw InvalidArgument("moment bound: only d = 1 is supported");
  if (!(p >= 1.0) || !(q >= 1.0)) throw InvalidArgument("moment bound: exponents must be >= 1");
  const double qq = dualExponent(q);
  const double invQQ = std::isinf(qq) ? 0.0 : 1.0 / qq;
  const double invP = std::isinf(p) ? 0.0 : 1.0 / p;
  if (std::abs((n - d * invQQ) - (m - d * invP)) > 1e-12)
    throw InvalidArgument("moment bound: need n - d/q' = m - d/p");
  if (!(epsilon > 0.0)) throw InvalidArgument("moment bound: epsilon must be > 0");
  if (!(m - d * invP > epsilon)) throw InvalidArgument("moment bound: need m - d/p > epsilon");
  if (!(n > d * invQQ)) throw InvalidArgument("moment bound: need n > d/q' for a convergent dual integral");
}

MomentParams makeMomentParams(double m, double p, double q, int d, double epsilon) {
  MomentParams params;
  params.m = m;
  params.p = p;
  params.q = q;
  params.d = d;
  params.epsilon = epsilon;
  const double qq = dualExponent(q);
  const double invQQ = std::isinf(qq) ? 0.0 : 1.0 / qq;
  const double invP = std::isinf(p) ? 0.0 : 1.0 / p;
  params.n = m - d * invP + d * invQQ;
  params.validate();
  return params;
}

namespace {

// log of int_R |1 - psi-hat(s)|^{q'} |s|^{-q' n} ds for the delta = 1 kernel (log-sup for q' = inf).
double logMomentTermI(std::shared_ptr<const KernelSpec> kernel, double n, double qq) {
  double sMax = 8.0;
  constexpr double kSMaxCap = 1024.0;
  for (;;) {
    const FactorTransform f(kernel, 1.0, 2.0 * kPi * sMax);
    const int panels = static_cast<int>(std::ceil(sMax * 4.0));
    const auto rule = compositeGaussLegendre(0.0, sMax, panels, 16);
    const double floorLog = std::log(f.roundoff());
    LogSum acc;
    for (std::size_t i = 0; i < rule.size(); ++i) {
      const double s = rule.nodes[i];
      double la = f.oneMinus(s).logAbs();
      if (2.0 * kPi * s > f.seriesRadius()) la = logAddExp(la, floorLog);
      const double l = la - n * std::log(s);
      if (std::isinf(qq))
        acc.addMax(l);
      else
        acc.add(rule.weights[i], qq * l);
    }
    const double logBound = std::log1p(f.l1Norm());
    if (std::isinf(qq)) {
      // beyond sMax: |1 - psi-hat| s^{-n} <= (1 + ||psi||_1) sMax^{-n}
      const double tail = logBound - n * std::log(sMax);
      if (tail < acc.peak() - 20.0 || sMax >= kSMaxCap) return std::max(acc.peak(), tail);
    } else {
      const double body = std::log(2.0) + acc.log();
      const double expo = qq * n - 1.0;
      const double tail = std::log(2.0) + qq * logBound + (1.0 - qq * n) * std::log(sMax) - std::log(expo);
      // The tail bound is added in full, so a 1e-6 relative share only loosens the bound.
      if (tail < body + std::log(1e-6) || sMax >= kSMaxCap) return logAddExp(body, tail);
    }
    sMax *= 2.0;
  }
}

}  // namespace

MomentBoundResult momentTerms(double y, const MomentParams& params, double delta) {
  params.validate();
  if (!(y >= 0.0)) throw InvalidArgument("moment bound: y must be >= 0");
  if (!(delta > 0.0) || !std::isfinite(delta)) throw InvalidArgument("moment bound: delta must be > 0");
  const double qq = dualExponent(params.q);
  MomentBoundResult r;
  r.delta = delta;
  r.m0 = std::max(1, static_cast<int>(std::ceil(params.m + params.n - 1e-12)));
  auto kernel = std::make_shared<const KernelSpec>(
      minNormPolynomial(WeightSpec{params.m, y / delta, params.p, 1}, r.m0, params.p));
  // termII = delta^{-1/p - m} ||K||_{p', w}
  const double invP = std::isinf(params.p) ? 0.0 : 1.0 / params.p;
  r.termII = std::exp((-invP - params.m) * std::log(delta) + std::log(kernel->kernelNorm));
  // termI = delta^{n - 1/q'} J^{1/q'}
  const double invQQ = std::isinf(qq) ? 0.0 : 1.0 / qq;
  const double logJ = logMomentTermI(kernel, params.n, qq);
  r.termI = std::exp((params.n - invQQ) * std::log(delta) + logJ * (std::isinf(qq) ? 1.0 : invQQ));
  r.bound = std::max(r.termI, r.termII);
  r.sumBound = r.termI + r.termII;
  return r;
}

MomentBoundResult momentUpperBound(double y, const MomentParams& params, MomentRegime regime) {
  params.validate();
  if (regime == MomentRegime::Factorial) {
    const int m0 = std::max(1, static_cast<int>(std::ceil(params.m + params.n - 1e-12)));
    auto r = momentTerms(y, params, std::sqrt(static_cast<double>(m0)));
    return r;
  }
  if (!(y > 0.0)) throw InvalidArgument("moment bound: the pointwise regime needs y > 0");
  // Golden-section search over log lambda, delta = lambda m / y.
  auto eval = [&](double logLambda) {
    auto r = momentTerms(y, params, std::exp(logLambda) * params.m / y);
    r.lambda = std::exp(logLambda);
    return r;
  };
  const double invPhi = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = std::log(1e-2);
  double hi = std::log(1e2);
  double x1 = hi - invPhi * (hi - lo);
  double x2 = lo + invPhi * (hi - lo);
  MomentBoundResult f1 = eval(x1);
  MomentBoundResult f2 = eval(x2);
  for (int it = 0; it < 40 && hi - lo > 1e-4; ++it) {
    if (f1.bound <= f2.bound) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - invPhi * (hi - lo);
      f1 = eval(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + invPhi * (hi - lo);
      f2 = eval(x2);
    }
  }
  return f1.bound <= f2.bound ? f1 : f2;
}

}  // namespace gup
