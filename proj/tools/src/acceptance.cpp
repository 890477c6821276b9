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


#include "gup/cli/acceptance.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <optional>
#include <ostream>
#include <random>

#include "gup/dualbound.hpp"
#include "gup/error.hpp"
#include "gup/extremizer.hpp"
#include "gup/kernel.hpp"
#include "gup/oracle.hpp"
#include "gup/quadrature.hpp"
#include "gup/specialfn.hpp"

namespace gup::acceptance {

namespace {

constexpr double kPi = std::numbers::pi;

// Pinned thresholds.
constexpr double kSweepAlpha = 0.5;
constexpr double kBracket = 1.4142135623730951;   // sqrt(2) norm-convention factor
constexpr double kFlatnessBand = 3.0;             // max / min of the scaled oracle
constexpr double kSharpnessDrop = 2.0;            // first / last with the wrong exponent
constexpr double kReproduceTol = 1e-8;            // relative to ||Q||_inf
constexpr double kPhiTol = 1e-8;
constexpr double kSlopeTol = 0.1;
constexpr double kBesselTol = 1e-9;
constexpr double kCommuteTol = 1e-8;
constexpr double kInapproxFloor = 0.5;
constexpr double kApproxCeiling = 1e-3;
constexpr double kVemuriTol = 1e-6;
constexpr double kPointwiseBand = 5.0;
constexpr double kFactorialBand = 0.2;            // C_m within +-20% of one C
constexpr double kRadialBand = 4.0;               // max / min for both radial checks
constexpr double kOracleTol = 1e-6;
constexpr int kOracleDegreeLimit = 512;

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

double maxOverMin(const std::vector<double>& v) {
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  return *hi / *lo;
}

double legendreSum(const std::vector<double>& c, double x) {
  const auto p = legendrePAll(static_cast<int>(c.size()) - 1, x);
  double s = 0.0;
  for (std::size_t j = 0; j < c.size(); ++j) s += c[j] * p[j];
  return s;
}

}  // namespace

struct Suite::State {
  std::optional<std::vector<SweepRow>> sweep;
  std::optional<OracleSolver> solver;

  OracleSolver& oracle() {
    if (!solver) solver.emplace(kSweepAlpha, 16, kOracleTol);
    return *solver;
  }

  const std::vector<SweepRow>& rows() {
    if (!sweep) {
      std::vector<double> ys;
      for (int i = 0; i <= 8; ++i) ys.push_back(4.0 + 0.5 * i);
      SweepOptions opt;
      opt.tol = kOracleTol;
      sweep = asymptoticSweep(kSweepAlpha, ys, 2.0, 2.0, 1, opt);
    }
    return *sweep;
  }
};

Suite::Suite() : state_(new State) {}
Suite::~Suite() { delete state_; }

namespace {

Result sandwich(const std::vector<SweepRow>& rows) {
  Result r{1, "sandwich certification", true, ""};
  double worstLow = 0.0;
  double worstHigh = 0.0;
  for (const auto& row : rows) {
    if (!row.ok) {
      r.passed = false;
      r.detail += fmt("row y=%g failed (%s); ", row.y, row.error.c_str());
      continue;
    }
    if (!bracketingHolds(row)) r.passed = false;
    worstLow = std::max(worstLow, row.lower / (kBracket * row.oracle));
    worstHigh = std::max(worstHigh, row.oracle / (kBracket * row.upper));
  }
  r.detail += fmt("max lower/(sqrt2 oracle) = %.4g, max oracle/(sqrt2 upper) = %.4g over %zu rows", worstLow,
                  worstHigh, rows.size());
  return r;
}

std::vector<double> scaledOracle(const std::vector<SweepRow>& rows, double exponent) {
  std::vector<double> v;
  for (const auto& row : rows)
    v.push_back(row.oracle * std::exp(kPi * kSweepAlpha * row.y * row.y) / std::pow(1.0 + row.y, exponent));
  return v;
}

Result flatness(const std::vector<SweepRow>& rows) {
  const auto v = scaledOracle(rows, 0.5);
  const double band = maxOverMin(v);
  return {2, "asymptotic flatness", band <= kFlatnessBand,
          fmt("max/min of oracle e^{pi a y^2}/(1+y)^{1/2} = %.4g (limit %.1f)", band, kFlatnessBand)};
}

Result sharpness(const std::vector<SweepRow>& rows) {
  const auto v = scaledOracle(rows, 1.0);
  bool monotone = true;
  for (std::size_t i = 1; i < v.size(); ++i) monotone = monotone && v[i] < v[i - 1];
  const double drop = v.front() / v.back();
  return {3, "sharpness direction", monotone && drop >= kSharpnessDrop,
          fmt("with (1+y)^{1}: monotone=%s, first/last = %.4g (needs >= %.1f)", monotone ? "yes" : "no", drop,
              kSharpnessDrop)};
}

Result reproducing() {
  std::mt19937_64 rng(20260101);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  std::uniform_int_distribution<int> degree(0, 20);
  const double ms[] = {0.0, 1.0, 2.5};
  const double shifts[] = {0.0, 0.5, 3.0};
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const WeightSpec w{ms[i % 3], shifts[(i / 3) % 3], 2.0, 1};
    const KernelSpec k = minNormPolynomial(w, 20, 2.0);
    std::vector<double> c(degree(rng) + 1);
    for (double& v : c) v = coef(rng);
    // Independent, finer discretization of the weight.
    const DiscreteMeasure mu = weightMeasure(w, 48);
    double integral = 0.0;
    for (std::size_t j = 0; j < mu.size(); ++j) integral += mu.weights[j] * k.kernel(mu.nodes[j]) * legendreSum(c, mu.nodes[j]);
    double supQ = 0.0;
    for (int j = 0; j <= 4000; ++j) supQ = std::max(supQ, std::abs(legendreSum(c, -1.0 + j / 2000.0)));
    worst = std::max(worst, std::abs(integral - legendreSum(c, 0.0)) / supQ);
  }
  return {4, "reproducing formula", worst <= kReproduceTol,
          fmt("max |int K Q w - Q(0)| / ||Q||_inf = %.3g over 100 polynomials (limit %.0e)", worst, kReproduceTol)};
}

Result phiProperties() {
  Result r{5, "phi properties", true, ""};
  for (int m0 : {2, 5, 10}) {
    const PhiSpec phi = buildPhi(1.0, 0.0, m0, 2.0, 1);
    const double zero = 0.0;
    const double atZero = std::abs(phiHat(phi, std::span<const double>(&zero, 1)) - 1.0);
    const auto mom = phiMoments(phi, m0 - 1);
    double worstMoment = 0.0;
    for (int k = 1; k < m0; ++k) worstMoment = std::max(worstMoment, std::abs(mom[k]));
    // Least-squares slope of log|1 - phi-hat| over xi in [1e-3, 1e-2] m0 / delta.
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const int pts = 11;
    for (int i = 0; i < pts; ++i) {
      const double xi = 1e-3 * m0 * std::pow(10.0, i / (pts - 1.0));
      const double lx = std::log(xi);
      const double ly = oneMinusPhiHat(phi, std::span<const double>(&xi, 1)).logAbs();
      sx += lx;
      sy += ly;
      sxx += lx * lx;
      sxy += lx * ly;
    }
    const double slope = (pts * sxy - sx * sy) / (pts * sxx - sx * sx);
    const bool ok = atZero <= kPhiTol && worstMoment <= kPhiTol && std::abs(slope - m0) <= kSlopeTol;
    r.passed = r.passed && ok;
    r.detail += fmt("m0=%d: |phi-hat(0)-1|=%.2g, max moment=%.2g, slope=%.3f; ", m0, atZero, worstMoment, slope);
  }
  r.detail += fmt("slope must be m0 +- %.1f", kSlopeTol);
  return r;
}

Result besselIdentity() {
  double worst = 0.0;
  const double h = 1.0 / (2.0 * kPi);
  const auto rule = compositeGaussLegendre(-h, h, 8, 48);
  for (int k = 0; k <= 20; ++k)
    for (int i = 0; i < 200; ++i) {
      const double xi = -50.0 + 100.0 * i / 199.0;
      double quad = 0.0;
      for (std::size_t j = 0; j < rule.size(); ++j)
        quad += rule.weights[j] * normalizedLegendre(k, rule.nodes[j]) * std::cos(2.0 * kPi * xi * rule.nodes[j]);
      worst = std::max(worst, std::abs(quad - fourierLegendreKernel(k, xi)));
    }
  return {6, "Fourier-Legendre/Bessel identity", worst <= kBesselTol,
          fmt("max error %.3g over k <= 20, |xi| <= 50, 200 points (limit %.0e)", worst, kBesselTol)};
}

Result commutation() {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  std::uniform_real_distribution<double> point(-30.0, 30.0);
  double worst = 0.0;
  for (int n : {3, 6, 10}) {
    for (int trial = 0; trial < 3; ++trial) {
      std::vector<double> c(2 * n + 1 + 6);
      for (double& v : c) v = coef(rng);
      std::vector<double> pts(20);
      for (double& x : pts) x = point(rng);
      worst = std::max(worst, commutationError(c, n, pts));
    }
  }
  return {7, "commutation", worst <= kCommuteTol,
          fmt("max |V^J(g-hat) - (V^L g)^| = %.3g for n in {3,6,10} (limit %.0e)", worst, kCommuteTol)};
}

Result inapproximability() {
  Result r{8, "cosine inapproximability", true, ""};
  for (double D : {20.0, 50.0, 100.0}) {
    const int N = static_cast<int>(std::floor(0.05 * D));
    const double ratio = bestApproxErrorCos(D, N) / std::sqrt(cosNormSquared(D));
    r.passed = r.passed && ratio >= kInapproxFloor;
    r.detail += fmt("D=%g N=%d: E/|g|=%.4f; ", D, N, ratio);
  }
  const double small = bestApproxErrorCos(20.0, 60) / std::sqrt(cosNormSquared(20.0));
  r.passed = r.passed && small <= kApproxCeiling;
  r.detail += fmt("D=20 N=60: E/|g|=%.3g (floor %.1f, ceiling %.0e)", small, kInapproxFloor, kApproxCeiling);
  return r;
}

Result vemuri() {
  const double alpha = 1.0 / std::sqrt(2.0);
  std::vector<double> worst;
  const std::vector<double> indicator{1.0};
  const auto base = vemuriNormIdentity(indicator, 0.5, alpha);
  double dev = std::abs(base.lhs / base.rhs - 1.0);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  std::uniform_real_distribution<double> width(0.25, 1.0);
  for (int t = 0; t < 10; ++t) {
    std::vector<double> c(9, 0.0);
    for (int j = 0; j <= 8; j += 2) c[j] = coef(rng);
    const auto v = vemuriNormIdentity(c, width(rng), alpha);
    dev = std::max(dev, std::abs(v.lhs / v.rhs - 1.0));
  }
  return {9, "Vemuri identity", dev <= kVemuriTol,
          fmt("indicator lhs=%.12g rhs=%.12g; max |lhs/rhs - 1| = %.3g over 11 cases (limit %.0e)", base.lhs,
              base.rhs, dev, kVemuriTol)};
}

Result momentBounds() {
  const auto params = makeMomentParams(3.0, 2.0, 2.0, 1);
  std::vector<double> pointwise;
  for (int i = 1; i <= 10; ++i) {
    const double y = 2.0 * i;
    pointwise.push_back(momentUpperBound(y, params, MomentRegime::Pointwise).bound * std::pow(y, 2.5));
  }
  const double band = maxOverMin(pointwise);
  std::vector<double> cm;
  for (int m = 2; m <= 12; ++m) {
    const auto pm = makeMomentParams(m, 2.0, 2.0, 1);
    double sup = 0.0;
    for (double y : {0.0, 0.25, 0.5, 1.0, 2.0, 4.0})
      sup = std::max(sup, momentUpperBound(y, pm, MomentRegime::Factorial).bound);
    cm.push_back(std::pow(sup * std::sqrt(std::tgamma(m + 1.0)), 1.0 / m));
  }
  // Some C has every C_m within +-20% iff max/min <= 1.2/0.8.
  const double spread = maxOverMin(cm);
  const double cFit = std::sqrt(*std::min_element(cm.begin(), cm.end()) * *std::max_element(cm.begin(), cm.end()));
  const bool ok = band <= kPointwiseBand && spread <= (1.0 + kFactorialBand) / (1.0 - kFactorialBand);
  return {10, "moment bounds", ok,
          fmt("pointwise band max/min = %.4g (limit %.0f); factorial C = %.4g, C_m spread %.4g (limit %.2f)", band,
              kPointwiseBand, cFit, spread, (1.0 + kFactorialBand) / (1.0 - kFactorialBand))};
}

Result radial() {
  std::vector<double> scaled;
  std::string detail;
  for (double y : {6.0, 8.0, 10.0}) {
    const double v = radialLowerBound(3, y, 0.5, 1.0, kDefaultExtremizerC) * std::exp(kPi * 0.5 * y * y) *
                     std::sqrt(1.0 + y);
    scaled.push_back(v);
    detail += fmt("y=%g: %.4g; ", y, v);
  }
  std::vector<double> band;
  for (double y : {20.0, 40.0, 80.0}) {
    const int N = static_cast<int>(std::floor(0.05 * y));
    const double e = radialBestApprox(RadialProblem{3, y, 1.0, N});
    band.push_back(e * y);
    detail += fmt("E~_%d(y=%g) y = %.4g; ", N, y, e * y);
  }
  const double lowest = *std::min_element(scaled.begin(), scaled.end());
  const bool ok = lowest > 0.0 && maxOverMin(scaled) <= kRadialBand && maxOverMin(band) <= kRadialBand;
  detail += fmt("bands %.3g and %.3g (limit %.0f)", maxOverMin(scaled), maxOverMin(band), kRadialBand);
  return {11, "radial case", ok, detail};
}

Result oracleConvergence(OracleSolver& solver) {
  Result r{12, "oracle convergence", true, ""};
  for (int i = 0; i <= 8; ++i) {
    const double y = i;
    const OracleResult o = solver.evaluate(y);
    bool monotone = true;
    for (std::size_t j = 1; j < o.valueHistory.size(); ++j)
      monotone = monotone && o.valueHistory[j] >= o.valueHistory[j - 1] * (1.0 - 1e-12);
    const double change = o.previous > 0.0 ? std::abs(o.value - o.previous) / o.value : 1.0;
    const bool ok = monotone && o.converged && o.nMax <= kOracleDegreeLimit;
    r.passed = r.passed && ok;
    r.detail += fmt("y=%g: nMax=%d rel.change=%.2g%s; ", y, o.nMax, change, monotone ? "" : " non-monotone");
  }
  r.detail += fmt("needs change < %.0e by nMax %d", kOracleTol, kOracleDegreeLimit);
  return r;
}

}  // namespace

Result Suite::run(int id) {
  try {
    switch (id) {
      case 1: return sandwich(state_->rows());
      case 2: return flatness(state_->rows());
      case 3: return sharpness(state_->rows());
      case 4: return reproducing();
      case 5: return phiProperties();
      case 6: return besselIdentity();
      case 7: return commutation();
      case 8: return inapproximability();
      case 9: return vemuri();
      case 10: return momentBounds();
      case 11: return radial();
      case 12: return oracleConvergence(state_->oracle());
      default: throw InvalidArgument("acceptance: criterion id must lie in 1..12");
    }
  } catch (const InvalidArgument&) {
    if (id < 1 || id > kCriteria) throw;
    return {id, "criterion " + std::to_string(id), false, "invalid argument raised"};
  } catch (const std::exception& e) {
    return {id, "criterion " + std::to_string(id), false, std::string("error: ") + e.what()};
  }
}

std::vector<Result> Suite::runAll(std::ostream* progress) {
  std::vector<Result> out;
  for (int id = 1; id <= kCriteria; ++id) {
    out.push_back(run(id));
    if (progress) *progress << formatLine(out.back()) << std::endl;
  }
  return out;
}

std::string formatLine(const Result& r) {
  return fmt("%s %2d %s: %s", r.passed ? "PASS" : "FAIL", r.id, r.name.c_str(), r.detail.c_str());
}

}  // namespace gup::acceptance
