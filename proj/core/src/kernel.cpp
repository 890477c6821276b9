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


#include "gup/kernel.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

#include "gup/error.hpp"
#include "gup/quadrature.hpp"
#include "gup/specialfn.hpp"

namespace gup {

namespace {

constexpr int kGradingLevels = 12;
constexpr int kIrlsMaxIterations = 500;
constexpr double kIrlsFloor = 1e-12;
constexpr double kIrlsDamping = 0.5;

int nodesPerPanelFor(const WeightSpec& weight, int m0) {
  return m0 + static_cast<int>(std::ceil(weight.p * weight.m / 2.0)) + 8;
}

bool nearInteger(double v) { return std::abs(v - std::round(v)) < 1e-12; }

double pNorm(const DiscreteMeasure& mu, const std::vector<double>& values, double p) {
  if (std::isinf(p)) {
    double best = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i)
      if (mu.weights[i] > 0.0) best = std::max(best, std::abs(values[i]));
    return best;
  }
  double scale = 0.0;
  for (double v : values) scale = std::max(scale, std::abs(v));
  if (scale == 0.0) return 0.0;
  double s = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) s += mu.weights[i] * std::pow(std::abs(values[i]) / scale, p);
  return scale * std::pow(s, 1.0 / p);
}

Eigen::MatrixXd basisMatrix(const OrthonormalBasis& basis, const DiscreteMeasure& mu) {
  const int n = basis.degree();
  Eigen::MatrixXd phi(static_cast<Eigen::Index>(mu.size()), n + 1);
  for (std::size_t i = 0; i < mu.size(); ++i) {
    const auto v = basis.evaluateAll(mu.nodes[i]);
    for (int k = 0; k <= n; ++k) phi(static_cast<Eigen::Index>(i), k) = v[k];
  }
  return phi;
}

// Minimizer of c^T G c subject to e^T c = 1.
Eigen::VectorXd constrainedLeastSquares(const Eigen::MatrixXd& gram, const Eigen::VectorXd& e) {
  Eigen::LDLT<Eigen::MatrixXd> ldlt(gram);
  if (ldlt.info() != Eigen::Success) throw AccuracyFailure("minNormPolynomial: singular weighted Gram", 0.0, 0.0);
  const Eigen::VectorXd g = ldlt.solve(e);
  return g / e.dot(g);
}

std::vector<double> legendreCoefficients(const KernelSpec& spec) {
  const auto rule = gaussLegendre(spec.m0 + 1, -1.0, 1.0);
  std::vector<double> out(spec.m0 + 1, 0.0);
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const double v = spec.pstar(rule.nodes[i]) * rule.weights[i];
    const auto leg = legendrePAll(spec.m0, rule.nodes[i]);
    for (int j = 0; j <= spec.m0; ++j) out[j] += (2.0 * j + 1.0) / 2.0 * v * leg[j];
  }
  return out;
}

}  // namespace

void WeightSpec::validate() const {
  if (!(m >= 0.0) || !std::isfinite(m)) throw InvalidArgument("weight: m must be finite and >= 0");
  if (d < 1) throw InvalidArgument("weight: d must be >= 1");
  if (!(p >= 1.0)) throw InvalidArgument("weight: p must be >= 1");
  if (!std::isfinite(alphaShift)) throw InvalidArgument("weight: alpha must be finite");
}

double WeightSpec::operator()(double x) const {
  if (m == 0.0) return 1.0;
  return std::pow(std::abs(x - alphaShift), p * m);
}

double WeightSpec::operator()(std::span<const double> x) const {
  if (x.empty()) throw InvalidArgument("weight: empty point");
  if (m == 0.0) return 1.0;
  double r2 = (x[0] - alphaShift) * (x[0] - alphaShift);
  for (std::size_t i = 1; i < x.size(); ++i) r2 += x[i] * x[i];
  return std::pow(r2, p * m / 2.0);
}

DiscreteMeasure weightMeasure(const WeightSpec& weight, int nodesPerPanel) {
  weight.validate();
  if (weight.d != 1) throw InvalidArgument("weightMeasure: only d = 1 weights are discretized");
  std::vector<double> breaks = {-1.0, -0.5, 0.0, 0.5, 1.0};
  const double c = weight.alphaShift;
  const bool inside = c >= -1.0 && c <= 1.0 && weight.m > 0.0;
  if (inside) {
    breaks.push_back(c);
    if (!nearInteger(weight.p * weight.m)) {
      for (int j = 1; j <= kGradingLevels; ++j) {
        const double h = std::ldexp(1.0, -j);
        if (c - h > -1.0) breaks.push_back(c - h);
        if (c + h < 1.0) breaks.push_back(c + h);
      }
    }
  }
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end(), [](double u, double v) { return std::abs(u - v) < 1e-15; }),
               breaks.end());
  const auto rule = compositeGaussLegendre(breaks, nodesPerPanel);
  DiscreteMeasure mu;
  mu.nodes = rule.nodes;
  mu.weights.resize(rule.size());
  for (std::size_t i = 0; i < rule.size(); ++i) mu.weights[i] = rule.weights[i] * weight(rule.nodes[i]);
  return mu;
}

double KernelSpec::pstar(double x) const { return basis.evaluate(basisCoeffs, x); }

double KernelSpec::kernel(double x) const {
  const double v = pstar(x);
  if (p == 2.0) return v / (pstarNorm * pstarNorm);
  if (v == 0.0) return 0.0;
  return std::copysign(std::pow(std::abs(v) / pstarNorm, p - 1.0), v) / pstarNorm;
}

double kernelEval(const KernelSpec& spec, double x) { return spec.kernel(x); }

DiscreteMeasure kernelMeasure(const KernelSpec& spec) {
  return weightMeasure(spec.weight, nodesPerPanelFor(spec.weight, spec.m0));
}

KernelSpec minNormPolynomial(const WeightSpec& weight, int m0, double p, double tol) {
  weight.validate();
  if (weight.d != 1) throw InvalidArgument("minNormPolynomial: weight must be one-dimensional");
  if (m0 < 1) throw InvalidArgument("minNormPolynomial: m0 must be >= 1");
  if (!(p >= 1.0) || std::isinf(p)) throw InvalidArgument("minNormPolynomial: p must lie in [1, inf)");
  if (!(tol > 0.0)) throw InvalidArgument("minNormPolynomial: tol must be > 0");

  KernelSpec spec;
  spec.weight = weight;
  spec.m0 = m0;
  spec.p = p;

  const DiscreteMeasure mu = weightMeasure(weight, nodesPerPanelFor(weight, m0));
  spec.basis = lanczosBasis(mu, m0);
  const auto e0 = spec.basis.evaluateAll(0.0);
  const Eigen::VectorXd e = Eigen::Map<const Eigen::VectorXd>(e0.data(), m0 + 1);
  const Eigen::MatrixXd phi = basisMatrix(spec.basis, mu);
  const Eigen::Map<const Eigen::VectorXd> muW(mu.weights.data(), static_cast<Eigen::Index>(mu.size()));

  // Least squares start; exact for p = 2 since the basis is orthonormal.
  Eigen::VectorXd c = e / e.squaredNorm();
  {
    const Eigen::MatrixXd gram = phi.transpose() * muW.asDiagonal() * phi;
    spec.normalResidual = (gram * c - e / e.squaredNorm()).lpNorm<Eigen::Infinity>();
  }

  auto values = [&](const Eigen::VectorXd& coeffs) {
    const Eigen::VectorXd v = phi * coeffs;
    return std::vector<double>(v.data(), v.data() + v.size());
  };

  std::vector<double> pv = values(c);
  if (p != 2.0) {
    double objective = std::pow(pNorm(mu, pv, p), p);
    bool converged = false;
    for (int it = 1; it <= kIrlsMaxIterations; ++it) {
      Eigen::VectorXd nu(static_cast<Eigen::Index>(mu.size()));
      for (std::size_t i = 0; i < mu.size(); ++i)
        nu[static_cast<Eigen::Index>(i)] = mu.weights[i] * std::pow(std::max(std::abs(pv[i]), kIrlsFloor), p - 2.0);
      const Eigen::MatrixXd gram = phi.transpose() * nu.asDiagonal() * phi;
      const Eigen::VectorXd target = constrainedLeastSquares(gram, e);
      c = kIrlsDamping * c + (1.0 - kIrlsDamping) * target;
      pv = values(c);
      const double next = std::pow(pNorm(mu, pv, p), p);
      spec.iterations = it;
      const double change = std::abs(objective - next) / std::max(next, std::numeric_limits<double>::min());
      objective = next;
      if (change < tol) {
        converged = true;
        break;
      }
    }
    spec.basisCoeffs.assign(c.data(), c.data() + c.size());
    spec.pstarNorm = pNorm(mu, pv, p);
    if (!converged) {
      // Duality gap of the last iterate, for the error report.
      double gap = 0.0;
      for (int k = 0; k <= m0; ++k) {
        double s = 0.0;
        for (std::size_t i = 0; i < mu.size(); ++i) s += mu.weights[i] * spec.kernel(mu.nodes[i]) * phi(static_cast<Eigen::Index>(i), k);
        gap = std::max(gap, std::abs(s - e[k]));
      }
      throw AccuracyFailure("minNormPolynomial: IRLS did not converge", spec.pstarNorm, gap);
    }
  } else {
    spec.basisCoeffs.assign(c.data(), c.data() + c.size());
    spec.pstarNorm = pNorm(mu, pv, p);
  }

  std::vector<double> kv(mu.size());
  for (std::size_t i = 0; i < mu.size(); ++i) kv[i] = spec.kernel(mu.nodes[i]);
  const double pp = (p == 1.0) ? std::numeric_limits<double>::infinity() : p / (p - 1.0);
  spec.kernelNorm = pNorm(mu, kv, pp);
  double gap = 0.0;
  for (int k = 0; k <= m0; ++k) {
    double s = 0.0;
    for (std::size_t i = 0; i < mu.size(); ++i) s += mu.weights[i] * kv[i] * phi(static_cast<Eigen::Index>(i), k);
    gap = std::max(gap, std::abs(s - e[k]));
  }
  spec.dualityGap = gap;
  spec.pstarCoeffs = legendreCoefficients(spec);
  return spec;
}

NikolskiiReport nikolskiiReport(const WeightSpec& weight, std::span<const int> m0Range, double p) {
  weight.validate();
  if (m0Range.empty()) throw InvalidArgument("nikolskiiReport: empty degree range");
  const int floorDegree = std::max(1, static_cast<int>(std::ceil(weight.m - 1e-12)));
  for (int m0 : m0Range)
    if (m0 < floorDegree) throw InvalidArgument("nikolskiiReport: m0 must be >= max(1, ceil(m))");

  NikolskiiReport report;
  const double alphaPow = (weight.m == 0.0) ? 1.0 : std::pow(std::abs(weight.alphaShift), weight.m);
  if (alphaPow == 0.0) report.note = "alpha = 0 with m > 0: the |alpha|^{-m} bound is vacuous";
  for (int m0 : m0Range) {
    const KernelSpec spec = minNormPolynomial(weight, m0, p);
    NikolskiiRow row;
    row.m0 = m0;
    row.kernelNorm = spec.kernelNorm;
    row.geometricC = std::pow(spec.kernelNorm, 1.0 / (m0 + weight.m));
    const double poly = 1.0 + std::pow(m0, 1.0 / p) + std::pow(weight.m, 1.0 / p);
    row.polynomialC = spec.kernelNorm * alphaPow / poly;
    report.geometricC = std::max(report.geometricC, row.geometricC);
    report.polynomialC = std::max(report.polynomialC, row.polynomialC);
    report.rows.push_back(row);
  }
  return report;
}

}  // namespace gup
