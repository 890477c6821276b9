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


#include "gup/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

#include <Eigen/Eigenvalues>
#include <boost/multiprecision/float128.hpp>

#include "gup/dualbound.hpp"
#include "gup/error.hpp"
#include "gup/extremizer.hpp"

namespace gup {

namespace {

constexpr double kPi = std::numbers::pi;
using Real = boost::multiprecision::float128;
using Column = std::vector<Real>;

const Real& realPi() {
  static const Real pi = acos(Real(-1));
  return pi;
}

struct HermiteRule {
  std::vector<Real> nodes;    // x_i
  std::vector<Real> weights;  // int F ~ sum weights_i F(x_i) for F = poly * exp(-beta x^2)
};

// Orthonormal Hermite polynomials for exp(-t^2): p_n(t), p_{n-1}(t) and sum_{k<n} p_k(t)^2.
void hermitePolys(int n, const Real& t, Real& pn, Real& pnm1, Real& sumSq) {
  Real prev = 0;
  Real cur = 1 / pow(realPi(), Real(0.25));
  sumSq = 0;
  for (int k = 0; k < n; ++k) {
    sumSq += cur * cur;
    const Real next = sqrt(Real(2) / (k + 1)) * t * cur - sqrt(Real(k) / (k + 1)) * prev;
    prev = cur;
    cur = next;
  }
  pn = cur;
  pnm1 = prev;
}

// Gauss-Hermite rule for exp(-beta x^2): nodes from the Jacobi matrix, polished by Newton steps
// in working precision, weights from the Christoffel function.
HermiteRule hermiteRule(int n, double beta) {
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd sub(std::max(0, n - 1));
  for (int k = 1; k < n; ++k) sub[k - 1] = std::sqrt(0.5 * k);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw AccuracyFailure("hermiteRule: eigenvalue solver failed", 0.0, 0.0);
  HermiteRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const Real sqrtBeta = sqrt(Real(beta));
  for (int i = 0; i < n; ++i) {
    Real t = solver.eigenvalues()[i];
    Real pn, pnm1, sumSq;
    for (int it = 0; it < 3; ++it) {
      hermitePolys(n, t, pn, pnm1, sumSq);
      t -= pn / (sqrt(Real(2 * n)) * pnm1);
    }
    hermitePolys(n, t, pn, pnm1, sumSq);
    rule.nodes[i] = t / sqrtBeta;
    rule.weights[i] = exp(t * t) / (sumSq * sqrtBeta);
  }
  return rule;
}

// h_0(x)..h_nMax(x) times exp(pi boost x^2).
std::vector<Real> boostedHermite(int nMax, const Real& x, double boost) {
  std::vector<Real> out(nMax + 1);
  const Real tau = sqrt(2 * realPi()) * x;
  Real prev = 0;
  Real cur = pow(Real(2), Real(0.25)) * exp(-realPi() * (1 - Real(boost)) * x * x);
  out[0] = cur;
  for (int n = 0; n < nMax; ++n) {
    const Real next = sqrt(Real(2) / (n + 1)) * tau * cur - sqrt(Real(n) / (n + 1)) * prev;
    prev = cur;
    cur = next;
    out[n + 1] = cur;
  }
  return out;
}

// Householder QR of the m x b matrix with the given columns; returns R by columns (R[k][j], j <= k).
std::vector<Column> householderR(std::vector<Column> cols) {
  const int b = static_cast<int>(cols.size());
  const int m = b ? static_cast<int>(cols[0].size()) : 0;
  std::vector<Column> R(b, Column(b, Real(0)));
  Column v(m);
  for (int j = 0; j < b; ++j) {
    Real norm = 0;
    for (int i = j; i < m; ++i) norm += cols[j][i] * cols[j][i];
    norm = sqrt(norm);
    const Real diag = cols[j][j] > 0 ? Real(-norm) : norm;
    for (int i = j; i < m; ++i) v[i] = cols[j][i];
    v[j] -= diag;
    Real vv = 0;
    for (int i = j; i < m; ++i) vv += v[i] * v[i];
    for (int k = j; k < b; ++k) {
      if (vv > 0) {
        Real dot = 0;
        for (int i = j; i < m; ++i) dot += v[i] * cols[k][i];
        dot = 2 * dot / vv;
        for (int i = j; i < m; ++i) cols[k][i] -= dot * v[i];
      }
      R[k][j] = cols[k][j];
    }
  }
  return R;
}

}  // namespace

struct GramOracle::Impl {
  std::vector<Column> U;  // U[n][i] = h_n(x_i) exp(pi alpha x_i^2) sqrt(w_i)
  Column diagA;
  std::vector<int> index[4];
  Column scale[4];
  std::vector<Column> R[4];  // equilibrated G block = R^T R
};

GramOracle::GramOracle(double alpha, int nMax) : alpha_(alpha), nMax_(nMax), impl_(std::make_unique<Impl>()) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidArgument("buildGram: alpha must lie in (0, 1)");
  if (nMax < 0) throw InvalidArgument("buildGram: nMax must be >= 0");
  // u_j u_k with u_n = h_n exp(pi alpha x^2) is a polynomial of degree j + k times exp(-beta x^2).
  const double beta = 2.0 * kPi * (1.0 - alpha);
  const HermiteRule rule = hermiteRule(nMax + 8, beta);
  const int m = static_cast<int>(rule.nodes.size());
  Impl& im = *impl_;
  im.U.assign(nMax + 1, Column(m));
  for (int i = 0; i < m; ++i) {
    const auto u = boostedHermite(nMax, rule.nodes[i], alpha);
    const Real sw = sqrt(rule.weights[i]);
    for (int n = 0; n <= nMax; ++n) im.U[n][i] = u[n] * sw;
  }
  im.diagA.assign(nMax + 1, Real(0));
  for (int n = 0; n <= nMax; ++n)
    for (int i = 0; i < m; ++i) im.diagA[n] += im.U[n][i] * im.U[n][i];

  double worst = 1.0;
  for (int r = 0; r < 4; ++r) {
    for (int n = r; n <= nMax; n += 4) im.index[r].push_back(n);
    const int b = static_cast<int>(im.index[r].size());
    if (b == 0) continue;
    im.scale[r].resize(b);
    std::vector<Column> W(b, Column(m));
    for (int j = 0; j < b; ++j) {
      const int n = im.index[r][j];
      im.scale[r][j] = 1 / sqrt(2 * im.diagA[n]);
      const Real f = sqrt(Real(2)) * im.scale[r][j];
      for (int i = 0; i < m; ++i) W[j][i] = f * im.U[n][i];
    }
    im.R[r] = householderR(W);
    auto ratio = [&] {
      Real hi = 0, lo = std::numeric_limits<double>::max();
      for (int j = 0; j < b; ++j) {
        hi = std::max(hi, Real(abs(im.R[r][j][j])));
        lo = std::min(lo, Real(abs(im.R[r][j][j])));
      }
      return lo > 0 ? static_cast<double>(hi / lo) : std::numeric_limits<double>::infinity();
    };
    const double eps = std::numeric_limits<Real>::epsilon().convert_to<double>();
    double q = ratio();
    if (!(q * eps < 1e-3)) {
      // Numerically singular block: regularize G by jitter * I.
      jitter_ = 1e-14;
      for (int j = 0; j < b; ++j) {
        W[j].resize(m + b, Real(0));
        W[j][m + j] = sqrt(Real(jitter_));
      }
      im.R[r] = householderR(W);
      q = ratio();
      if (!std::isfinite(q)) throw AccuracyFailure("buildGram: Gram block is singular", 0.0, 0.0);
    }
    worst = std::max(worst, q * q);
    if (!(worst * eps < 1e-2)) break;
  }
  condition_ = worst;
}

GramOracle::~GramOracle() = default;
GramOracle::GramOracle(GramOracle&&) noexcept = default;
GramOracle& GramOracle::operator=(GramOracle&&) noexcept = default;

bool GramOracle::withinPrecision() const {
  return condition_ * std::numeric_limits<Real>::epsilon().convert_to<double>() < 1e-2;
}

Eigen::MatrixXd GramOracle::A() const {
  const Impl& im = *impl_;
  const int m = im.U.empty() ? 0 : static_cast<int>(im.U[0].size());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(nMax_ + 1, nMax_ + 1);
  for (int j = 0; j <= nMax_; ++j)
    for (int k = j; k <= nMax_; k += 2) {
      Real s = 0;
      for (int i = 0; i < m; ++i) s += im.U[j][i] * im.U[k][i];
      a(j, k) = a(k, j) = s.convert_to<double>();
    }
  return a;
}

Eigen::MatrixXd GramOracle::G() const {
  const Eigen::MatrixXd a = A();
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(nMax_ + 1, nMax_ + 1);
  for (int j = 0; j <= nMax_; ++j)
    for (int k = 0; k <= nMax_; ++k)
      if ((k - j) % 4 == 0) g(j, k) = 2.0 * a(j, k);
  return g;
}

double GramOracle::sharpConstant(double y) const {
  if (!withinPrecision())
    throw AccuracyFailure("oracle: Gram conditioning exceeds the working precision", 0.0, condition_);
  const Impl& im = *impl_;
  const auto h = boostedHermite(nMax_, Real(y), 0.0);
  Real s = 0;
  for (int r = 0; r < 4; ++r) {
    const int b = static_cast<int>(im.index[r].size());
    // v^T (R^T R)^{-1} v = |R^{-T} v|^2 by forward substitution.
    Column z(b);
    for (int j = 0; j < b; ++j) {
      Real t = h[im.index[r][j]] * im.scale[r][j];
      for (int k = 0; k < j; ++k) t -= im.R[r][j][k] * z[k];
      z[j] = t / im.R[r][j][j];
      s += z[j] * z[j];
    }
  }
  return sqrt(s).convert_to<double>();
}

double GramOracle::hermiteWitness(int n, double y) const {
  if (n < 0 || n > nMax_) throw InvalidArgument("hermiteWitness: index outside the truncation");
  const auto h = boostedHermite(n, Real(y), 0.0);
  return (abs(h[n]) / sqrt(2 * impl_->diagA[n])).convert_to<double>();
}

GramOracle buildGram(double alpha, int nMax) { return GramOracle(alpha, nMax); }

OracleSolver::OracleSolver(double alpha, int nStart, double tol) : alpha_(alpha), nStart_(nStart), tol_(tol) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidArgument("oracle: alpha must lie in (0, 1)");
  if (nStart < 0 || nStart > kOracleMaxDegree) throw InvalidArgument("oracle: nMax must lie in [0, 1024]");
  if (!(tol > 0.0)) throw InvalidArgument("oracle: tol must be > 0");
}

const GramOracle& OracleSolver::gram(int nMax) {
  for (const auto& g : cache_)
    if (g->nMax() == nMax) return *g;
  cache_.push_back(std::make_unique<GramOracle>(alpha_, nMax));
  return *cache_.back();
}

OracleResult OracleSolver::evaluate(double y) {
  if (!std::isfinite(y)) throw InvalidArgument("oracle: y must be finite");
  OracleResult out;
  int n = nStart_;
  out.nMax = n;
  out.value = gram(n).sharpConstant(y);
  out.nHistory.push_back(n);
  out.valueHistory.push_back(out.value);
  while (true) {
    const int next = n == 0 ? 1 : 2 * n;
    if (next > kOracleMaxDegree) return out;
    const GramOracle& g = gram(next);
    // Past the working precision the truncation is no longer resolved; stop at the last good one.
    if (!g.withinPrecision()) return out;
    const double cur = g.sharpConstant(y);
    out.nHistory.push_back(next);
    out.valueHistory.push_back(cur);
    out.previous = out.value;
    out.value = cur;
    out.nMax = n = next;
    if (std::abs(cur - out.previous) <= tol_ * std::abs(cur)) {
      out.converged = true;
      return out;
    }
  }
}

OracleResult OracleSolver::operator()(double y) {
  OracleResult out = evaluate(y);
  if (!out.converged) {
    char msg[200];
    std::snprintf(msg, sizeof msg, "oracle: no convergence up to nMax = %d (last values %.17g, %.17g)", out.nMax,
                  out.previous, out.value);
    throw AccuracyFailure(msg, out.value, std::abs(out.value - out.previous));
  }
  return out;
}

OracleResult oracleSharpConstant(double y, double alpha, int nStart, double tol) {
  OracleSolver solver(alpha, nStart, tol);
  return solver(y);
}

std::vector<SweepRow> asymptoticSweep(double alpha, const std::vector<double>& yGrid, double p, double q, int d,
                                      const SweepOptions& options) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidArgument("sweep: alpha must lie in (0, 1)");
  if (d < 1) throw InvalidArgument("sweep: d must be >= 1");
  const bool withOracle = p == 2.0 && q == 2.0 && d == 1;
  const double c = options.c > 0.0 ? options.c : kDefaultExtremizerC;
  const double lambda = options.lambda > 0.0 ? options.lambda : calibrateLambda(alpha, p, q, c);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  OracleSolver solver(alpha, options.nStart, options.tol);
  std::vector<SweepRow> rows;
  for (double y : yGrid) {
    SweepRow row;
    row.y = y;
    row.asymptote = std::pow(1.0 + std::abs(y), d / p) * std::exp(-kPi * alpha * y * y);
    row.lower = row.oracle = row.upper = nan;
    auto attempt = [&](auto&& body) {
      try {
        body();
      } catch (const std::exception& e) {
        row.ok = false;
        if (!row.error.empty()) row.error += "; ";
        row.error += e.what();
      }
    };
    if (withOracle)
      attempt([&] {
        const OracleResult r = solver.evaluate(y);
        row.oracle = r.value;
        row.oracleNMax = r.nMax;
        row.oracleConverged = r.converged;
      });
    attempt([&] { row.upper = optimizedUpperBoundGaussian(std::abs(y), alpha, p, q, d, options.ratio).bound; });
    attempt([&] {
      if (!(lambda > 0.0)) throw InvalidArgument("sweep: no feasible lambda for the lower bound");
      row.lower = d == 1 ? extremizerLowerBound(buildExtremizer(std::abs(y), alpha, lambda, c), p, q)
                         : tensorLowerBound(d, std::abs(y), alpha, lambda, c, p, q);
    });
    row.ratioLower = row.lower / row.asymptote;
    row.ratioOracle = row.oracle / row.asymptote;
    row.ratioUpper = row.upper / row.asymptote;
    rows.push_back(row);
  }
  return rows;
}

bool bracketingHolds(const SweepRow& row) {
  const double r2 = std::sqrt(2.0);
  if (!row.ok) return false;
  if (std::isnan(row.oracle)) return row.lower <= row.upper;
  return row.lower <= r2 * row.oracle && row.oracle <= r2 * row.upper;
}

}  // namespace gup
