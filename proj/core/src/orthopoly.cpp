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


#include "gup/orthopoly.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numeric>

#include "gup/error.hpp"

namespace gup {

double DiscreteMeasure::mass() const { return std::accumulate(weights.begin(), weights.end(), 0.0); }

std::vector<double> OrthonormalBasis::evaluateAll(double x) const {
  const int n = degree();
  std::vector<double> p(n + 1);
  p[0] = p0;
  if (n >= 1) p[1] = (x - a[0]) * p[0] / b[1];
  for (int k = 1; k < n; ++k) p[k + 1] = ((x - a[k]) * p[k] - b[k] * p[k - 1]) / b[k + 1];
  return p;
}

double OrthonormalBasis::evaluate(std::span<const double> coeffs, double x) const {
  const int n = static_cast<int>(coeffs.size()) - 1;
  if (n < 0) return 0.0;
  if (n > degree()) throw InvalidArgument("OrthonormalBasis::evaluate: too many coefficients");
  // Clenshaw: u_k = c_k + (x - a_k)/b_{k+1} u_{k+1} - b_{k+1}/b_{k+2} u_{k+2}.
  double u1 = 0.0;
  double u2 = 0.0;
  for (int k = n; k >= 0; --k) {
    const double alpha = (k < n) ? (x - a[k]) / b[k + 1] : 0.0;
    const double beta = (k + 1 < n) ? b[k + 1] / b[k + 2] : 0.0;
    const double u = coeffs[k] + alpha * u1 - beta * u2;
    u2 = u1;
    u1 = u;
  }
  return u1 * p0;
}

OrthonormalBasis lanczosBasis(const DiscreteMeasure& measure, int degree) {
  const auto n = static_cast<Eigen::Index>(measure.size());
  if (degree < 0) throw InvalidArgument("lanczosBasis: degree must be >= 0");
  if (measure.weights.size() != measure.nodes.size()) throw InvalidArgument("lanczosBasis: size mismatch");
  if (n <= degree) throw InvalidArgument("lanczosBasis: measure has too few nodes for the degree");

  const Eigen::Map<const Eigen::VectorXd> x(measure.nodes.data(), n);
  Eigen::VectorXd start(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!(measure.weights[i] >= 0.0)) throw InvalidArgument("lanczosBasis: negative weight");
    start[i] = std::sqrt(measure.weights[i]);
  }
  const double mass = start.squaredNorm();
  if (!(mass > 0.0)) throw InvalidArgument("lanczosBasis: zero measure");

  OrthonormalBasis basis;
  basis.p0 = 1.0 / std::sqrt(mass);
  basis.a.resize(degree);
  basis.b.assign(degree + 1, 0.0);

  Eigen::MatrixXd q(n, degree + 1);
  q.col(0) = start / std::sqrt(mass);
  for (int k = 0; k < degree; ++k) {
    Eigen::VectorXd z = x.cwiseProduct(q.col(k));
    basis.a[k] = q.col(k).dot(z);
    z -= basis.a[k] * q.col(k);
    if (k > 0) z -= basis.b[k] * q.col(k - 1);
    for (int pass = 0; pass < 2; ++pass) {
      const auto prior = q.leftCols(k + 1);
      z -= prior * (prior.transpose() * z);
    }
    const double beta = z.norm();
    if (!(beta > 0.0)) throw AccuracyFailure("lanczosBasis: breakdown", k, 0.0);
    basis.b[k + 1] = beta;
    q.col(k + 1) = z / beta;
  }
  return basis;
}

}  // namespace gup
