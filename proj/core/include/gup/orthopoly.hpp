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

#include <span>
#include <vector>

namespace gup {

/// A positive discrete measure sum_i w_i delta_{x_i}.
struct DiscreteMeasure {
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const { return nodes.size(); }
  double mass() const;
};

/// Orthonormal polynomials p_0, ..., p_n of a measure, stored as the three-term recurrence
///   b_{k+1} p_{k+1}(x) = (x - a_k) p_k(x) - b_k p_{k-1}(x),   p_0 = 1 / sqrt(mass).
struct OrthonormalBasis {
  std::vector<double> a;  // a_0 .. a_{n-1}
  std::vector<double> b;  // b_0 = 0, b_1 .. b_n
  double p0 = 0.0;

  int degree() const { return static_cast<int>(b.size()) - 1; }

  /// p_0(x), ..., p_n(x).
  std::vector<double> evaluateAll(double x) const;

  /// sum_k c_k p_k(x) by Clenshaw's recurrence.
  double evaluate(std::span<const double> coeffs, double x) const;
};

/// Recurrence coefficients by Lanczos iteration with full reorthogonalization, applied to the
/// diagonal node matrix with starting vector sqrt(w). Requires more nodes than the degree.
OrthonormalBasis lanczosBasis(const DiscreteMeasure& measure, int degree);

}  // namespace gup
