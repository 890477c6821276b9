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

#include <stdexcept>
#include <string>

namespace gup {

/// Thrown when an argument violates an operation's precondition.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown when a numerical procedure cannot reach its requested accuracy.
/// Carries the best available estimate and an error (or gap) estimate.
class AccuracyFailure : public std::runtime_error {
 public:
  AccuracyFailure(const std::string& what, double estimate, double errorEstimate)
      : std::runtime_error(what), estimate_(estimate), errorEstimate_(errorEstimate) {}

  double estimate() const noexcept { return estimate_; }
  double errorEstimate() const noexcept { return errorEstimate_; }

 private:
  double estimate_;
  double errorEstimate_;
};

}  // namespace gup
