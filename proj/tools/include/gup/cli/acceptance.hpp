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

#include <iosfwd>
#include <string>
#include <vector>

namespace gup::acceptance {

struct Result {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;  // measured values against the pinned threshold
};

inline constexpr int kCriteria = 12;

/// Runs one criterion (1..12). Criteria 1-3 and 12 share the sweep computed on first use.
class Suite {
 public:
  Suite();
  ~Suite();
  Result run(int id);
  std::vector<Result> runAll(std::ostream* progress = nullptr);

 private:
  struct State;
  State* state_;
};

/// "PASS  3 name: detail" style line.
std::string formatLine(const Result& r);

}  // namespace gup::acceptance
