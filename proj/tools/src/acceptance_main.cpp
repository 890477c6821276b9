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


// Prints one PASS/FAIL line per acceptance criterion; exits nonzero on any failure.

#include <cstdlib>
#include <iostream>
#include <string>

#include "gup/cli/acceptance.hpp"

int main(int argc, char** argv) {
  gup::acceptance::Suite suite;
  if (argc > 1) {
    const auto r = suite.run(std::atoi(argv[1]));
    std::cout << gup::acceptance::formatLine(r) << std::endl;
    return r.passed ? 0 : 1;
  }
  bool all = true;
  for (const auto& r : suite.runAll(&std::cout)) all = all && r.passed;
  return all ? 0 : 1;
}
