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
#include <utility>
#include <variant>
#include <vector>

namespace gup::cli {

using Value = std::variant<double, long long, bool, std::string>;

/// A metadata block plus named columns; every command emits one.
struct Table {
  std::vector<std::pair<std::string, Value>> metadata;
  std::vector<std::string> columns;
  std::vector<std::vector<Value>> rows;
};

enum class Format { Csv, Json };

Format parseFormat(const std::string& name);

/// Reals as %.17g; CSV metadata as "# key=value" lines ahead of the header; LF endings.
void writeCsv(const Table& table, std::ostream& out);

/// {"metadata": {...}, "rows": [{column: value, ...}, ...]}; non-finite reals become null.
void writeJson(const Table& table, std::ostream& out);

void write(const Table& table, Format format, std::ostream& out);

/// "v" or "a:b:step", endpoints inclusive within 1e-12.
std::vector<double> parseGrid(const std::string& text);

std::string formatReal(double x);

}  // namespace gup::cli
