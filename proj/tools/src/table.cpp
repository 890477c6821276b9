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


#include "gup/cli/table.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ostream>
#include <stdexcept>

#include "json.hpp"

#include "gup/error.hpp"

namespace gup::cli {

namespace {

std::string csvField(const Value& v) {
  if (const auto* d = std::get_if<double>(&v)) return formatReal(*d);
  if (const auto* i = std::get_if<long long>(&v)) return std::to_string(*i);
  if (const auto* b = std::get_if<bool>(&v)) return *b ? "true" : "false";
  const std::string& s = std::get<std::string>(v);
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char ch : s) {
    if (ch == '"') quoted += '"';
    quoted += ch;
  }
  return quoted + "\"";
}

nlohmann::ordered_json jsonValue(const Value& v) {
  if (const auto* d = std::get_if<double>(&v)) {
    if (!std::isfinite(*d)) return nullptr;
    return *d;
  }
  if (const auto* i = std::get_if<long long>(&v)) return *i;
  if (const auto* b = std::get_if<bool>(&v)) return *b;
  return std::get<std::string>(v);
}

double parseReal(const std::string& text) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw InvalidArgument("not a number: '" + text + "'");
  }
  if (used != text.size()) throw InvalidArgument("not a number: '" + text + "'");
  return v;
}

}  // namespace

std::string formatReal(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

Format parseFormat(const std::string& name) {
  if (name == "csv") return Format::Csv;
  if (name == "json") return Format::Json;
  throw InvalidArgument("unknown format '" + name + "' (expected csv or json)");
}

void writeCsv(const Table& table, std::ostream& out) {
  for (const auto& [key, value] : table.metadata) out << "# " << key << '=' << csvField(value) << '\n';
  for (std::size_t j = 0; j < table.columns.size(); ++j) out << (j ? "," : "") << table.columns[j];
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t j = 0; j < row.size(); ++j) out << (j ? "," : "") << csvField(row[j]);
    out << '\n';
  }
}

void writeJson(const Table& table, std::ostream& out) {
  nlohmann::ordered_json doc;
  doc["metadata"] = nlohmann::ordered_json::object();
  for (const auto& [key, value] : table.metadata) doc["metadata"][key] = jsonValue(value);
  doc["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    nlohmann::ordered_json r = nlohmann::ordered_json::object();
    for (std::size_t j = 0; j < row.size() && j < table.columns.size(); ++j) r[table.columns[j]] = jsonValue(row[j]);
    doc["rows"].push_back(std::move(r));
  }
  out << doc.dump(2) << '\n';
}

void write(const Table& table, Format format, std::ostream& out) {
  if (format == Format::Csv)
    writeCsv(table, out);
  else
    writeJson(table, out);
}

std::vector<double> parseGrid(const std::string& text) {
  const auto first = text.find(':');
  if (first == std::string::npos) return {parseReal(text)};
  const auto second = text.find(':', first + 1);
  if (second == std::string::npos || text.find(':', second + 1) != std::string::npos)
    throw InvalidArgument("grid must be 'a:b:step', got '" + text + "'");
  const double a = parseReal(text.substr(0, first));
  const double b = parseReal(text.substr(first + 1, second - first - 1));
  const double step = parseReal(text.substr(second + 1));
  if (!(step > 0.0) || !std::isfinite(a) || !std::isfinite(b) || b < a)
    throw InvalidArgument("grid needs a <= b and step > 0, got '" + text + "'");
  const double count = (b - a) / step;
  if (count > 1e6) throw InvalidArgument("grid has too many points: '" + text + "'");
  std::vector<double> out;
  for (long k = 0;; ++k) {
    const double v = a + static_cast<double>(k) * step;
    if (v > b + 1e-12) break;
    out.push_back(std::min(v, b));
  }
  return out;
}

}  // namespace gup::cli
