// Copyright 2026 The qsteer Authors
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

#include "qsteer/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

namespace qsteer {

namespace {

std::ofstream open_for_write(const std::string& path) {
  std::ofstream out(path, std::ios::binary);  // keep LF endings everywhere
  if (!out) {
    throw InvalidInputError("cannot open '" + path + "' for writing");
  }
  return out;
}

double parse_field(const std::string& field, std::size_t line) {
  if (field == "nan") return std::numeric_limits<double>::quiet_NaN();
  try {
    std::size_t consumed = 0;
    const double v = std::stod(field, &consumed);
    if (consumed != field.size()) throw std::invalid_argument(field);
    return v;
  } catch (const std::exception&) {
    throw InvalidInputError("malformed CSV number '" + field + "' on line " +
                            std::to_string(line));
  }
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_error_map_csv(const ErrorMap& map, std::ostream& out) {
  out << "theta1,theta2,perr\n";
  for (int i1 = 0; i1 < map.resolution[0]; ++i1) {
    for (int i2 = 0; i2 < map.resolution[1]; ++i2) {
      out << format_double(map.axis_value(0, i1)) << ','
          << format_double(map.axis_value(1, i2)) << ','
          << format_double(map.value_at(i1, i2)) << '\n';
    }
  }
}

void write_error_map_csv(const ErrorMap& map, const std::string& path) {
  auto out = open_for_write(path);
  write_error_map_csv(map, out);
}

std::vector<ErrorMapCsvRow> read_error_map_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "theta1,theta2,perr") {
    throw InvalidInputError("bad error-map CSV header");
  }
  std::vector<ErrorMapCsvRow> rows;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string f1, f2, f3;
    if (!std::getline(ss, f1, ',') || !std::getline(ss, f2, ',') ||
        !std::getline(ss, f3)) {
      throw InvalidInputError("malformed CSV row on line " +
                              std::to_string(lineno));
    }
    rows.push_back(ErrorMapCsvRow{parse_field(f1, lineno),
                                  parse_field(f2, lineno),
                                  parse_field(f3, lineno)});
  }
  return rows;
}

void write_comparison_csv(const ErrorMap& numeric, const ErrorMap& analytic,
                          std::ostream& out) {
  if (numeric.resolution != analytic.resolution) {
    throw InvalidInputError("comparison maps must share resolution");
  }
  out << "theta1,theta2,numeric_perr,analytic_perr,abs_diff\n";
  for (int i1 = 0; i1 < numeric.resolution[0]; ++i1) {
    for (int i2 = 0; i2 < numeric.resolution[1]; ++i2) {
      const double num = numeric.value_at(i1, i2);
      const double ana = analytic.value_at(i1, i2);
      out << format_double(numeric.axis_value(0, i1)) << ','
          << format_double(numeric.axis_value(1, i2)) << ','
          << format_double(num) << ',' << format_double(ana) << ','
          << format_double(std::abs(num - ana)) << '\n';
    }
  }
}

void write_comparison_csv(const ErrorMap& numeric, const ErrorMap& analytic,
                          const std::string& path) {
  auto out = open_for_write(path);
  write_comparison_csv(numeric, analytic, out);
}

}  // namespace qsteer
