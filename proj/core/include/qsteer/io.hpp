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

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "qsteer/robustness.hpp"

namespace qsteer {

/// 17 significant digits (round-trip exact for double); "nan" for NaN.
std::string format_double(double v);

/// Schema: header `theta1,theta2,perr`, rows in grid order (axis 1 outer),
/// LF line endings, `nan` literal for failed cells.
void write_error_map_csv(const ErrorMap& map, std::ostream& out);
void write_error_map_csv(const ErrorMap& map, const std::string& path);

struct ErrorMapCsvRow {
  double theta1, theta2, perr;
};

/// Parses a CSV produced by write_error_map_csv. Roundtrips values
/// bit-exactly.
std::vector<ErrorMapCsvRow> read_error_map_csv(std::istream& in);

/// Header `theta1,theta2,numeric_perr,analytic_perr,abs_diff`; the two
/// maps must share box and resolution.
void write_comparison_csv(const ErrorMap& numeric, const ErrorMap& analytic,
                          std::ostream& out);
void write_comparison_csv(const ErrorMap& numeric, const ErrorMap& analytic,
                          const std::string& path);

}  // namespace qsteer
