// core/include/mvox/csv.hpp

// Copyright 2026 mvox authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef MVOX_CSV_HPP
#define MVOX_CSV_HPP

#include <string>
#include <vector>

namespace mvox {

// Comma-split without quoting; the formats in this toolkit never need
// embedded commas. Trailing \r from CRLF input is stripped.
std::vector<std::string> split_csv_line(const std::string& line);

// Full-precision round-trippable formatting for numeric CSV output.
std::string format_double(double v);

double parse_double(const std::string& s, const std::string& context);
long long parse_int(const std::string& s, const std::string& context);

}  // namespace mvox

#endif  // MVOX_CSV_HPP
