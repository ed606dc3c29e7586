// Copyright 2026 The cibnet Authors
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

#ifndef CIBNET_CSV_H_
#define CIBNET_CSV_H_

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cibnet::csv {

// Minimal RFC 4180 reader: quoted fields, doubled quotes, CRLF tolerated.
// Returns false at end of input.
bool ReadRow(std::istream& in, std::vector<std::string>& fields);

std::string Escape(std::string_view field);

// Shortest round-trip decimal form; empty for nullopt.
std::string FormatNumber(double value);
std::string FormatNumber(std::optional<double> value);

std::optional<double> ParseNumber(std::string_view text);

}  // namespace cibnet::csv

#endif  // CIBNET_CSV_H_
