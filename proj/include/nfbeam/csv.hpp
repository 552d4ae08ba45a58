// SPDX-License-Identifier: Apache-2.0
//
// Copyright 2026 The nfbeam Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <initializer_list>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace nfbeam {

/// Shortest decimal that round-trips to the same double.
std::string format_number(double value);
std::string format_number(long long value);
inline std::string format_number(int value) { return format_number(static_cast<long long>(value)); }
std::string format_bool(bool value);

/// Comma-separated output with '#'-prefixed metadata lines and a header row.
class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}

  void metadata(std::string_view key, std::string_view value);
  void header(std::initializer_list<std::string_view> columns);
  void header(const std::vector<std::string>& columns);
  void row(const std::vector<std::string>& cells);

 private:
  std::ostream& out_;
  std::size_t columns_ = 0;
};

/// Splits one CSV line on commas. Fields never contain commas here.
std::vector<std::string> split_csv_line(std::string_view line);

}  // namespace nfbeam
