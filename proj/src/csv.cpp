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

#include "nfbeam/csv.hpp"

#include <array>
#include <charconv>

#include "nfbeam/error.hpp"

namespace nfbeam {

std::string format_number(double value) {
  std::array<char, 32> buffer{};
  const auto result = std::to_chars(buffer.data(), buffer.data() + buffer.size(), value);
  if (result.ec != std::errc())
    throw Error(ErrorKind::numeric, "cannot format number");
  return std::string(buffer.data(), result.ptr);
}

std::string format_number(long long value) { return std::to_string(value); }

std::string format_bool(bool value) { return value ? "true" : "false"; }

void CsvWriter::metadata(std::string_view key, std::string_view value) {
  out_ << "# " << key << ": " << value << '\n';
}

void CsvWriter::header(std::initializer_list<std::string_view> columns) {
  header(std::vector<std::string>(columns.begin(), columns.end()));
}

void CsvWriter::header(const std::vector<std::string>& columns) {
  columns_ = columns.size();
  row(columns);
}

void CsvWriter::row(const std::vector<std::string>& cells) {
  if (columns_ != 0 && cells.size() != columns_)
    throw Error(ErrorKind::io, "CSV row width does not match header");
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out_ << ',';
    out_ << cells[i];
  }
  out_ << '\n';
  if (!out_) throw Error(ErrorKind::io, "failed writing CSV output");
}

std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    fields.emplace_back(line.substr(start, comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

}  // namespace nfbeam
