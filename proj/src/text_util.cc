// Copyright 2026 The Chargeplan Authors
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

#include "text_util.h"

#include <charconv>
#include <fstream>
#include <sstream>

#include "absl/strings/ascii.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"

namespace chargeplan::internal {

std::string FormatDouble(double value) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, end);
}

absl::StatusOr<int> CsvTable::Column(absl::string_view name) const {
  for (size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return static_cast<int>(i);
  }
  return absl::InvalidArgumentError(
      absl::StrCat(path, ": missing column '", name, "'"));
}

absl::StatusOr<CsvTable> ReadCsv(const std::string& path) {
  std::ifstream in(path);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot open ", path));
  CsvTable table;
  table.path = path;
  std::string line;
  int line_number = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (absl::StripAsciiWhitespace(line).empty()) continue;
    std::vector<std::string> fields;
    for (absl::string_view f : absl::StrSplit(line, ',')) {
      fields.emplace_back(absl::StripAsciiWhitespace(f));
    }
    if (!have_header) {
      // Tolerate a UTF-8 byte order mark.
      if (fields[0].rfind("\xEF\xBB\xBF", 0) == 0) fields[0].erase(0, 3);
      table.header = std::move(fields);
      have_header = true;
      continue;
    }
    if (fields.size() != table.header.size()) {
      return absl::InvalidArgumentError(absl::StrCat(
          path, ":", line_number, ": expected ", table.header.size(),
          " fields, got ", fields.size()));
    }
    table.rows.push_back({line_number, std::move(fields)});
  }
  if (!have_header) {
    return absl::InvalidArgumentError(absl::StrCat(path, ": missing header"));
  }
  return table;
}

absl::StatusOr<double> ParseDouble(const CsvTable& table, const CsvRow& row,
                                   int column) {
  double value = 0.0;
  if (!absl::SimpleAtod(row.fields[column], &value)) {
    return absl::InvalidArgumentError(
        absl::StrCat(table.path, ":", row.line, ": '", row.fields[column],
                     "' is not a number (column ", table.header[column], ")"));
  }
  return value;
}

absl::StatusOr<int64_t> ParseInt(const CsvTable& table, const CsvRow& row,
                                 int column) {
  int64_t value = 0;
  if (!absl::SimpleAtoi(row.fields[column], &value)) {
    return absl::InvalidArgumentError(absl::StrCat(
        table.path, ":", row.line, ": '", row.fields[column],
        "' is not an integer (column ", table.header[column], ")"));
  }
  return value;
}

absl::Status WriteTextFile(const std::string& path, absl::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) return absl::PermissionDeniedError(absl::StrCat("cannot write ", path));
  out << content;
  out.close();
  if (!out) return absl::DataLossError(absl::StrCat("failed writing ", path));
  return absl::OkStatus();
}

}  // namespace chargeplan::internal
