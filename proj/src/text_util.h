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

// Private CSV and number-formatting helpers.

#ifndef CHARGEPLAN_SRC_TEXT_UTIL_H_
#define CHARGEPLAN_SRC_TEXT_UTIL_H_

#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"

namespace chargeplan::internal {

// Shortest decimal text that parses back to exactly `value`.
std::string FormatDouble(double value);

struct CsvRow {
  int line = 0;  // 1-based line number in the file
  std::vector<std::string> fields;
};

struct CsvTable {
  std::string path;
  std::vector<std::string> header;
  std::vector<CsvRow> rows;

  // Column position of `name`, or NotFound naming the file.
  absl::StatusOr<int> Column(absl::string_view name) const;
};

// Reads a comma-separated file with a mandatory header line. Blank lines are
// skipped; every row must have as many fields as the header.
absl::StatusOr<CsvTable> ReadCsv(const std::string& path);

absl::StatusOr<double> ParseDouble(const CsvTable& table, const CsvRow& row,
                                   int column);
absl::StatusOr<int64_t> ParseInt(const CsvTable& table, const CsvRow& row,
                                 int column);

absl::Status WriteTextFile(const std::string& path, absl::string_view content);

}  // namespace chargeplan::internal

#endif  // CHARGEPLAN_SRC_TEXT_UTIL_H_
