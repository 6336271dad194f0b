// Copyright 2026 The superrep Authors
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

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

namespace superrep::cli {

inline constexpr const char* kToolVersion = "1.0.0";
inline constexpr int kSchemaVersion = 1;

/// Columns of every experiment row.
inline const std::vector<std::string> kReportColumns = {
    "experiment", "params", "metric", "exact", "exact_text", "bound", "empirical", "stderr", "tolerance", "pass"};

/// Locale-independent shortest round-trip rendering.
std::string num(double x);
std::string num(long double x);

struct ReportRow {
  std::string experiment;
  std::string params;
  std::string metric;
  std::optional<double> exact;
  std::string exact_text;
  std::optional<double> bound;
  std::optional<double> empirical;
  std::optional<double> stderr_value;
  std::optional<double> tolerance;
  std::optional<bool> pass;
};

/// A rectangular result; experiment commands use kReportColumns, the
/// table-style commands (decompose, bounds) use their own columns.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  std::size_t failures = 0;

  void add(const ReportRow& r);
  void add_raw(std::vector<std::string> cells, std::optional<bool> pass = std::nullopt);
};

std::uint64_t fnv1a64(const std::string& s);

struct RunHeader {
  std::string command;
  nlohmann::json config;  // canonical: keys sorted
  std::uint64_t seed = 0;
  nlohmann::json to_json() const;
};

void write_csv(std::ostream& out, const RunHeader& header, const Table& table);
void write_json(std::ostream& out, const RunHeader& header, const Table& table);
nlohmann::json summary_json(const RunHeader& header, const Table& table);

}  // namespace superrep::cli
