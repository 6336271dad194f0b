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

#include "report.hpp"

#include <cmath>

#include <fmt/format.h>

namespace superrep::cli {

std::string num(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return fmt::format("{}", x);
}

std::string num(long double x) { return num(static_cast<double>(x)); }

namespace {

std::string opt(const std::optional<double>& v) { return v ? num(*v) : std::string(); }

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

void Table::add(const ReportRow& r) {
  std::string pass = r.pass ? (*r.pass ? "true" : "false") : "";
  add_raw({r.experiment, r.params, r.metric, opt(r.exact), r.exact_text, opt(r.bound), opt(r.empirical),
           opt(r.stderr_value), opt(r.tolerance), pass},
          r.pass);
}

void Table::add_raw(std::vector<std::string> cells, std::optional<bool> pass) {
  if (pass && !*pass) ++failures;
  rows.push_back(std::move(cells));
}

std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

nlohmann::json RunHeader::to_json() const {
  nlohmann::json j;
  j["tool"] = "superrep";
  j["version"] = kToolVersion;
  j["schema_version"] = kSchemaVersion;
  j["command"] = command;
  j["seed"] = seed;
  j["config"] = config;
  j["config_hash"] = fmt::format("{:016x}", fnv1a64(config.dump()));
  return j;
}

void write_csv(std::ostream& out, const RunHeader& header, const Table& table) {
  out << "# " << header.to_json().dump() << "\n";
  for (std::size_t i = 0; i < table.columns.size(); ++i) out << (i ? "," : "") << table.columns[i];
  out << "\n";
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_cell(row[i]);
    out << "\n";
  }
}

void write_json(std::ostream& out, const RunHeader& header, const Table& table) {
  nlohmann::json j;
  j["header"] = header.to_json();
  j["columns"] = table.columns;
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : table.rows) {
    nlohmann::json r = nlohmann::json::object();
    for (std::size_t i = 0; i < row.size() && i < table.columns.size(); ++i) r[table.columns[i]] = row[i];
    rows.push_back(std::move(r));
  }
  j["rows"] = std::move(rows);
  out << j.dump(2) << "\n";
}

nlohmann::json summary_json(const RunHeader& header, const Table& table) {
  nlohmann::json j;
  j["header"] = header.to_json();
  j["rows"] = table.rows.size();
  j["failures"] = table.failures;
  j["pass"] = table.failures == 0;
  return j;
}

}  // namespace superrep::cli
