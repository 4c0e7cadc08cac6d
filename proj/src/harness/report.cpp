// Copyright 2026 The ASAP-DOA Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "asap/harness/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

namespace asap {

namespace {

std::string fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
  return buf;
}

std::string distance_field(double d) { return std::isnan(d) ? "" : fixed(d, 2); }

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

std::string csv(const BenchmarkReport& r) {
  std::string out = std::string(kCsvHeader) + "\n";
  for (const auto& row : r.rows) {
    out += row.method + "," + std::to_string(r.level) + "," + r.condition + "," +
           distance_field(r.distance_m) + "," + std::to_string(row.trials) + "," +
           fixed(row.rmse_deg, 2) + "," + fixed(row.total_time_s, 4) + "," +
           std::to_string(row.total_evaluations) + "\n";
  }
  return out;
}

std::string markdown(const BenchmarkReport& r) {
  std::ostringstream os;
  const int trials = r.rows.empty() ? 0 : r.rows.front().trials;
  os << "## Level " << r.level << ", " << r.condition;
  if (!std::isnan(r.distance_m)) os << ", " << fixed(r.distance_m, 2) << " m";
  os << ", " << trials << " trials, seed " << r.seed << "\n\n";

  os << "| Metric |";
  for (const auto& row : r.rows) os << ' ' << row.method << " |";
  os << "\n|---|";
  for (std::size_t i = 0; i < r.rows.size(); ++i) os << "---|";
  os << '\n';
  auto line = [&](const char* label, auto field) {
    os << "| " << label << " |";
    for (const auto& row : r.rows) os << ' ' << field(row) << " |";
    os << '\n';
  };
  line("RMSE (deg)", [](const MethodRow& m) { return fixed(m.rmse_deg, 2); });
  line("Azimuth RMSE (deg)", [](const MethodRow& m) { return fixed(m.azimuth_rmse_deg, 2); });
  line("Elevation RMSE (deg)", [](const MethodRow& m) { return fixed(m.elevation_rmse_deg, 2); });
  line("Total time (s)", [](const MethodRow& m) { return fixed(m.total_time_s, 4); });
  line("Evaluations", [](const MethodRow& m) { return std::to_string(m.total_evaluations); });

  if (!r.config.empty()) {
    os << "\nConfiguration:\n\n";
    for (const auto& [k, v] : r.config) os << "- " << k << " = " << v << '\n';
  }
  return os.str();
}

}  // namespace

ReportFormat parse_report_format(const std::string& name) {
  if (name == "csv") return ReportFormat::kCsv;
  if (name == "markdown" || name == "md") return ReportFormat::kMarkdown;
  throw std::invalid_argument("unknown report format '" + name + "' (use csv or markdown)");
}

std::string format_report(const BenchmarkReport& report, ReportFormat format) {
  return format == ReportFormat::kCsv ? csv(report) : markdown(report);
}

void emit_report(const BenchmarkReport& report, const std::string& path, ReportFormat format) {
  const std::string text = format_report(report, format);
  if (path.empty() || path == "-") {
    std::cout << text << std::flush;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error(path + ": cannot open report for writing");
  out << text;
  if (!out) throw std::runtime_error(path + ": report write failed");
}

std::vector<MethodRow> parse_report_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader)
    throw std::invalid_argument("report CSV header mismatch");
  std::vector<MethodRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split(line, ',');
    if (f.size() != 8) throw std::invalid_argument("report CSV row has wrong field count");
    MethodRow row;
    row.method = f[0];
    row.trials = std::stoi(f[4]);
    row.rmse_deg = std::stod(f[5]);
    row.total_time_s = std::stod(f[6]);
    row.total_evaluations = std::stoull(f[7]);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace asap
