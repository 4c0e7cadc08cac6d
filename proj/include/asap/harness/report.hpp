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

#ifndef ASAP_HARNESS_REPORT_HPP_
#define ASAP_HARNESS_REPORT_HPP_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace asap {

struct MethodRow {
  std::string method;
  double rmse_deg = 0.0;  // great-circle
  double azimuth_rmse_deg = 0.0;
  double elevation_rmse_deg = 0.0;
  double total_time_s = 0.0;
  std::uint64_t total_evaluations = 0;
  int trials = 0;
};

struct BenchmarkReport {
  int level = 0;
  std::string condition;  // "clean", "snr1.5dB", "recorded"
  double distance_m = 0.0;  // NaN for recorded data
  std::uint64_t seed = 0;
  std::vector<MethodRow> rows;
  std::vector<std::pair<std::string, std::string>> config;
};

enum class ReportFormat { kCsv, kMarkdown };

ReportFormat parse_report_format(const std::string& name);

inline constexpr const char* kCsvHeader =
    "method,level,condition,distance_m,trials,rmse_deg,total_time_s,total_evaluations";

std::string format_report(const BenchmarkReport& report, ReportFormat format);

// Writes to `path`, or to stdout when path is "-" or empty.
void emit_report(const BenchmarkReport& report, const std::string& path, ReportFormat format);

// Reads rows back from CSV produced by format_report. The per-axis RMSE
// fields are not part of the CSV and stay zero.
std::vector<MethodRow> parse_report_csv(const std::string& text);

}  // namespace asap

#endif  // ASAP_HARNESS_REPORT_HPP_
