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

#include "asap/harness/bench.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

#include "asap/harness/metrics.hpp"
#include "asap/harness/wav.hpp"

namespace asap {

std::string method_name(Method m) {
  switch (m) {
    case Method::kFullGrid: return "full_grid";
    case Method::kCfrc: return "cfrc";
    case Method::kAsapMc: return "asap_mc";
    case Method::kAsapBp: return "asap_bp";
  }
  return "unknown";
}

Method parse_method(const std::string& name) {
  for (Method m : all_methods())
    if (method_name(m) == name) return m;
  throw std::invalid_argument("unknown method '" + name +
                              "' (use full_grid, cfrc, asap_mc or asap_bp)");
}

std::vector<Method> parse_methods(const std::string& list) {
  std::vector<Method> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(parse_method(item));
  if (out.empty()) throw std::invalid_argument("no methods selected");
  return out;
}

std::vector<Method> all_methods() {
  return {Method::kFullGrid, Method::kCfrc, Method::kAsapMc, Method::kAsapBp};
}

std::string Condition::label() const {
  if (!snr_db) return "clean";
  char buf[48];
  std::snprintf(buf, sizeof(buf), "snr%gdB", *snr_db);
  return buf;
}

TrialSpec draw_trial(std::uint64_t master_seed, int index, double distance,
                     const Condition& condition) {
  std::seed_seq seq{static_cast<std::uint32_t>(master_seed),
                    static_cast<std::uint32_t>(master_seed >> 32),
                    static_cast<std::uint32_t>(index), 0x74726961u};
  std::mt19937_64 rng(seq);
  std::uniform_real_distribution<double> azimuth(-180.0, 180.0);
  std::uniform_real_distribution<double> elevation(0.0, 90.0);
  TrialSpec t;
  const double az = azimuth(rng);
  const double el = elevation(rng);
  t.true_direction = Direction(az, el);
  t.distance = distance;
  t.condition = condition;
  t.seed = rng();
  return t;
}

MultichannelSignal synthesize_trial(const TrialSpec& trial, const PipelineConfig& cfg) {
  MultichannelSignal clean =
      propagate(cfg.geometry(), SourceSpec{trial.true_direction, trial.distance}, cfg.lfm,
                cfg.sample_rate, cfg.speed_of_sound);
  if (!trial.condition.snr_db) return clean;
  return add_noise(clean, NoiseSpec{*trial.condition.snr_db, trial.seed});
}

SearchResult run_method(const SrpEvaluator& ev, Method method, int level,
                        const PipelineConfig& cfg) {
  switch (method) {
    case Method::kFullGrid: return full_grid_search(ev, level);
    case Method::kCfrc: return cfrc_search(ev, cfg.cfrc(level));
    case Method::kAsapMc: return asap_search(ev, cfg.asap(level, Refinement::kMeridianCentered));
    case Method::kAsapBp: return asap_search(ev, cfg.asap(level, Refinement::kBetweenPoints));
  }
  throw std::logic_error("unhandled method");
}

SearchResult locate(const MultichannelSignal& signal, Method method, int level,
                    const PipelineConfig& cfg) {
  const ArrayGeometry geometry = cfg.geometry();
  if (signal.num_channels() != geometry.num_mics())
    throw std::invalid_argument("signal has " + std::to_string(signal.num_channels()) +
                                " channels, array has " + std::to_string(geometry.num_mics()));
  const GccSet gcc = build_gcc_set(signal, cfg.frames);
  const SrpEvaluator ev(geometry, gcc, cfg.speed_of_sound);
  return run_method(ev, method, level, cfg);
}

namespace {

struct Accumulator {
  double sq = 0.0;
  double sq_az = 0.0;
  double sq_el = 0.0;
  double seconds = 0.0;
  std::uint64_t evaluations = 0;
  int trials = 0;
};

// Runs every method on one signal and folds the errors into `acc`.
void score_signal(const MultichannelSignal& signal, const Direction& truth,
                  const std::vector<Method>& methods, int level, const PipelineConfig& cfg,
                  const ArrayGeometry& geometry, std::vector<Accumulator>& acc) {
  const GccSet gcc = build_gcc_set(signal, cfg.frames);
  const SrpEvaluator ev(geometry, gcc, cfg.speed_of_sound);
  const Vec3 truth_unit = dir_to_unit(truth);
  for (std::size_t k = 0; k < methods.size(); ++k) {
    const auto start = std::chrono::steady_clock::now();
    const SearchResult r = run_method(ev, methods[k], level, cfg);
    const std::chrono::duration<double> took = std::chrono::steady_clock::now() - start;
    const double e = angular_error(r.unit, truth_unit);
    const double ea = azimuth_error(r.direction, truth);
    const double ee = elevation_error(r.direction, truth);
    acc[k].sq += e * e;
    acc[k].sq_az += ea * ea;
    acc[k].sq_el += ee * ee;
    acc[k].seconds += took.count();
    acc[k].evaluations += r.evaluations;
    acc[k].trials += 1;
  }
}

std::vector<MethodRow> finish(const std::vector<Method>& methods,
                              const std::vector<Accumulator>& acc) {
  std::vector<MethodRow> rows;
  for (std::size_t k = 0; k < methods.size(); ++k) {
    const double n = acc[k].trials;
    MethodRow row;
    row.method = method_name(methods[k]);
    row.rmse_deg = std::sqrt(acc[k].sq / n);
    row.azimuth_rmse_deg = std::sqrt(acc[k].sq_az / n);
    row.elevation_rmse_deg = std::sqrt(acc[k].sq_el / n);
    row.total_time_s = acc[k].seconds;
    row.total_evaluations = acc[k].evaluations;
    row.trials = acc[k].trials;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

BenchmarkReport run_simulation_bench(const SimulationBench& bench, const PipelineConfig& cfg) {
  if (bench.trial_count < 1) throw std::invalid_argument("trial count must be at least 1");
  if (bench.methods.empty()) throw std::invalid_argument("no methods selected");
  const ArrayGeometry geometry = cfg.geometry();
  std::vector<Accumulator> acc(bench.methods.size());
  for (int i = 0; i < bench.trial_count; ++i) {
    try {
      const TrialSpec trial = draw_trial(bench.master_seed, i, bench.distance, bench.condition);
      score_signal(synthesize_trial(trial, cfg), trial.true_direction, bench.methods,
                   bench.level, cfg, geometry, acc);
    } catch (const std::exception& e) {
      throw std::runtime_error("trial " + std::to_string(i) + ": " + e.what());
    }
  }
  BenchmarkReport report;
  report.level = bench.level;
  report.condition = bench.condition.label();
  report.distance_m = bench.distance;
  report.seed = bench.master_seed;
  report.rows = finish(bench.methods, acc);
  report.config = cfg.snapshot();
  return report;
}

std::vector<GroundTruthRecord> load_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(path + ": cannot open manifest");
  const std::filesystem::path base = std::filesystem::path(path).parent_path();
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error(path + ": manifest is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "wav_path,azimuth_deg,elevation_deg,speaker_id")
    throw std::runtime_error(path + ": manifest header must be "
                                    "'wav_path,azimuth_deg,elevation_deg,speaker_id'");
  std::vector<GroundTruthRecord> records;
  int row = 0;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fail = [&](const std::string& what) -> std::runtime_error {
      return std::runtime_error(path + ": row " + std::to_string(row) + ": " + what);
    };
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string item;
    while (std::getline(ss, item, ',')) f.push_back(item);
    if (line.back() == ',') f.emplace_back();
    if (f.size() != 4) throw fail("expected 4 fields, got " + std::to_string(f.size()));
    GroundTruthRecord rec;
    std::filesystem::path wav(f[0]);
    if (wav.is_relative()) wav = base / wav;
    rec.wav_path = wav.string();
    try {
      std::size_t used_az = 0, used_el = 0;
      const double az = std::stod(f[1], &used_az);
      const double el = std::stod(f[2], &used_el);
      if (used_az != f[1].size() || used_el != f[2].size()) throw std::invalid_argument("");
      if (!(el >= 0.0 && el <= 90.0)) throw fail("elevation must lie in [0, 90]");
      rec.truth = Direction(az, el);
    } catch (const std::runtime_error&) {
      throw;
    } catch (const std::exception&) {
      throw fail("azimuth/elevation are not numbers");
    }
    rec.speaker_id = f[3];
    if (!std::filesystem::exists(rec.wav_path)) throw fail("file not found: " + rec.wav_path);
    records.push_back(std::move(rec));
  }
  if (records.empty()) throw std::runtime_error(path + ": manifest has no records");
  return records;
}

BenchmarkReport run_recorded_bench(const std::string& manifest_path,
                                   const std::vector<Method>& methods, int level,
                                   const PipelineConfig& cfg) {
  if (methods.empty()) throw std::invalid_argument("no methods selected");
  const auto records = load_manifest(manifest_path);
  const ArrayGeometry geometry = cfg.geometry();
  std::vector<Accumulator> acc(methods.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    try {
      const MultichannelSignal signal = load_wav(records[i].wav_path, geometry.num_mics());
      score_signal(signal, records[i].truth, methods, level, cfg, geometry, acc);
    } catch (const std::exception& e) {
      throw std::runtime_error(manifest_path + ": row " + std::to_string(i + 1) + ": " +
                               e.what());
    }
  }
  BenchmarkReport report;
  report.level = level;
  report.condition = "recorded";
  report.distance_m = std::numeric_limits<double>::quiet_NaN();
  report.rows = finish(methods, acc);
  report.config = cfg.snapshot();
  return report;
}

}  // namespace asap
