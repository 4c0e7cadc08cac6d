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
//
// Benchmark runners. Every trial builds one GccSet and runs every requested
// method on it, so the front end is paid once and excluded from the
// per-method timings.

#ifndef ASAP_HARNESS_BENCH_HPP_
#define ASAP_HARNESS_BENCH_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "asap/harness/config.hpp"
#include "asap/harness/report.hpp"
#include "asap/search.hpp"

namespace asap {

enum class Method { kFullGrid, kCfrc, kAsapMc, kAsapBp };

std::string method_name(Method m);
Method parse_method(const std::string& name);
// Comma-separated list, e.g. "full_grid,cfrc,asap_mc,asap_bp".
std::vector<Method> parse_methods(const std::string& list);
std::vector<Method> all_methods();

struct Condition {
  std::optional<double> snr_db;  // nullopt: clean

  std::string label() const;
};

struct TrialSpec {
  Direction true_direction;
  double distance = 1.0;
  Condition condition;
  std::uint64_t seed = 0;  // noise seed
};

// Trial `index` of a run seeded with `master_seed`: azimuth uniform in
// [-180, 180) and elevation uniform in [0, 90] degrees.
TrialSpec draw_trial(std::uint64_t master_seed, int index, double distance,
                     const Condition& condition);

MultichannelSignal synthesize_trial(const TrialSpec& trial, const PipelineConfig& cfg);

SearchResult run_method(const SrpEvaluator& ev, Method method, int level,
                        const PipelineConfig& cfg);

// Front end plus one search.
SearchResult locate(const MultichannelSignal& signal, Method method, int level,
                    const PipelineConfig& cfg);

struct SimulationBench {
  std::vector<Method> methods = all_methods();
  int trial_count = 100;
  int level = 5;
  double distance = 1.0;
  Condition condition;
  std::uint64_t master_seed = 0;
};

BenchmarkReport run_simulation_bench(const SimulationBench& bench, const PipelineConfig& cfg);

struct GroundTruthRecord {
  std::string wav_path;  // resolved against the manifest's directory
  Direction truth;
  std::string speaker_id;
};

// CSV manifest with header `wav_path,azimuth_deg,elevation_deg,speaker_id`.
std::vector<GroundTruthRecord> load_manifest(const std::string& path);

BenchmarkReport run_recorded_bench(const std::string& manifest_path,
                                   const std::vector<Method>& methods, int level,
                                   const PipelineConfig& cfg);

}  // namespace asap

#endif  // ASAP_HARNESS_BENCH_HPP_
