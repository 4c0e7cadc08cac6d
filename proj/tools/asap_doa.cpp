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
// asap_doa: benchmark and localization front end.
//
//   asap_doa bench-sim  --level 5 --trials 200 --snr 3.09 --seed 7 --out r.csv
//   asap_doa bench-real --manifest data/manifest.csv --level 5
//   asap_doa locate     --wav take.wav --method asap_bp

#include <cstdio>
#include <exception>
#include <string>

#include "CLI11.hpp"

#include "asap/harness/bench.hpp"
#include "asap/harness/config.hpp"
#include "asap/harness/report.hpp"
#include "asap/harness/wav.hpp"

namespace {

asap::Condition parse_condition(const std::string& snr) {
  if (snr.empty() || snr == "clean" || snr == "inf") return {};
  std::size_t used = 0;
  const double v = std::stod(snr, &used);
  if (used != snr.size()) throw std::invalid_argument("--snr expects a number or 'clean'");
  return asap::Condition{v};
}

asap::PipelineConfig pipeline_config(const std::string& path) {
  return path.empty() ? asap::PipelineConfig{} : asap::load_config(path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SRP-PHAT direction-of-arrival search and benchmarks for planar arrays"};
  app.require_subcommand(1);

  std::string config_path;
  app.add_option("--config", config_path, "key = value overrides for array/search parameters")
      ->check(CLI::ExistingFile);

  int level = 5;
  std::string methods = "full_grid,cfrc,asap_mc,asap_bp";
  std::string out = "-";
  std::string format = "csv";

  auto* sim = app.add_subcommand("bench-sim", "Benchmark all methods on simulated chirps");
  int trials = 100;
  double distance = 1.0;
  std::string snr = "clean";
  std::uint64_t seed = 0;
  sim->add_option("--level", level, "Finest icosphere level (1-7)")->check(CLI::Range(1, 7));
  sim->add_option("--trials", trials, "Number of random source directions")
      ->check(CLI::PositiveNumber);
  sim->add_option("--distance", distance, "Source distance in meters")
      ->check(CLI::PositiveNumber);
  sim->add_option("--snr", snr, "Per-channel SNR in dB, or 'clean'");
  sim->add_option("--seed", seed, "Master seed");
  sim->add_option("--methods", methods, "Comma-separated methods");
  sim->add_option("--out", out, "Report path, '-' for stdout");
  sim->add_option("--format", format, "csv or markdown");

  auto* real = app.add_subcommand("bench-real", "Benchmark all methods on recorded WAV files");
  std::string manifest;
  real->add_option("--manifest", manifest, "CSV: wav_path,azimuth_deg,elevation_deg,speaker_id")
      ->required();
  real->add_option("--level", level, "Finest icosphere level (1-7)")->check(CLI::Range(1, 7));
  real->add_option("--methods", methods, "Comma-separated methods");
  real->add_option("--out", out, "Report path, '-' for stdout");
  real->add_option("--format", format, "csv or markdown");

  auto* loc = app.add_subcommand("locate", "Estimate the direction of one recording");
  std::string wav;
  std::string method = "asap_bp";
  loc->add_option("--wav", wav, "Multichannel WAV, channel order = mic order")->required();
  loc->add_option("--level", level, "Finest icosphere level (1-7)")->check(CLI::Range(1, 7));
  loc->add_option("--method", method, "full_grid, cfrc, asap_mc or asap_bp");

  CLI11_PARSE(app, argc, argv);

  try {
    const asap::PipelineConfig cfg = pipeline_config(config_path);
    if (*sim) {
      asap::SimulationBench bench;
      bench.methods = asap::parse_methods(methods);
      bench.trial_count = trials;
      bench.level = level;
      bench.distance = distance;
      bench.condition = parse_condition(snr);
      bench.master_seed = seed;
      const auto report_format = asap::parse_report_format(format);
      asap::emit_report(asap::run_simulation_bench(bench, cfg), out, report_format);
    } else if (*real) {
      const auto report_format = asap::parse_report_format(format);
      asap::emit_report(
          asap::run_recorded_bench(manifest, asap::parse_methods(methods), level, cfg), out,
          report_format);
    } else if (*loc) {
      const auto signal = asap::load_wav(wav, cfg.num_mics);
      const auto r = asap::locate(signal, asap::parse_method(method), level, cfg);
      std::printf("azimuth_deg=%.4f elevation_deg=%.4f\n", r.direction.azimuth(),
                  r.direction.elevation());
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "asap_doa: %s\n", e.what());
    return 1;
  }
  return 0;
}
