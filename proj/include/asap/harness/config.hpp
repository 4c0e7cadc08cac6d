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
// Everything a benchmark or localization run needs besides the grid level:
// array, front end, simulated source and search parameters. Values can be
// overridden from a flat `key = value` file; `#` starts a comment.

#ifndef ASAP_HARNESS_CONFIG_HPP_
#define ASAP_HARNESS_CONFIG_HPP_

#include <string>
#include <utility>
#include <vector>

#include "asap/geom.hpp"
#include "asap/search.hpp"
#include "asap/spectral.hpp"
#include "asap/synth.hpp"

namespace asap {

struct PipelineConfig {
  // Array and propagation.
  int num_mics = 8;
  double radius = 0.0444;  // meters
  double speed_of_sound = kDefaultSpeedOfSound;
  double sample_rate = 50000.0;

  FrameSpec frames;
  LfmSpec lfm;

  // Region contraction.
  int start_level = 1;
  int top_n = 4;
  double cap_scale = 2.0;  // cap half-angle in mean mesh edges

  // ASAP.
  std::vector<double> strip_centers{10.0, 35.0, 60.0, 85.0};
  double strip_half_width = 10.0;
  double mc_half_window = 15.0;
  double mc_step = 1.0;
  double bp_step = 0.5;
  bool quad_refine = true;
  double stage2_window = 15.0;

  ArrayGeometry geometry() const;
  CfrcConfig cfrc(int max_level) const;
  AsapConfig asap(int max_level, Refinement variant) const;

  // Applies one override; throws std::invalid_argument on unknown keys or
  // unparsable values.
  void set(const std::string& key, const std::string& value);

  // Every key with its current value, in a fixed order.
  std::vector<std::pair<std::string, std::string>> snapshot() const;
};

// Reads overrides from `path` on top of `base`. Errors name the line.
PipelineConfig load_config(const std::string& path, PipelineConfig base = {});

}  // namespace asap

#endif  // ASAP_HARNESS_CONFIG_HPP_
