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
// Free-field simulation of a point source recorded by an array.

#ifndef ASAP_SYNTH_HPP_
#define ASAP_SYNTH_HPP_

#include <cstdint>
#include <limits>
#include <vector>

#include "asap/geom.hpp"
#include "asap/spectral.hpp"

namespace asap {

struct LfmSpec {
  double f0 = 500.0;      // Hz
  double f1 = 2500.0;     // Hz
  double duration = 0.5;  // seconds

  void validate(double sample_rate) const;
  // Closed form, defined for any real t; zero outside [0, duration).
  double value(double t) const;
  double instantaneous_frequency(double t) const;
};

struct SourceSpec {
  Direction direction;
  double distance = 1.0;  // meters
};

struct NoiseSpec {
  // +infinity disables noise.
  double snr_db = std::numeric_limits<double>::infinity();
  std::uint64_t seed = 0;
};

std::vector<double> lfm_chirp(const LfmSpec& spec, double sample_rate);

// Each mic receives the chirp delayed by its exact distance to the source
// over c and attenuated by 1 / distance. The record is long enough to hold
// the latest arrival.
MultichannelSignal propagate(const ArrayGeometry& geometry, const SourceSpec& source,
                             const LfmSpec& lfm, double sample_rate, double speed_of_sound);

// Independent white Gaussian noise per channel, scaled so that each
// channel's mean-square power over the whole record sits snr_db above the
// noise. Channel c's stream depends only on (seed, c).
std::vector<std::vector<double>> make_noise(const MultichannelSignal& signal,
                                            const NoiseSpec& spec);

MultichannelSignal add_noise(const MultichannelSignal& signal, const NoiseSpec& spec);

}  // namespace asap

#endif  // ASAP_SYNTH_HPP_
