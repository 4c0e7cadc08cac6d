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

#include "asap/synth.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace asap {

void LfmSpec::validate(double sample_rate) const {
  if (!(duration > 0.0)) throw std::invalid_argument("chirp duration must be positive");
  if (!(f0 > 0.0 && f0 < f1)) throw std::invalid_argument("chirp needs 0 < f0 < f1");
  if (!(sample_rate > 2.0 * f1))
    throw std::invalid_argument("sample rate must exceed twice the chirp end frequency");
}

double LfmSpec::value(double t) const {
  if (t < 0.0 || t >= duration) return 0.0;
  const double sweep = (f1 - f0) / (2.0 * duration);
  return std::sin(2.0 * kPi * (f0 * t + sweep * t * t));
}

double LfmSpec::instantaneous_frequency(double t) const {
  return f0 + (f1 - f0) * t / duration;
}

std::vector<double> lfm_chirp(const LfmSpec& spec, double sample_rate) {
  spec.validate(sample_rate);
  const auto n = static_cast<std::size_t>(std::ceil(spec.duration * sample_rate - 1e-9));
  std::vector<double> s(n);
  for (std::size_t i = 0; i < n; ++i) s[i] = spec.value(static_cast<double>(i) / sample_rate);
  return s;
}

MultichannelSignal propagate(const ArrayGeometry& geometry, const SourceSpec& source,
                             const LfmSpec& lfm, double sample_rate, double speed_of_sound) {
  lfm.validate(sample_rate);
  if (!(source.distance > 0.0)) throw std::invalid_argument("source distance must be positive");
  if (!(speed_of_sound > 0.0)) throw std::invalid_argument("speed of sound must be positive");

  const Vec3 p = source.distance * dir_to_unit(source.direction);
  std::vector<double> range(static_cast<std::size_t>(geometry.num_mics()));
  for (int m = 0; m < geometry.num_mics(); ++m)
    range[static_cast<std::size_t>(m)] = (p - geometry.position(m)).norm();
  const double max_delay = *std::max_element(range.begin(), range.end()) / speed_of_sound;
  const auto n = static_cast<std::size_t>(std::ceil((lfm.duration + max_delay) * sample_rate));

  MultichannelSignal out;
  out.sample_rate = sample_rate;
  out.channels.assign(range.size(), std::vector<double>(n));
  for (std::size_t m = 0; m < range.size(); ++m) {
    const double delay = range[m] / speed_of_sound;
    const double gain = 1.0 / range[m];
    auto& ch = out.channels[m];
    for (std::size_t i = 0; i < n; ++i)
      ch[i] = gain * lfm.value(static_cast<double>(i) / sample_rate - delay);
  }
  return out;
}

std::vector<std::vector<double>> make_noise(const MultichannelSignal& signal,
                                            const NoiseSpec& spec) {
  signal.validate();
  std::vector<std::vector<double>> noise(signal.channels.size());
  for (std::size_t c = 0; c < signal.channels.size(); ++c) {
    const auto& x = signal.channels[c];
    double power = 0.0;
    for (double v : x) power += v * v;
    power /= static_cast<double>(x.size());
    if (!(power > 0.0))
      throw std::invalid_argument("cannot set an SNR on an all-zero channel");
    const double sigma = std::sqrt(power / std::pow(10.0, spec.snr_db / 10.0));

    std::seed_seq seq{static_cast<std::uint32_t>(spec.seed), static_cast<std::uint32_t>(spec.seed >> 32),
                      static_cast<std::uint32_t>(c), 0x6e6f6973u};
    std::mt19937_64 rng(seq);
    std::normal_distribution<double> gauss(0.0, sigma);
    noise[c].resize(x.size());
    for (double& v : noise[c]) v = gauss(rng);
  }
  return noise;
}

MultichannelSignal add_noise(const MultichannelSignal& signal, const NoiseSpec& spec) {
  signal.validate();
  if (std::isinf(spec.snr_db) && spec.snr_db > 0.0) {
    for (const auto& ch : signal.channels)
      if (std::all_of(ch.begin(), ch.end(), [](double v) { return v == 0.0; }))
        throw std::invalid_argument("cannot add noise to an all-zero channel");
    return signal;
  }
  const auto noise = make_noise(signal, spec);
  MultichannelSignal out = signal;
  for (std::size_t c = 0; c < out.channels.size(); ++c)
    for (std::size_t i = 0; i < out.channels[c].size(); ++i) out.channels[c][i] += noise[c][i];
  return out;
}

}  // namespace asap
