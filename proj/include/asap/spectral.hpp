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
// STFT framing and frame-averaged GCC-PHAT.
//
// Lag convention: R_lm(k) = sum_n x_l[n] x_m[n - k], computed from the
// cross-spectrum X_l * conj(X_m). A positive lag means channel l receives
// the wavefront later than channel m. With plane-wave arrival times tau_l,
// tau_m the peak sits at tau_l - tau_m, which is what srp::pair_tdoa returns.

#ifndef ASAP_SPECTRAL_HPP_
#define ASAP_SPECTRAL_HPP_

#include <complex>
#include <limits>
#include <cstddef>
#include <vector>

namespace asap {

struct MultichannelSignal {
  double sample_rate = 0.0;
  std::vector<std::vector<double>> channels;

  int num_channels() const { return static_cast<int>(channels.size()); }
  std::size_t num_samples() const { return channels.empty() ? 0 : channels.front().size(); }

  // Throws std::invalid_argument unless fs > 0, there is at least one
  // channel and all channels have the same length.
  void validate() const;
};

enum class Window { kHann };

struct FrameSpec {
  int nfft = 1024;
  double overlap_fraction = 0.5;
  Window window = Window::kHann;
  // PHAT regularization relative to the frame's peak |cross-spectrum|.
  double phat_epsilon = 1e-2;
  // Optional analysis band in Hz; bins outside it are zeroed before the
  // inverse transform. The default keeps the full band [0, fs/2].
  double min_freq = 0.0;
  double max_freq = std::numeric_limits<double>::infinity();

  int hop() const;
  void validate() const;
};

// One channel's STFT: frames x (nfft/2 + 1) one-sided bins.
using Spectrogram = std::vector<std::vector<std::complex<double>>>;

std::vector<double> analysis_window(const FrameSpec& spec);

// Frame count is floor((N - nfft) / hop) + 1 for every channel.
std::vector<Spectrogram> stft(const MultichannelSignal& signal, const FrameSpec& spec);

// PHAT-weighted cross-correlation of two channels, averaged over frames in
// the spectral domain. Returns nfft values indexed by lag + nfft/2, covering
// lags [-nfft/2, nfft/2).
// Bins outside [band_lo, band_hi] (as fractions of the sample rate) are
// dropped.
std::vector<double> gcc_phat_pair(const Spectrogram& frames_l, const Spectrogram& frames_m,
                                  int nfft, double phat_epsilon = 1e-2, double band_lo = 0.0,
                                  double band_hi = 0.5);

class GccSet {
 public:
  GccSet(double sample_rate, int nfft, int num_mics, std::vector<std::vector<double>> tables);

  double sample_rate() const { return sample_rate_; }
  int nfft() const { return nfft_; }
  int num_mics() const { return num_mics_; }
  int num_pairs() const { return static_cast<int>(tables_.size()); }

  // Pairs are stored in (0,1), (0,2), ..., (M-2,M-1) order. Requires l < m.
  int pair_index(int l, int m) const;
  const std::vector<double>& table(int l, int m) const { return tables_[pair_index(l, m)]; }
  const std::vector<double>& table(int pair) const { return tables_[pair]; }

  // Correlation at an integer lag in [-nfft/2, nfft/2).
  double at_lag(int pair, int lag) const {
    return tables_[pair][static_cast<std::size_t>(lag + nfft_ / 2)];
  }

  // Linear interpolation between integer lags. Delays with
  // |tau * fs| > nfft/2 - 1 score 0 (reported once per process on stderr).
  double sample(int pair, double tau_seconds) const;
  double sample(int l, int m, double tau_seconds) const {
    return sample(pair_index(l, m), tau_seconds);
  }

 private:
  double sample_rate_;
  int nfft_;
  int num_mics_;
  std::vector<std::vector<double>> tables_;
};

GccSet build_gcc_set(const MultichannelSignal& signal, const FrameSpec& spec);

}  // namespace asap

#endif  // ASAP_SPECTRAL_HPP_
