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

#include "asap/spectral.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <stdexcept>
#include <string>

#include <fftw3.h>

#include "asap/geom.hpp"

namespace asap {

namespace {

// fftw planning is not thread-safe; execution on a plan's own buffers is.
std::mutex& fftw_planner_mutex() {
  static std::mutex mu;
  return mu;
}

// Real <-> half-complex transform pair of one size, owning its buffers.
class RealFft {
 public:
  explicit RealFft(int n) : n_(n) {
    time_ = fftw_alloc_real(static_cast<std::size_t>(n));
    freq_ = fftw_alloc_complex(static_cast<std::size_t>(n / 2 + 1));
    std::lock_guard lock(fftw_planner_mutex());
    forward_ = fftw_plan_dft_r2c_1d(n, time_, freq_, FFTW_ESTIMATE);
    inverse_ = fftw_plan_dft_c2r_1d(n, freq_, time_, FFTW_ESTIMATE);
  }
  ~RealFft() {
    {
      std::lock_guard lock(fftw_planner_mutex());
      fftw_destroy_plan(forward_);
      fftw_destroy_plan(inverse_);
    }
    fftw_free(time_);
    fftw_free(freq_);
  }
  RealFft(const RealFft&) = delete;
  RealFft& operator=(const RealFft&) = delete;

  int bins() const { return n_ / 2 + 1; }
  double* time() { return time_; }
  std::complex<double>* freq() { return reinterpret_cast<std::complex<double>*>(freq_); }

  void forward() { fftw_execute(forward_); }
  // Unnormalized: the caller divides by n.
  void inverse() { fftw_execute(inverse_); }

 private:
  int n_;
  double* time_ = nullptr;
  fftw_complex* freq_ = nullptr;
  fftw_plan forward_ = nullptr;
  fftw_plan inverse_ = nullptr;
};

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

}  // namespace

void MultichannelSignal::validate() const {
  if (!(sample_rate > 0.0)) throw std::invalid_argument("sample rate must be positive");
  if (channels.empty()) throw std::invalid_argument("signal has no channels");
  const auto n = channels.front().size();
  for (const auto& ch : channels)
    if (ch.size() != n) throw std::invalid_argument("channels differ in length");
}

int FrameSpec::hop() const {
  return static_cast<int>(std::lround(nfft * (1.0 - overlap_fraction)));
}

void FrameSpec::validate() const {
  if (!is_power_of_two(nfft) || nfft < 4)
    throw std::invalid_argument("nfft must be a power of two >= 4, got " + std::to_string(nfft));
  if (!(overlap_fraction >= 0.0 && overlap_fraction < 1.0))
    throw std::invalid_argument("overlap fraction must be in [0, 1)");
  const double exact = nfft * (1.0 - overlap_fraction);
  if (hop() < 1 || std::abs(exact - hop()) > 1e-9)
    throw std::invalid_argument("nfft * (1 - overlap) must be a positive integer");
  if (!(phat_epsilon >= 0.0)) throw std::invalid_argument("PHAT epsilon must be non-negative");
  if (!(min_freq >= 0.0 && max_freq > min_freq))
    throw std::invalid_argument("analysis band needs 0 <= min_freq < max_freq");
}

std::vector<double> analysis_window(const FrameSpec& spec) {
  std::vector<double> w(static_cast<std::size_t>(spec.nfft));
  switch (spec.window) {
    case Window::kHann:
      // Periodic Hann, the usual STFT analysis window.
      for (int n = 0; n < spec.nfft; ++n)
        w[static_cast<std::size_t>(n)] = 0.5 - 0.5 * std::cos(2.0 * kPi * n / spec.nfft);
      break;
  }
  return w;
}

std::vector<Spectrogram> stft(const MultichannelSignal& signal, const FrameSpec& spec) {
  signal.validate();
  spec.validate();
  const auto nfft = static_cast<std::size_t>(spec.nfft);
  const auto hop = static_cast<std::size_t>(spec.hop());
  const std::size_t n = signal.num_samples();
  if (n < nfft)
    throw std::invalid_argument("signal has " + std::to_string(n) +
                                " samples, shorter than one frame of " + std::to_string(nfft));
  const std::size_t num_frames = (n - nfft) / hop + 1;
  const auto window = analysis_window(spec);

  RealFft fft(spec.nfft);
  std::vector<Spectrogram> out(signal.channels.size());
  for (std::size_t c = 0; c < signal.channels.size(); ++c) {
    const auto& x = signal.channels[c];
    auto& frames = out[c];
    frames.resize(num_frames);
    for (std::size_t f = 0; f < num_frames; ++f) {
      const std::size_t start = f * hop;
      for (std::size_t i = 0; i < nfft; ++i) fft.time()[i] = x[start + i] * window[i];
      fft.forward();
      frames[f].assign(fft.freq(), fft.freq() + fft.bins());
    }
  }
  return out;
}

std::vector<double> gcc_phat_pair(const Spectrogram& frames_l, const Spectrogram& frames_m,
                                  int nfft, double phat_epsilon, double band_lo,
                                  double band_hi) {
  if (frames_l.empty() || frames_m.empty())
    throw std::invalid_argument("gcc_phat_pair: no frames");
  if (frames_l.size() != frames_m.size())
    throw std::invalid_argument("gcc_phat_pair: frame counts differ");
  const auto bins = static_cast<std::size_t>(nfft / 2 + 1);

  std::vector<std::complex<double>> avg(bins);
  std::vector<std::complex<double>> cross(bins);
  for (std::size_t f = 0; f < frames_l.size(); ++f) {
    const auto& xl = frames_l[f];
    const auto& xm = frames_m[f];
    if (xl.size() != bins || xm.size() != bins)
      throw std::invalid_argument("gcc_phat_pair: frame length does not match nfft");
    double peak = 0.0;
    for (std::size_t k = 0; k < bins; ++k) {
      cross[k] = xl[k] * std::conj(xm[k]);
      peak = std::max(peak, std::abs(cross[k]));
    }
    const double eps = phat_epsilon * peak + 1e-20;
    for (std::size_t k = 0; k < bins; ++k) avg[k] += cross[k] / (std::abs(cross[k]) + eps);
  }

  RealFft fft(nfft);
  const double scale = 1.0 / (static_cast<double>(frames_l.size()) * nfft);
  for (std::size_t k = 0; k < bins; ++k) {
    const double f = static_cast<double>(k) / nfft;
    fft.freq()[k] = (f >= band_lo && f <= band_hi) ? avg[k] * scale : 0.0;
  }
  fft.inverse();

  // Circular index j holds lag j (j < nfft/2) or j - nfft; recentre.
  const auto n = static_cast<std::size_t>(nfft);
  const auto half = n / 2;
  std::vector<double> lags(n);
  for (std::size_t j = 0; j < n; ++j) lags[(j + half) % n] = fft.time()[j];
  return lags;
}

GccSet::GccSet(double sample_rate, int nfft, int num_mics,
               std::vector<std::vector<double>> tables)
    : sample_rate_(sample_rate), nfft_(nfft), num_mics_(num_mics), tables_(std::move(tables)) {
  if (num_mics_ < 2) throw std::invalid_argument("GccSet needs at least 2 channels");
  if (tables_.size() != static_cast<std::size_t>(num_mics_ * (num_mics_ - 1) / 2))
    throw std::invalid_argument("GccSet pair count does not match channel count");
  for (const auto& t : tables_) {
    if (t.size() != static_cast<std::size_t>(nfft_))
      throw std::invalid_argument("GccSet table length does not match nfft");
    for (double v : t)
      if (!std::isfinite(v)) throw std::invalid_argument("GccSet table has non-finite entries");
  }
}

int GccSet::pair_index(int l, int m) const {
  if (!(0 <= l && l < m && m < num_mics_))
    throw std::out_of_range("invalid microphone pair (" + std::to_string(l) + ", " +
                            std::to_string(m) + ")");
  // Pairs preceding row l: sum_{i<l} (M - 1 - i).
  return l * (2 * num_mics_ - l - 1) / 2 + (m - l - 1);
}

double GccSet::sample(int pair, double tau_seconds) const {
  const double x = tau_seconds * sample_rate_;
  const double limit = nfft_ / 2 - 1;
  if (!(std::abs(x) <= limit)) {
    static std::atomic<bool> warned{false};
    if (!warned.exchange(true))
      std::fprintf(stderr, "gcc: delay of %.3f samples outside the +/-%d lag table; scoring 0\n",
                   x, nfft_ / 2 - 1);
    return 0.0;
  }
  const auto& t = tables_[static_cast<std::size_t>(pair)];
  const double k = std::floor(x);
  const double frac = x - k;
  const auto i = static_cast<std::size_t>(static_cast<int>(k) + nfft_ / 2);
  if (frac == 0.0) return t[i];
  return t[i] + frac * (t[i + 1] - t[i]);
}

GccSet build_gcc_set(const MultichannelSignal& signal, const FrameSpec& spec) {
  const auto frames = stft(signal, spec);
  const int m_count = signal.num_channels();
  if (m_count < 2) throw std::invalid_argument("GCC needs at least 2 channels");
  std::vector<std::vector<double>> tables;
  tables.reserve(static_cast<std::size_t>(m_count * (m_count - 1) / 2));
  for (int l = 0; l < m_count; ++l)
    for (int m = l + 1; m < m_count; ++m)
      tables.push_back(gcc_phat_pair(frames[static_cast<std::size_t>(l)],
                                     frames[static_cast<std::size_t>(m)], spec.nfft,
                                     spec.phat_epsilon, spec.min_freq / signal.sample_rate,
                                     spec.max_freq / signal.sample_rate));
  return GccSet(signal.sample_rate, spec.nfft, m_count, std::move(tables));
}

}  // namespace asap
