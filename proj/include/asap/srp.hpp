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

#ifndef ASAP_SRP_HPP_
#define ASAP_SRP_HPP_

#include <atomic>
#include <cstdint>
#include <span>
#include <vector>

#include "asap/geom.hpp"
#include "asap/spectral.hpp"

namespace asap {

inline constexpr double kDefaultSpeedOfSound = 343.0;

// Far-field TDOA tau_l - tau_m = ((r_m - r_l) . u) / c for 0-based mics
// l < m. Positive when mic m is closer to the source, i.e. channel l hears
// the wavefront later; this is where the GCC-PHAT peak of pair (l, m) lies.
double pair_tdoa(const ArrayGeometry& geometry, const Vec3& u, int l, int m,
                 double speed_of_sound);

// SRP-PHAT objective P(u) = 2*pi * sum_{l<m} R_lm(tdoa_lm(u)) over one GccSet.
//
// Holds references to the geometry and GCC set; both must outlive it. The
// evaluation counter is atomic so the evaluator can be shared by threads.
class SrpEvaluator {
 public:
  SrpEvaluator(const ArrayGeometry& geometry, const GccSet& gcc,
               double speed_of_sound = kDefaultSpeedOfSound);
  SrpEvaluator(const SrpEvaluator&) = delete;
  SrpEvaluator& operator=(const SrpEvaluator&) = delete;

  const ArrayGeometry& geometry() const { return geometry_; }
  const GccSet& gcc() const { return gcc_; }
  double speed_of_sound() const { return speed_of_sound_; }

  double power(const Vec3& u) const;
  std::vector<double> power_batch(std::span<const Vec3> candidates) const;

  // Sum of pair correlations without the 2*pi factor; not counted.
  double unscaled_power(const Vec3& u) const;

  std::uint64_t eval_count() const { return eval_count_.load(std::memory_order_relaxed); }

 private:
  const ArrayGeometry& geometry_;
  const GccSet& gcc_;
  double speed_of_sound_;
  // r_m - r_l per pair, in GccSet pair order.
  std::vector<Vec3> baselines_;
  mutable std::atomic<std::uint64_t> eval_count_{0};
};

inline double srp_power(const SrpEvaluator& ev, const Vec3& u) { return ev.power(u); }

inline std::vector<double> srp_power_batch(const SrpEvaluator& ev,
                                           std::span<const Vec3> candidates) {
  return ev.power_batch(candidates);
}

}  // namespace asap

#endif  // ASAP_SRP_HPP_
