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

#include "asap/srp.hpp"

#include <stdexcept>

namespace asap {

double pair_tdoa(const ArrayGeometry& geometry, const Vec3& u, int l, int m,
                 double speed_of_sound) {
  return (geometry.position(m) - geometry.position(l)).dot(u) / speed_of_sound;
}

SrpEvaluator::SrpEvaluator(const ArrayGeometry& geometry, const GccSet& gcc,
                           double speed_of_sound)
    : geometry_(geometry), gcc_(gcc), speed_of_sound_(speed_of_sound) {
  if (!(speed_of_sound > 0.0)) throw std::invalid_argument("speed of sound must be positive");
  if (gcc.num_mics() != geometry.num_mics())
    throw std::invalid_argument("GCC set was built for a different number of microphones");
  const int m_count = geometry.num_mics();
  baselines_.reserve(static_cast<std::size_t>(gcc.num_pairs()));
  for (int l = 0; l < m_count; ++l)
    for (int m = l + 1; m < m_count; ++m)
      baselines_.push_back(geometry.position(m) - geometry.position(l));
}

double SrpEvaluator::unscaled_power(const Vec3& u) const {
  double sum = 0.0;
  for (std::size_t p = 0; p < baselines_.size(); ++p)
    sum += gcc_.sample(static_cast<int>(p), baselines_[p].dot(u) / speed_of_sound_);
  return sum;
}

double SrpEvaluator::power(const Vec3& u) const {
  eval_count_.fetch_add(1, std::memory_order_relaxed);
  return 2.0 * kPi * unscaled_power(u);
}

std::vector<double> SrpEvaluator::power_batch(std::span<const Vec3> candidates) const {
  if (candidates.empty()) throw std::invalid_argument("srp_power_batch: empty candidate list");
  std::vector<double> scores;
  scores.reserve(candidates.size());
  for (const auto& u : candidates) scores.push_back(2.0 * kPi * unscaled_power(u));
  eval_count_.fetch_add(candidates.size(), std::memory_order_relaxed);
  return scores;
}

}  // namespace asap
