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

#include "asap/harness/metrics.hpp"

#include <algorithm>
#include <cmath>

namespace asap {

double angular_error(const Vec3& est, const Vec3& truth) {
  return rad2deg(std::acos(std::clamp(est.dot(truth), -1.0, 1.0)));
}

double azimuth_error(const Direction& est, const Direction& truth) {
  return std::abs(wrap_azimuth(est.azimuth() - truth.azimuth()));
}

double elevation_error(const Direction& est, const Direction& truth) {
  return std::abs(est.elevation() - truth.elevation());
}

}  // namespace asap
