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

#ifndef ASAP_HARNESS_METRICS_HPP_
#define ASAP_HARNESS_METRICS_HPP_

#include "asap/geom.hpp"

namespace asap {

// Great-circle angle between two unit vectors, degrees.
double angular_error(const Vec3& est, const Vec3& truth);

// |est - truth| in azimuth, wrapped to [0, 180].
double azimuth_error(const Direction& est, const Direction& truth);

double elevation_error(const Direction& est, const Direction& truth);

}  // namespace asap

#endif  // ASAP_HARNESS_METRICS_HPP_
