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
// Array geometry and the spherical toolkit used by the DOA searches:
// direction conversions, icosphere tessellation, spherical caps, elevation
// strips and great-circle interpolation.
//
// Conventions: azimuth is measured from +x toward +y, elevation from the
// array plane toward +z. Both are stored in degrees.

#ifndef ASAP_GEOM_HPP_
#define ASAP_GEOM_HPP_

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Core>

namespace asap {

using Vec3 = Eigen::Vector3d;

inline constexpr double kPi = 3.14159265358979323846;

inline constexpr double deg2rad(double deg) { return deg * kPi / 180.0; }
inline constexpr double rad2deg(double rad) { return rad * 180.0 / kPi; }

// Microphone positions in meters. Mic indices are 0-based in code.
class ArrayGeometry {
 public:
  explicit ArrayGeometry(std::vector<Vec3> mic_positions);

  // Uniform circular array in the z = 0 plane; mic m sits at angle 2*pi*m/M.
  static ArrayGeometry uniform_circular(int num_mics, double radius);

  int num_mics() const { return static_cast<int>(positions_.size()); }
  // Largest distance of any mic from the origin (the UCA radius for UCAs).
  double radius() const { return radius_; }
  const Vec3& position(int m) const { return positions_[static_cast<std::size_t>(m)]; }
  std::span<const Vec3> positions() const { return positions_; }

 private:
  std::vector<Vec3> positions_;
  double radius_ = 0.0;
};

// Upper-hemisphere direction. Azimuth is wrapped into [-180, 180) and
// elevation clamped into [0, 90] on construction.
class Direction {
 public:
  Direction() = default;
  Direction(double azimuth_deg, double elevation_deg);

  double azimuth() const { return azimuth_; }
  double elevation() const { return elevation_; }

  friend bool operator==(const Direction&, const Direction&) = default;

 private:
  double azimuth_ = 0.0;
  double elevation_ = 0.0;
};

double wrap_azimuth(double azimuth_deg);

Vec3 dir_to_unit(const Direction& d);

// Inverse of dir_to_unit on the upper hemisphere. At the pole the azimuth is
// reported as 0. Throws std::invalid_argument for non-unit input or z < -1e-9.
Direction unit_to_dir(const Vec3& u);

// Icosphere vertices: the regular icosahedron subdivided `level` times
// (10 * 4^level + 2 vertices on the full sphere).
//
// Vertex order is stable across levels: the first vertices of level l+1 are
// exactly the vertices of level l, and hemisphere filtering keeps relative
// order, so hemisphere grids are nested prefixes of each other as well.
class DirectionGrid {
 public:
  DirectionGrid(int level, std::vector<Vec3> vertices, bool hemisphere_only);

  int level() const { return level_; }
  bool hemisphere_only() const { return hemisphere_only_; }
  std::size_t size() const { return vertices_.size(); }
  const Vec3& operator[](std::size_t i) const { return vertices_[i]; }
  std::span<const Vec3> vertices() const { return vertices_; }

  // Mean great-circle length (radians) of the mesh edges at this level.
  double mean_edge_arc() const { return mean_edge_arc_; }

 private:
  friend DirectionGrid build_icosphere(int level, bool hemisphere_only);

  int level_ = 0;
  std::vector<Vec3> vertices_;
  bool hemisphere_only_ = false;
  double mean_edge_arc_ = 0.0;
};

inline constexpr int kMinGridLevel = 1;
inline constexpr int kMaxGridLevel = 7;

DirectionGrid build_icosphere(int level, bool hemisphere_only);

// Process-wide cache of hemisphere grids; built on first use, thread-safe.
const DirectionGrid& hemisphere_grid(int level);

inline constexpr std::size_t icosphere_vertex_count(int level) {
  std::size_t faces = 20;
  for (int i = 0; i < level; ++i) faces *= 4;
  return faces / 2 + 2;
}

struct SphericalCap {
  SphericalCap(const Vec3& center, double half_angle);

  Vec3 center;
  double half_angle;  // radians
};

// Boundary inclusive.
bool cap_contains(const SphericalCap& cap, const Vec3& u);

struct StripSet {
  StripSet(std::vector<double> centers_deg, double half_width_deg);

  std::vector<double> centers;  // elevations, degrees
  double half_width;            // degrees
};

bool in_strips(const StripSet& strips, const Vec3& u);

// Great-circle interpolation from u1 (t = 0) to u2 (t = 1). Returns u1 when
// the two are closer than 1e-9 rad; throws std::domain_error for antipodal
// inputs.
Vec3 slerp(const Vec3& u1, const Vec3& u2, double t);

// Angle between unit vectors, radians, with the dot product clamped.
double arc_between(const Vec3& a, const Vec3& b);

}  // namespace asap

#endif  // ASAP_GEOM_HPP_
