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

#include "asap/geom.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include <Eigen/Geometry>

namespace asap {

ArrayGeometry::ArrayGeometry(std::vector<Vec3> mic_positions)
    : positions_(std::move(mic_positions)) {
  if (positions_.size() < 2)
    throw std::invalid_argument("array geometry needs at least 2 microphones");
  for (std::size_t i = 0; i < positions_.size(); ++i) {
    if (!positions_[i].allFinite())
      throw std::invalid_argument("non-finite microphone position");
    for (std::size_t j = 0; j < i; ++j)
      if ((positions_[i] - positions_[j]).norm() == 0.0)
        throw std::invalid_argument("microphones " + std::to_string(j) + " and " +
                                    std::to_string(i) + " coincide");
    radius_ = std::max(radius_, positions_[i].norm());
  }
}

ArrayGeometry ArrayGeometry::uniform_circular(int num_mics, double radius) {
  if (num_mics < 2) throw std::invalid_argument("UCA needs at least 2 microphones");
  if (!(radius > 0.0)) throw std::invalid_argument("UCA radius must be positive");
  std::vector<Vec3> pos;
  pos.reserve(static_cast<std::size_t>(num_mics));
  for (int m = 0; m < num_mics; ++m) {
    const double angle = 2.0 * kPi * m / num_mics;
    pos.emplace_back(radius * std::cos(angle), radius * std::sin(angle), 0.0);
  }
  ArrayGeometry g(std::move(pos));
  g.radius_ = radius;
  return g;
}

double wrap_azimuth(double azimuth_deg) {
  double a = std::fmod(azimuth_deg + 180.0, 360.0);
  if (a < 0.0) a += 360.0;
  a -= 180.0;
  if (a >= 180.0) a -= 360.0;
  return a;
}

Direction::Direction(double azimuth_deg, double elevation_deg)
    : azimuth_(wrap_azimuth(azimuth_deg)),
      elevation_(std::clamp(elevation_deg, 0.0, 90.0)) {
  if (!std::isfinite(azimuth_deg) || std::isnan(elevation_deg))
    throw std::invalid_argument("direction angles must be finite");
}

Vec3 dir_to_unit(const Direction& d) {
  const double phi = deg2rad(d.azimuth());
  const double theta = deg2rad(d.elevation());
  if (d.elevation() == 90.0) return Vec3(0.0, 0.0, 1.0);
  return Vec3(std::cos(phi) * std::cos(theta), std::sin(phi) * std::cos(theta),
              std::sin(theta));
}

Direction unit_to_dir(const Vec3& u) {
  const double n = u.norm();
  if (!(std::abs(n - 1.0) <= 1e-6))
    throw std::invalid_argument("unit_to_dir: input is not a unit vector");
  if (u.z() < -1e-9)
    throw std::invalid_argument("unit_to_dir: direction below the array plane");
  if (u.z() >= 1.0 - 1e-12) return Direction(0.0, 90.0);
  const double horiz = std::hypot(u.x(), u.y());
  return Direction(rad2deg(std::atan2(u.y(), u.x())),
                   rad2deg(std::atan2(u.z(), horiz)));
}

DirectionGrid::DirectionGrid(int level, std::vector<Vec3> vertices,
                             bool hemisphere_only)
    : level_(level),
      vertices_(std::move(vertices)),
      hemisphere_only_(hemisphere_only) {}

namespace {

struct Mesh {
  std::vector<Vec3> vertices;
  std::vector<std::array<std::uint32_t, 3>> faces;
};

Mesh icosahedron() {
  const double p = (1.0 + std::sqrt(5.0)) / 2.0;
  Mesh mesh;
  mesh.vertices = {
      {-1, p, 0}, {1, p, 0}, {-1, -p, 0}, {1, -p, 0},
      {0, -1, p}, {0, 1, p}, {0, -1, -p}, {0, 1, -p},
      {p, 0, -1}, {p, 0, 1}, {-p, 0, -1}, {-p, 0, 1},
  };
  for (auto& v : mesh.vertices) v.normalize();
  mesh.faces = {{0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
                {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
                {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
                {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1}};
  return mesh;
}

std::uint64_t edge_key(std::uint32_t a, std::uint32_t b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(a) << 32) | b;
}

void subdivide(Mesh& mesh) {
  std::unordered_map<std::uint64_t, std::uint32_t> midpoints;
  midpoints.reserve(mesh.faces.size() * 2);
  auto midpoint = [&](std::uint32_t a, std::uint32_t b) {
    const auto [it, inserted] = midpoints.try_emplace(
        edge_key(a, b), static_cast<std::uint32_t>(mesh.vertices.size()));
    if (inserted)
      mesh.vertices.push_back((mesh.vertices[a] + mesh.vertices[b]).normalized());
    return it->second;
  };
  std::vector<std::array<std::uint32_t, 3>> faces;
  faces.reserve(mesh.faces.size() * 4);
  for (const auto& [a, b, c] : mesh.faces) {
    const auto ab = midpoint(a, b);
    const auto bc = midpoint(b, c);
    const auto ca = midpoint(c, a);
    faces.push_back({a, ab, ca});
    faces.push_back({b, bc, ab});
    faces.push_back({c, ca, bc});
    faces.push_back({ab, bc, ca});
  }
  mesh.faces = std::move(faces);
}

double mean_edge_arc(const Mesh& mesh) {
  // Every edge is shared by exactly two faces, so summing over face edges
  // counts each one twice and the mean is unchanged.
  double total = 0.0;
  for (const auto& [a, b, c] : mesh.faces) {
    total += arc_between(mesh.vertices[a], mesh.vertices[b]);
    total += arc_between(mesh.vertices[b], mesh.vertices[c]);
    total += arc_between(mesh.vertices[c], mesh.vertices[a]);
  }
  return total / (3.0 * static_cast<double>(mesh.faces.size()));
}

}  // namespace

DirectionGrid build_icosphere(int level, bool hemisphere_only) {
  if (level < kMinGridLevel || level > kMaxGridLevel)
    throw std::invalid_argument("icosphere level must be in [1, 7], got " +
                                std::to_string(level));
  Mesh mesh = icosahedron();
  for (int i = 0; i < level; ++i) subdivide(mesh);

  const double edge = mean_edge_arc(mesh);
  std::vector<Vec3> vertices;
  if (hemisphere_only) {
    vertices.reserve(mesh.vertices.size() / 2 + mesh.vertices.size() / 16);
    for (const auto& v : mesh.vertices)
      if (v.z() >= -1e-12) vertices.push_back(v);
  } else {
    vertices = std::move(mesh.vertices);
  }
  DirectionGrid grid(level, std::move(vertices), hemisphere_only);
  grid.mean_edge_arc_ = edge;
  return grid;
}

const DirectionGrid& hemisphere_grid(int level) {
  if (level < kMinGridLevel || level > kMaxGridLevel)
    throw std::invalid_argument("icosphere level must be in [1, 7], got " +
                                std::to_string(level));
  static std::mutex mu;
  static std::array<std::unique_ptr<const DirectionGrid>, kMaxGridLevel + 1> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[static_cast<std::size_t>(level)];
  if (!slot) slot = std::make_unique<const DirectionGrid>(build_icosphere(level, true));
  return *slot;
}

SphericalCap::SphericalCap(const Vec3& c, double alpha) : center(c), half_angle(alpha) {
  if (!(std::abs(c.norm() - 1.0) <= 1e-9))
    throw std::invalid_argument("spherical cap center must be a unit vector");
  if (!(alpha > 0.0 && alpha <= kPi))
    throw std::invalid_argument("spherical cap half-angle must be in (0, pi]");
}

bool cap_contains(const SphericalCap& cap, const Vec3& u) {
  // 1e-12 rad of slack keeps analytically-on-boundary points inside.
  return arc_between(cap.center, u) <= cap.half_angle + 1e-12;
}

StripSet::StripSet(std::vector<double> centers_deg, double half_width_deg)
    : centers(std::move(centers_deg)), half_width(half_width_deg) {
  if (centers.empty()) throw std::invalid_argument("strip set needs at least one center");
  for (double c : centers)
    if (!(c >= 0.0 && c <= 90.0))
      throw std::invalid_argument("strip centers must lie in [0, 90] degrees");
  if (!(half_width > 0.0)) throw std::invalid_argument("strip half-width must be positive");
}

bool in_strips(const StripSet& strips, const Vec3& u) {
  const double elevation = rad2deg(std::asin(std::clamp(u.z(), -1.0, 1.0)));
  return std::any_of(strips.centers.begin(), strips.centers.end(), [&](double c) {
    return std::abs(elevation - c) <= strips.half_width + 1e-9;
  });
}

double arc_between(const Vec3& a, const Vec3& b) {
  return std::atan2(a.cross(b).norm(), a.dot(b));
}

Vec3 slerp(const Vec3& u1, const Vec3& u2, double t) {
  const double alpha = arc_between(u1, u2);
  if (alpha <= 1e-9) return u1;
  if (alpha >= kPi - 1e-9)
    throw std::domain_error("slerp: endpoints are antipodal, great circle undefined");
  const double s = std::sin(alpha);
  const Vec3 u = (std::sin((1.0 - t) * alpha) / s) * u1 + (std::sin(t * alpha) / s) * u2;
  return u.normalized();
}

}  // namespace asap
