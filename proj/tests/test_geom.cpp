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

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <random>
#include <stdexcept>
#include <tuple>

#include "doctest.h"

#include "asap/geom.hpp"
#include "test_util.hpp"

using namespace asap;
using asap::testing::random_rotation;
using asap::testing::random_unit;

namespace {

// Independent vertex count: subdivide an icosahedron by brute force and
// deduplicate the vertices by rounded coordinates.
std::size_t brute_force_vertex_count(int level) {
  const double t = (1.0 + std::sqrt(5.0)) / 2.0;
  std::vector<Vec3> v = {{-1, t, 0}, {1, t, 0}, {-1, -t, 0}, {1, -t, 0},
                         {0, -1, t}, {0, 1, t}, {0, -1, -t}, {0, 1, -t},
                         {t, 0, -1}, {t, 0, 1}, {-t, 0, -1}, {-t, 0, 1}};
  for (auto& p : v) p.normalize();
  std::vector<std::array<Vec3, 3>> faces;
  // Faces are the vertex triples with pairwise distance equal to the edge.
  const double edge = (v[0] - v[1]).norm();
  for (std::size_t a = 0; a < v.size(); ++a)
    for (std::size_t b = a + 1; b < v.size(); ++b)
      for (std::size_t c = b + 1; c < v.size(); ++c)
        if (std::abs((v[a] - v[b]).norm() - edge) < 1e-9 &&
            std::abs((v[b] - v[c]).norm() - edge) < 1e-9 &&
            std::abs((v[a] - v[c]).norm() - edge) < 1e-9)
          faces.push_back({v[a], v[b], v[c]});
  REQUIRE(faces.size() == 20);
  for (int l = 0; l < level; ++l) {
    std::vector<std::array<Vec3, 3>> next;
    for (const auto& f : faces) {
      const Vec3 ab = (f[0] + f[1]).normalized();
      const Vec3 bc = (f[1] + f[2]).normalized();
      const Vec3 ca = (f[2] + f[0]).normalized();
      next.push_back({f[0], ab, ca});
      next.push_back({f[1], bc, ab});
      next.push_back({f[2], ca, bc});
      next.push_back({ab, bc, ca});
    }
    faces = std::move(next);
  }
  std::map<std::tuple<long, long, long>, int> unique;
  for (const auto& f : faces)
    for (const auto& p : f)
      unique[{std::lround(p.x() * 1e8), std::lround(p.y() * 1e8), std::lround(p.z() * 1e8)}] = 1;
  return unique.size();
}

}  // namespace

TEST_CASE("uniform circular array places mic m at angle 2*pi*m/M") {
  const auto g = ArrayGeometry::uniform_circular(8, 0.0444);
  CHECK(g.num_mics() == 8);
  CHECK(g.radius() == doctest::Approx(0.0444));
  CHECK(g.position(0).x() == doctest::Approx(0.0444));
  CHECK(g.position(0).y() == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(g.position(2).x() == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(g.position(2).y() == doctest::Approx(0.0444));
  for (const auto& p : g.positions()) CHECK(p.z() == 0.0);
}

TEST_CASE("array geometry rejects bad input") {
  CHECK_THROWS_AS(ArrayGeometry({Vec3(0, 0, 0)}), std::invalid_argument);
  CHECK_THROWS_AS(ArrayGeometry({Vec3(0, 0, 0), Vec3(0, 0, 0)}), std::invalid_argument);
  CHECK_THROWS_AS(ArrayGeometry({Vec3(0, 0, 0), Vec3(NAN, 0, 0)}), std::invalid_argument);
  CHECK_THROWS(ArrayGeometry::uniform_circular(1, 0.1));
  CHECK_THROWS(ArrayGeometry::uniform_circular(8, 0.0));
}

TEST_CASE("direction wraps azimuth and clamps elevation") {
  CHECK(Direction(190.0, 10.0).azimuth() == doctest::Approx(-170.0));
  CHECK(Direction(180.0, 10.0).azimuth() == doctest::Approx(-180.0));
  CHECK(Direction(-540.0, 10.0).azimuth() == doctest::Approx(-180.0));
  CHECK(Direction(10.0, 95.0).elevation() == 90.0);
  CHECK(Direction(10.0, -3.0).elevation() == 0.0);
  CHECK(wrap_azimuth(359.0) == doctest::Approx(-1.0));
}

TEST_CASE("dir_to_unit examples") {
  const Vec3 x = dir_to_unit(Direction(0.0, 0.0));
  CHECK(x.x() == doctest::Approx(1.0));
  const Vec3 y = dir_to_unit(Direction(90.0, 0.0));
  CHECK(y.y() == doctest::Approx(1.0));
  CHECK(y.x() == doctest::Approx(0.0).epsilon(1e-15));
  const Vec3 z = dir_to_unit(Direction(37.0, 90.0));
  CHECK(z == Vec3(0.0, 0.0, 1.0));
}

TEST_CASE("unit_to_dir round-trips on the upper hemisphere") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 500; ++i) {
    const Vec3 u = random_unit(rng, true);
    const Vec3 back = dir_to_unit(unit_to_dir(u));
    CHECK((back - u).norm() < 1e-12);
  }
  const Direction pole = unit_to_dir(Vec3(0, 0, 1));
  CHECK(pole.azimuth() == 0.0);
  CHECK(pole.elevation() == 90.0);
}

TEST_CASE("unit_to_dir rejects non-unit and lower-hemisphere input") {
  CHECK_THROWS_AS(unit_to_dir(Vec3(2, 0, 0)), std::invalid_argument);
  CHECK_THROWS_AS(unit_to_dir(Vec3(0, 0, -1)), std::invalid_argument);
  CHECK_NOTHROW(unit_to_dir(Vec3(1, 0, -1e-12).normalized()));
}

TEST_CASE("icosphere vertex counts follow 10*4^l + 2") {
  for (int level = 1; level <= 5; ++level) {
    const auto grid = build_icosphere(level, false);
    CHECK(grid.size() == icosphere_vertex_count(level));
  }
  CHECK(icosphere_vertex_count(1) == 42);
  CHECK(icosphere_vertex_count(5) == 10242);
  CHECK_THROWS_AS(build_icosphere(0, false), std::invalid_argument);
  CHECK_THROWS_AS(build_icosphere(8, false), std::invalid_argument);
}

TEST_CASE("icosphere agrees with a brute-force subdivision oracle") {
  for (int level = 1; level <= 3; ++level)
    CHECK(build_icosphere(level, false).size() == brute_force_vertex_count(level));
}

TEST_CASE("icosphere vertices are unit, distinct, and nested across levels") {
  const auto coarse = build_icosphere(2, false);
  const auto fine = build_icosphere(3, false);
  for (const auto& v : fine.vertices()) CHECK(std::abs(v.norm() - 1.0) < 1e-12);
  for (std::size_t i = 0; i < coarse.size(); ++i) CHECK((coarse[i] - fine[i]).norm() == 0.0);
  double min_sep = 10.0;
  for (std::size_t i = 0; i < fine.size(); ++i)
    for (std::size_t j = i + 1; j < fine.size(); ++j)
      min_sep = std::min(min_sep, arc_between(fine[i], fine[j]));
  CHECK(min_sep > 0.5 * fine.mean_edge_arc());
}

TEST_CASE("hemisphere grids are prefixes of finer hemisphere grids") {
  for (int level = 1; level < 5; ++level) {
    const auto& a = hemisphere_grid(level);
    const auto& b = hemisphere_grid(level + 1);
    REQUIRE(a.size() < b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK((a[i] - b[i]).norm() == 0.0);
    for (const auto& v : a.vertices()) CHECK(v.z() >= -1e-12);
  }
  // Full sphere minus the strictly negative half; the equator ring is kept.
  CHECK(hemisphere_grid(1).size() == 25);
  CHECK(hemisphere_grid(5).size() == 5185);
  CHECK(&hemisphere_grid(3) == &hemisphere_grid(3));
}

TEST_CASE("mean edge arc halves with each level") {
  const double l1 = build_icosphere(1, false).mean_edge_arc();
  // Frozen: mean edge of the once-subdivided icosahedron.
  CHECK(rad2deg(l1) == doctest::Approx(33.858737205731).epsilon(1e-9));
  for (int level = 1; level < 5; ++level) {
    const double ratio =
        build_icosphere(level, false).mean_edge_arc() / build_icosphere(level + 1, false).mean_edge_arc();
    CHECK(ratio == doctest::Approx(2.0).epsilon(0.05));
  }
}

TEST_CASE("spherical caps include their boundary") {
  const Vec3 c(0, 0, 1);
  const SphericalCap cap(c, deg2rad(10.0));
  CHECK(cap_contains(cap, c));
  CHECK(cap_contains(cap, dir_to_unit(Direction(45.0, 80.0))));
  CHECK_FALSE(cap_contains(cap, dir_to_unit(Direction(45.0, 79.9))));
  CHECK_THROWS(SphericalCap(c, 0.0));
  CHECK_THROWS(SphericalCap(c, 4.0));
  CHECK_THROWS(SphericalCap(Vec3(0, 0, 2), 0.5));
}

TEST_CASE("cap membership is invariant under rotation") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> half(0.01, 3.0);
    for (int i = 0; i < 200; ++i) {
      const Vec3 c = random_unit(rng);
      const Vec3 u = random_unit(rng);
      const double a = half(rng);
      if (std::abs(arc_between(c, u) - a) < 1e-8) continue;
      const Eigen::Matrix3d r = random_rotation(rng);
      CHECK(cap_contains(SphericalCap(c, a), u) ==
            cap_contains(SphericalCap((r * c).normalized(), a), (r * u).normalized()));
    }
  }
}

TEST_CASE("elevation strips") {
  const StripSet strips({10.0, 35.0, 60.0, 85.0}, 10.0);
  CHECK(in_strips(strips, dir_to_unit(Direction(0.0, 0.0))));
  CHECK(in_strips(strips, dir_to_unit(Direction(0.0, 20.0))));
  CHECK_FALSE(in_strips(strips, dir_to_unit(Direction(0.0, 22.5))));
  CHECK(in_strips(strips, dir_to_unit(Direction(0.0, 25.0))));
  CHECK(in_strips(strips, dir_to_unit(Direction(0.0, 90.0))));
  CHECK_THROWS(StripSet({}, 10.0));
  CHECK_THROWS(StripSet({10.0}, 0.0));
}

TEST_CASE("slerp endpoints, norm and angle linearity") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < 50; ++i) {
      const Vec3 a = random_unit(rng);
      const Vec3 b = random_unit(rng);
      if (arc_between(a, b) > kPi - 1e-3) continue;
      CHECK((slerp(a, b, 0.0) - a).norm() < 1e-12);
      CHECK((slerp(a, b, 1.0) - b).norm() < 1e-12);
      const double t = unit(rng);
      const Vec3 s = slerp(a, b, t);
      CHECK(std::abs(s.norm() - 1.0) < 1e-9);
      CHECK(std::abs(arc_between(a, s) - t * arc_between(a, b)) < 1e-6);
      Eigen::Matrix3d m;
      m << a, b, s;
      CHECK(std::abs(m.determinant()) < 1e-9);
    }
  }
}

TEST_CASE("slerp degenerate inputs") {
  const Vec3 a(1, 0, 0);
  CHECK(slerp(a, a, 0.7) == a);
  CHECK_THROWS_AS(slerp(a, -a, 0.5), std::domain_error);
}

TEST_CASE("arc_between satisfies the triangle inequality") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 1000; ++i) {
    const Vec3 a = random_unit(rng), b = random_unit(rng), c = random_unit(rng);
    CHECK(arc_between(a, c) <= arc_between(a, b) + arc_between(b, c) + 1e-12);
  }
  CHECK(arc_between(Vec3(1, 0, 0), Vec3(0, 1, 0)) == doctest::Approx(kPi / 2));
}
