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

#include <cmath>
#include <memory>
#include <random>
#include <set>
#include <stdexcept>

#include "doctest.h"

#include "asap/search.hpp"
#include "asap/synth.hpp"
#include "test_util.hpp"

using namespace asap;

namespace {

const ArrayGeometry& uca() {
  static const ArrayGeometry g = ArrayGeometry::uniform_circular(8, 0.0444);
  return g;
}

// Owns the GCC set an evaluator refers to.
struct Scene {
  explicit Scene(const Direction& truth)
      : truth(truth),
        gcc(build_gcc_set(propagate(uca(), SourceSpec{truth, 1.0}, LfmSpec{}, 50000.0, 343.0),
                          FrameSpec{})),
        ev(std::make_unique<SrpEvaluator>(uca(), gcc)) {}
  Direction truth;
  GccSet gcc;
  std::unique_ptr<SrpEvaluator> ev;
};

double error_deg(const Vec3& a, const Direction& b) {
  return rad2deg(arc_between(a, dir_to_unit(b)));
}

}  // namespace

TEST_CASE("quad_interp_peak on analytic parabolas") {
  // p(x) = -(x - 0.3)^2 sampled at -1, 0, 1.
  CHECK(quad_interp_peak(-1.69, -0.09, -0.49, 1.0) == doctest::Approx(0.3));
  CHECK(quad_interp_peak(-1.69, -0.09, -0.49, 2.0) == doctest::Approx(0.6));
  CHECK(quad_interp_peak(1.0, 2.0, 1.0, 0.5) == 0.0);
  CHECK(quad_interp_peak(3.0, 3.0, 3.0, 1.0) == 0.0);
  CHECK(quad_interp_peak(0.0, 1e-20, 0.0, 1.0) == 0.0);
  // Monotone triple: the unconstrained vertex lies outside, so clamp.
  CHECK(quad_interp_peak(0.0, 1.0, 1.999, 1.0) == 1.0);
}

TEST_CASE("quad_interp_peak recovers random vertices") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_real_distribution<double> curv(0.1, 10.0);
  for (int i = 0; i < 1000; ++i) {
    const double h = 0.5 + std::abs(u(rng));
    const double v = 0.5 * h * u(rng);
    const double a = -curv(rng), c = 5.0 * u(rng);
    const auto p = [&](double x) { return a * (x - v) * (x - v) + c; };
    CHECK(std::abs(quad_interp_peak(p(-h), p(0.0), p(h), h) - v) <= 1e-9 * std::max(1.0, std::abs(v)));
  }
}

TEST_CASE("cfrc config validation") {
  CHECK_NOTHROW(CfrcConfig::defaults().validate());
  auto cfg = CfrcConfig::defaults(3);
  cfg.start_level = 4;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = CfrcConfig::defaults(8);
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = CfrcConfig::defaults();
  cfg.top_n = 0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = CfrcConfig::defaults();
  cfg.cap_schedule = [](int level) { return 0.1 * level; };
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.cap_schedule = nullptr;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  CHECK_THROWS(edge_scaled_cap_schedule(0.0));
  // Default caps: two mean mesh edges of the level being contracted.
  CHECK(rad2deg(CfrcConfig::defaults().cap_half_angle(1)) ==
        doctest::Approx(2.0 * 33.858737205731));
}

TEST_CASE("full grid search matches a brute-force argmax") {
  const Scene s(Direction(140.0, 25.0));
  const auto& grid = hemisphere_grid(4);
  std::size_t best = 0;
  double best_score = s.ev->power(grid[0]);
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double p = s.ev->power(grid[i]);
    if (p > best_score) best = i, best_score = p;
  }
  const auto r = full_grid_search(*s.ev, 4);
  CHECK((r.unit - grid[best]).norm() == 0.0);
  CHECK(r.score == best_score);
  CHECK(r.evaluations == grid.size());
  CHECK(r.stage2_evals == 0);
}

TEST_CASE("full grid estimate of a known scene is frozen") {
  const Scene s(Direction(75.0, 35.0));
  const auto r = full_grid_search(*s.ev, 5);
  CHECK(r.direction.azimuth() == doctest::Approx(74.442341969105).epsilon(1e-9));
  CHECK(r.direction.elevation() == doctest::Approx(35.877265028569).epsilon(1e-9));
  CHECK(r.score == doctest::Approx(1.351560015583).epsilon(1e-9));
}

TEST_CASE("cfrc without contraction equals the full grid") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> az(-180.0, 180.0), el(0.0, 90.0);
  for (int i = 0; i < 5; ++i) {
    const Scene s(Direction(az(rng), el(rng)));
    const auto a = full_grid_search(*s.ev, 3);
    const auto b = cfrc_search(*s.ev, CfrcConfig::no_contraction(3));
    CHECK(a.direction == b.direction);
    CHECK(a.score == b.score);
    CHECK(b.evaluations == hemisphere_grid(3).size());
  }
}

TEST_CASE("cfrc evaluates each vertex once and stays on the finest grid") {
  const Scene s(Direction(-60.0, 50.0));
  EvalTrace trace;
  const auto before = s.ev->eval_count();
  const auto r = cfrc_search(*s.ev, CfrcConfig::defaults(5), &trace);
  CHECK(r.evaluations == s.ev->eval_count() - before);
  CHECK(trace.size() == r.evaluations);
  CHECK(r.evaluations < hemisphere_grid(5).size() / 4);
  std::set<std::tuple<double, double, double>> seen;
  for (const auto& u : trace) CHECK(seen.insert({u.x(), u.y(), u.z()}).second);
  CHECK(error_deg(r.unit, s.truth) < 5.0);
}

TEST_CASE("cfrc with a single level is a grid scan of that level") {
  const Scene s(Direction(10.0, 70.0));
  auto cfg = CfrcConfig::defaults(2);
  cfg.start_level = 2;
  const auto r = cfrc_search(*s.ev, cfg);
  CHECK(r.direction == full_grid_search(*s.ev, 2).direction);
}

TEST_CASE("asap stage 1 stays inside the strips") {
  const Scene s(Direction(100.0, 12.0));
  AsapConfig cfg;
  EvalTrace trace;
  const auto s1 = asap_stage1(*s.ev, cfg, &trace);
  CHECK(s1.evaluations == trace.size());
  for (const auto& u : trace) CHECK(in_strips(cfg.strips, u));
  CHECK(s1.top.size() == 2);
  CHECK(s1.top_scores[0] >= s1.top_scores[1]);
  CHECK(s1.azimuth == doctest::Approx(unit_to_dir(s1.top[0]).azimuth()));
  cfg.variant = Refinement::kMeridianCentered;
  CHECK(asap_stage1(*s.ev, cfg).top.size() == 1);
}

TEST_CASE("asap stage 1 rejects strips that miss the start grid") {
  const Scene s(Direction(0.0, 45.0));
  AsapConfig cfg;
  cfg.strips = StripSet({45.0}, 0.01);
  CHECK_THROWS_AS(asap_stage1(*s.ev, cfg), std::invalid_argument);
}

TEST_CASE("meridian refinement clips its window to [0, 90]") {
  const Scene s(Direction(30.0, 40.0));
  EvalTrace trace;
  auto r = mc_refine(*s.ev, 30.0, 80.0, 15.0, 1.0, false, &trace);
  CHECK(r.evaluations == 26);  // 65..90
  for (const auto& u : trace) CHECK(unit_to_dir(u).elevation() >= 65.0 - 1e-9);
  r = mc_refine(*s.ev, 30.0, 5.0, 15.0, 1.0, false);
  CHECK(r.evaluations == 21);  // 0..20
  r = mc_refine(*s.ev, 30.0, 10.5, 15.0, 1.0, false);
  CHECK(r.evaluations == 27);  // 0..25 plus the 25.5 endpoint
  CHECK_THROWS(mc_refine(*s.ev, 30.0, 10.0, 0.0, 1.0, false));
}

TEST_CASE("meridian refinement follows the azimuth and finds the elevation") {
  const Scene s(Direction(30.0, 40.0));
  EvalTrace trace;
  const auto r = mc_refine(*s.ev, 30.0, 45.0, 15.0, 1.0, true, &trace);
  for (const auto& u : trace)
    if (u.z() < 1.0 - 1e-12) CHECK(unit_to_dir(u).azimuth() == doctest::Approx(30.0));
  CHECK(r.direction.azimuth() == doctest::Approx(30.0));
  CHECK(std::abs(r.direction.elevation() - 40.0) < 3.0);
  const auto coarse = mc_refine(*s.ev, 30.0, 45.0, 15.0, 1.0, false);
  CHECK(std::abs(r.direction.elevation() - coarse.direction.elevation()) <= 1.0);
  CHECK(r.score >= coarse.score - 1e-9);
}

TEST_CASE("between-points refinement samples the great circle") {
  const Scene s(Direction(-20.0, 30.0));
  const Vec3 a = dir_to_unit(Direction(-25.0, 28.0));
  const Vec3 b = dir_to_unit(Direction(-15.0, 33.0));
  EvalTrace trace;
  const auto r = bp_refine(*s.ev, a, b, 0.5, true, &trace);
  const double alpha = rad2deg(arc_between(a, b));
  CHECK(r.evaluations == static_cast<std::uint64_t>(std::ceil(alpha / 0.5)) + 1);
  CHECK((trace.front() - a).norm() < 1e-12);
  CHECK((trace.back() - b).norm() < 1e-12);
  for (const auto& u : trace) {
    Eigen::Matrix3d m;
    m << a, b, u;
    CHECK(std::abs(m.determinant()) < 1e-9);
  }
  Eigen::Matrix3d m;
  m << a, b, r.unit;
  CHECK(std::abs(m.determinant()) < 1e-9);
  CHECK(std::abs(r.unit.norm() - 1.0) < 1e-12);

  const auto same = bp_refine(*s.ev, a, a, 0.5, true);
  CHECK(same.evaluations == 1);
  CHECK(same.unit == a);
  CHECK_THROWS(bp_refine(*s.ev, a, b, 0.0, true));
}

TEST_CASE("asap search end to end") {
  for (auto variant : {Refinement::kMeridianCentered, Refinement::kBetweenPoints}) {
    const Scene s(Direction(-150.0, 55.0));
    AsapConfig cfg;
    cfg.variant = variant;
    const auto before = s.ev->eval_count();
    const auto r = asap_search(*s.ev, cfg);
    CHECK(r.evaluations == r.stage1_evals + r.stage2_evals);
    CHECK(r.evaluations == s.ev->eval_count() - before);
    CHECK(error_deg(r.unit, s.truth) < 5.0);
    const auto again = asap_search(*s.ev, cfg);
    CHECK(again.direction == r.direction);
    CHECK(again.score == r.score);
  }
  CHECK(to_string(Refinement::kBetweenPoints) == "BP");
  CHECK(to_string(Refinement::kMeridianCentered) == "MC");
}
