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
// DOA search strategies over the SRP-PHAT objective:
//
//   full_grid_search  exhaustive scan of one hemisphere icosphere level
//   cfrc_search       coarse-to-fine region contraction across levels
//   asap_search       strip-constrained contraction (stage 1) followed by a
//                     1-D refinement, either along the estimated meridian
//                     (MC) or along the arc between the two best points (BP)
//
// Evaluation counts are the cost measure; wall time is left to callers.

#ifndef ASAP_SEARCH_HPP_
#define ASAP_SEARCH_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "asap/geom.hpp"
#include "asap/srp.hpp"

namespace asap {

struct SearchResult {
  Direction direction;
  Vec3 unit = Vec3::Zero();
  double score = 0.0;
  std::uint64_t evaluations = 0;
  std::uint64_t stage1_evals = 0;
  std::uint64_t stage2_evals = 0;
};

// Receives every direction handed to the SRP evaluator, in order.
using EvalTrace = std::vector<Vec3>;

struct CfrcConfig {
  int start_level = 1;
  int max_level = 5;
  int top_n = 4;
  // Cap half-angle (radians) used around the maxima of level i.
  std::function<double(int)> cap_schedule;

  // Default schedule: cap_scale times the mean edge arc of the level-i mesh.
  static CfrcConfig defaults(int max_level = 5, double cap_scale = 2.0);
  // Keeps every candidate at every level; equivalent to a full grid scan.
  static CfrcConfig no_contraction(int max_level);

  double cap_half_angle(int level) const { return cap_schedule(level); }
  void validate() const;
};

std::function<double(int)> edge_scaled_cap_schedule(double cap_scale);

enum class Refinement { kMeridianCentered, kBetweenPoints };

std::string to_string(Refinement r);

struct AsapConfig {
  StripSet strips{{10.0, 35.0, 60.0, 85.0}, 10.0};
  CfrcConfig cfrc = CfrcConfig::defaults();
  Refinement variant = Refinement::kBetweenPoints;
  double mc_half_window = 15.0;  // degrees
  double mc_step = 1.0;          // degrees
  double bp_step = 0.5;          // degrees of arc
  bool quad_refine = true;
  double stage2_window = 15.0;  // degrees; bounds the MC elevation window

  void validate() const;
};

SearchResult full_grid_search(const SrpEvaluator& ev, int level);

SearchResult cfrc_search(const SrpEvaluator& ev, const CfrcConfig& cfg,
                         EvalTrace* trace = nullptr);

struct Stage1Result {
  double azimuth = 0.0;        // degrees, of the best vector
  std::vector<Vec3> top;       // best first; 1 entry for MC, up to 2 for BP
  std::vector<double> top_scores;
  std::uint64_t evaluations = 0;
};

// Region contraction restricted to the elevation strips at every level.
// Throws std::invalid_argument when no start-level vertex lies in a strip.
Stage1Result asap_stage1(const SrpEvaluator& ev, const AsapConfig& cfg,
                         EvalTrace* trace = nullptr);

// Vertex offset of the parabola through (-step, p_minus), (0, p_0),
// (step, p_plus). Zero for a degenerate (flat) triple; clamped to
// [-step, step].
double quad_interp_peak(double p_minus, double p_0, double p_plus, double step);

struct RefineResult {
  Direction direction;
  Vec3 unit = Vec3::Zero();
  // Score at the discrete maximizer, or the fitted parabola's peak value
  // when quadratic refinement moved the estimate.
  double score = 0.0;
  std::uint64_t evaluations = 0;
};

// Elevation scan along azimuth `azimuth` over
// [max(0, elevation - half_window), min(90, elevation + half_window)].
RefineResult mc_refine(const SrpEvaluator& ev, double azimuth, double elevation,
                       double half_window, double step, bool quad,
                       EvalTrace* trace = nullptr);

// Scan of the great-circle arc from u1 to u2 at roughly `step_deg` spacing.
RefineResult bp_refine(const SrpEvaluator& ev, const Vec3& u1, const Vec3& u2,
                       double step_deg, bool quad, EvalTrace* trace = nullptr);

SearchResult asap_search(const SrpEvaluator& ev, const AsapConfig& cfg);

}  // namespace asap

#endif  // ASAP_SEARCH_HPP_
