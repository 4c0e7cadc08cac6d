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

#include "asap/search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace asap {

std::function<double(int)> edge_scaled_cap_schedule(double cap_scale) {
  if (!(cap_scale > 0.0)) throw std::invalid_argument("cap scale must be positive");
  return [cap_scale](int level) {
    return std::min(kPi, cap_scale * hemisphere_grid(level).mean_edge_arc());
  };
}

CfrcConfig CfrcConfig::defaults(int max_level, double cap_scale) {
  CfrcConfig cfg;
  cfg.max_level = max_level;
  cfg.cap_schedule = edge_scaled_cap_schedule(cap_scale);
  return cfg;
}

CfrcConfig CfrcConfig::no_contraction(int max_level) {
  CfrcConfig cfg;
  cfg.max_level = max_level;
  cfg.top_n = static_cast<int>(icosphere_vertex_count(max_level));
  cfg.cap_schedule = [](int) { return kPi; };
  return cfg;
}

void CfrcConfig::validate() const {
  if (start_level < kMinGridLevel || max_level > kMaxGridLevel || start_level > max_level)
    throw std::invalid_argument("CFRC levels must satisfy 1 <= start_level <= max_level <= 7");
  if (top_n < 1) throw std::invalid_argument("CFRC top_n must be at least 1");
  if (!cap_schedule) throw std::invalid_argument("CFRC cap schedule is not set");
  double previous = std::numeric_limits<double>::infinity();
  for (int level = start_level; level < max_level; ++level) {
    const double alpha = cap_schedule(level);
    if (!(alpha > 0.0 && alpha <= kPi))
      throw std::invalid_argument("CFRC cap half-angle must be in (0, pi]");
    if (alpha > previous)
      throw std::invalid_argument("CFRC cap half-angles must not grow with level");
    previous = alpha;
  }
}

std::string to_string(Refinement r) {
  return r == Refinement::kMeridianCentered ? "MC" : "BP";
}

void AsapConfig::validate() const {
  cfrc.validate();
  if (!(mc_half_window > 0.0)) throw std::invalid_argument("MC half-window must be positive");
  if (!(mc_step > 0.0)) throw std::invalid_argument("MC elevation step must be positive");
  if (!(bp_step > 0.0)) throw std::invalid_argument("BP arc step must be positive");
  if (!(stage2_window > 0.0)) throw std::invalid_argument("stage-2 window must be positive");
}

namespace {

void record(EvalTrace* trace, const Vec3& u) {
  if (trace) trace->push_back(u);
}

SearchResult make_result(const Vec3& unit, double score, std::uint64_t stage1,
                         std::uint64_t stage2) {
  SearchResult r;
  r.unit = unit;
  r.direction = unit_to_dir(unit);
  r.score = score;
  r.stage1_evals = stage1;
  r.stage2_evals = stage2;
  r.evaluations = stage1 + stage2;
  return r;
}

// Outcome of a region-contraction run, indexed into the finest hemisphere
// grid (coarser hemisphere grids are prefixes of it).
struct Contraction {
  std::vector<std::size_t> ranking;  // every evaluated vertex, best first
  std::vector<double> scores;        // NaN where not evaluated
  std::uint64_t evaluations = 0;
};

Contraction contract(const SrpEvaluator& ev, const CfrcConfig& cfg, const StripSet* strips,
                     EvalTrace* trace) {
  cfg.validate();
  const DirectionGrid& finest = hemisphere_grid(cfg.max_level);
  Contraction out;
  out.scores.assign(finest.size(), std::numeric_limits<double>::quiet_NaN());

  auto admissible = [&](const Vec3& u) { return !strips || in_strips(*strips, u); };

  std::vector<std::size_t> candidates;
  {
    const DirectionGrid& start = hemisphere_grid(cfg.start_level);
    for (std::size_t i = 0; i < start.size(); ++i)
      if (admissible(start[i])) candidates.push_back(i);
  }
  if (candidates.empty())
    throw std::invalid_argument("no level-" + std::to_string(cfg.start_level) +
                                " grid point lies inside the elevation strips");

  const auto by_score = [&](std::size_t a, std::size_t b) {
    if (out.scores[a] != out.scores[b]) return out.scores[a] > out.scores[b];
    return a < b;
  };

  std::vector<Vec3> batch;
  std::vector<std::size_t> batch_index;
  for (int level = cfg.start_level;; ++level) {
    batch.clear();
    batch_index.clear();
    for (std::size_t i : candidates) {
      if (!std::isnan(out.scores[i])) continue;
      batch.push_back(finest[i]);
      batch_index.push_back(i);
      record(trace, finest[i]);
    }
    if (!batch.empty()) {
      const auto scores = ev.power_batch(batch);
      for (std::size_t k = 0; k < scores.size(); ++k) out.scores[batch_index[k]] = scores[k];
      out.evaluations += batch.size();
    }
    if (level == cfg.max_level) break;

    const auto keep = std::min(candidates.size(), static_cast<std::size_t>(cfg.top_n));
    std::partial_sort(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(keep),
                      candidates.end(), by_score);
    const double alpha = cfg.cap_half_angle(level);
    std::vector<SphericalCap> caps;
    caps.reserve(keep);
    for (std::size_t k = 0; k < keep; ++k) caps.emplace_back(finest[candidates[k]], alpha);

    const DirectionGrid& next_grid = hemisphere_grid(level + 1);
    std::vector<std::size_t> next;
    for (std::size_t i = 0; i < next_grid.size(); ++i) {
      const Vec3& u = next_grid[i];
      if (!admissible(u)) continue;
      if (std::any_of(caps.begin(), caps.end(),
                      [&](const SphericalCap& c) { return cap_contains(c, u); }))
        next.push_back(i);
    }
    // Nothing inside the caps: keep the retained maxima and stop.
    if (next.empty()) break;
    candidates = std::move(next);
  }

  for (std::size_t i = 0; i < out.scores.size(); ++i)
    if (!std::isnan(out.scores[i])) out.ranking.push_back(i);
  std::sort(out.ranking.begin(), out.ranking.end(), by_score);
  return out;
}

}  // namespace

SearchResult full_grid_search(const SrpEvaluator& ev, int level) {
  const DirectionGrid& grid = hemisphere_grid(level);
  const auto scores = ev.power_batch(grid.vertices());
  std::size_t best = 0;
  for (std::size_t i = 1; i < scores.size(); ++i)
    if (scores[i] > scores[best]) best = i;
  return make_result(grid[best], scores[best], scores.size(), 0);
}

SearchResult cfrc_search(const SrpEvaluator& ev, const CfrcConfig& cfg, EvalTrace* trace) {
  const Contraction c = contract(ev, cfg, nullptr, trace);
  const std::size_t best = c.ranking.front();
  return make_result(hemisphere_grid(cfg.max_level)[best], c.scores[best], c.evaluations, 0);
}

Stage1Result asap_stage1(const SrpEvaluator& ev, const AsapConfig& cfg, EvalTrace* trace) {
  cfg.validate();
  const Contraction c = contract(ev, cfg.cfrc, &cfg.strips, trace);
  const DirectionGrid& finest = hemisphere_grid(cfg.cfrc.max_level);
  const std::size_t k = cfg.variant == Refinement::kBetweenPoints ? 2 : 1;

  Stage1Result out;
  out.evaluations = c.evaluations;
  for (std::size_t j = 0; j < std::min(k, c.ranking.size()); ++j) {
    out.top.push_back(finest[c.ranking[j]]);
    out.top_scores.push_back(c.scores[c.ranking[j]]);
  }
  out.azimuth = unit_to_dir(out.top.front()).azimuth();
  return out;
}

double quad_interp_peak(double p_minus, double p_0, double p_plus, double step) {
  const double denom = p_minus - 2.0 * p_0 + p_plus;
  if (!(std::abs(denom) >= 1e-12 * std::max(1.0, std::abs(p_0)))) return 0.0;
  const double offset = 0.5 * step * (p_minus - p_plus) / denom;
  return std::clamp(offset, -step, step);
}

namespace {

// Value of the parabola through the three samples at the refined offset.
double parabola_value(double p_minus, double p_0, double p_plus, double x) {
  const double b = 0.5 * (p_plus - p_minus);
  const double a = 0.5 * (p_plus + p_minus) - p_0;
  return p_0 + b * x + a * x * x;
}

}  // namespace

RefineResult mc_refine(const SrpEvaluator& ev, double azimuth, double elevation,
                       double half_window, double step, bool quad, EvalTrace* trace) {
  if (!(half_window > 0.0) || !(step > 0.0))
    throw std::invalid_argument("MC refinement needs a positive window and step");
  const double lo = std::max(0.0, elevation - half_window);
  const double hi = std::min(90.0, elevation + half_window);

  std::vector<double> grid;
  const auto n = static_cast<long>(std::floor((hi - lo) / step + 1e-9));
  for (long i = 0; i <= n; ++i) grid.push_back(std::min(hi, lo + static_cast<double>(i) * step));
  // The upper endpoint is always sampled, possibly closer than one step.
  if (hi - grid.back() > 1e-9) grid.push_back(hi);

  std::vector<Vec3> points;
  points.reserve(grid.size());
  for (double theta : grid) {
    points.push_back(dir_to_unit(Direction(azimuth, theta)));
    record(trace, points.back());
  }
  const auto scores = ev.power_batch(points);

  std::size_t best = 0;
  for (std::size_t i = 1; i < scores.size(); ++i)
    if (scores[i] > scores[best]) best = i;

  double theta = grid[best];
  double score = scores[best];
  // Both neighbours must sit exactly one step away for the fit.
  const bool interior = best > 0 && best + 1 < grid.size() &&
                        std::abs((grid[best + 1] - grid[best]) - step) < 1e-9;
  if (quad && interior) {
    const double offset = quad_interp_peak(scores[best - 1], scores[best], scores[best + 1], step);
    theta = std::clamp(theta + offset, 0.0, 90.0);
    score = parabola_value(scores[best - 1], scores[best], scores[best + 1], offset / step);
  }

  RefineResult r;
  r.direction = Direction(azimuth, theta);
  r.unit = dir_to_unit(r.direction);
  r.score = score;
  r.evaluations = scores.size();
  return r;
}

RefineResult bp_refine(const SrpEvaluator& ev, const Vec3& u1, const Vec3& u2, double step_deg,
                       bool quad, EvalTrace* trace) {
  if (!(step_deg > 0.0)) throw std::invalid_argument("BP arc step must be positive");
  const double alpha = arc_between(u1, u2);
  RefineResult r;
  if (alpha < 1e-6) {
    record(trace, u1);
    r.score = ev.power(u1);
    r.unit = u1;
    r.direction = unit_to_dir(u1);
    r.evaluations = 1;
    return r;
  }

  const double alpha_deg = rad2deg(alpha);
  const auto n = static_cast<std::size_t>(std::ceil(alpha_deg / step_deg)) + 1;
  std::vector<double> ts(n);
  std::vector<Vec3> points(n);
  for (std::size_t j = 0; j < n; ++j) {
    ts[j] = static_cast<double>(j) / static_cast<double>(n - 1);
    points[j] = slerp(u1, u2, ts[j]);
    record(trace, points[j]);
  }
  const auto scores = ev.power_batch(points);

  std::size_t best = 0;
  for (std::size_t j = 1; j < n; ++j)
    if (scores[j] > scores[best]) best = j;

  Vec3 unit = points[best];
  double score = scores[best];
  if (quad && best > 0 && best + 1 < n) {
    // Fit along the arc parameter measured in degrees of arc.
    const double spacing = alpha_deg / static_cast<double>(n - 1);
    const double offset =
        quad_interp_peak(scores[best - 1], scores[best], scores[best + 1], spacing);
    const double t = std::clamp(ts[best] + offset / alpha_deg, 0.0, 1.0);
    unit = slerp(u1, u2, t);
    score = parabola_value(scores[best - 1], scores[best], scores[best + 1], offset / spacing);
  }
  r.unit = unit;
  r.direction = unit_to_dir(unit);
  r.score = score;
  r.evaluations = n;
  return r;
}

SearchResult asap_search(const SrpEvaluator& ev, const AsapConfig& cfg) {
  const Stage1Result s1 = asap_stage1(ev, cfg);
  RefineResult s2;
  if (cfg.variant == Refinement::kMeridianCentered) {
    const Direction provisional = unit_to_dir(s1.top.front());
    s2 = mc_refine(ev, s1.azimuth, provisional.elevation(),
                   std::min(cfg.mc_half_window, cfg.stage2_window), cfg.mc_step,
                   cfg.quad_refine);
  } else {
    const Vec3& u2 = s1.top.size() > 1 ? s1.top[1] : s1.top.front();
    s2 = bp_refine(ev, s1.top.front(), u2, cfg.bp_step, cfg.quad_refine);
  }
  SearchResult r;
  r.direction = s2.direction;
  r.unit = s2.unit;
  r.score = s2.score;
  r.stage1_evals = s1.evaluations;
  r.stage2_evals = s2.evaluations;
  r.evaluations = s1.evaluations + s2.evaluations;
  return r;
}

}  // namespace asap
