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

#include "asap/harness/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace asap {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double to_double(const std::string& key, const std::string& text) {
  double v = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end)
    throw std::invalid_argument(key + ": expected a number, got '" + text + "'");
  return v;
}

int to_int(const std::string& key, const std::string& text) {
  int v = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end)
    throw std::invalid_argument(key + ": expected an integer, got '" + text + "'");
  return v;
}

bool to_bool(const std::string& key, const std::string& text) {
  if (text == "true" || text == "1" || text == "on" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "off" || text == "no") return false;
  throw std::invalid_argument(key + ": expected true/false, got '" + text + "'");
}

std::vector<double> to_list(const std::string& key, const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(to_double(key, trim(item)));
  if (out.empty()) throw std::invalid_argument(key + ": empty list");
  return out;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

}  // namespace

ArrayGeometry PipelineConfig::geometry() const {
  return ArrayGeometry::uniform_circular(num_mics, radius);
}

CfrcConfig PipelineConfig::cfrc(int max_level) const {
  CfrcConfig cfg = CfrcConfig::defaults(max_level, cap_scale);
  cfg.start_level = start_level;
  cfg.top_n = top_n;
  cfg.validate();
  return cfg;
}

AsapConfig PipelineConfig::asap(int max_level, Refinement variant) const {
  AsapConfig cfg{StripSet(strip_centers, strip_half_width), cfrc(max_level), variant,
                 mc_half_window, mc_step, bp_step, quad_refine, stage2_window};
  cfg.validate();
  return cfg;
}

void PipelineConfig::set(const std::string& key, const std::string& raw) {
  const std::string value = trim(raw);
  if (key == "num_mics") num_mics = to_int(key, value);
  else if (key == "radius") radius = to_double(key, value);
  else if (key == "speed_of_sound") speed_of_sound = to_double(key, value);
  else if (key == "sample_rate") sample_rate = to_double(key, value);
  else if (key == "nfft") frames.nfft = to_int(key, value);
  else if (key == "overlap_fraction") frames.overlap_fraction = to_double(key, value);
  else if (key == "phat_epsilon") frames.phat_epsilon = to_double(key, value);
  else if (key == "min_freq") frames.min_freq = to_double(key, value);
  else if (key == "max_freq") frames.max_freq = to_double(key, value);
  else if (key == "f0") lfm.f0 = to_double(key, value);
  else if (key == "f1") lfm.f1 = to_double(key, value);
  else if (key == "duration") lfm.duration = to_double(key, value);
  else if (key == "start_level") start_level = to_int(key, value);
  else if (key == "top_n") top_n = to_int(key, value);
  else if (key == "cap_scale") cap_scale = to_double(key, value);
  else if (key == "strip_centers") strip_centers = to_list(key, value);
  else if (key == "strip_half_width") strip_half_width = to_double(key, value);
  else if (key == "mc_half_window") mc_half_window = to_double(key, value);
  else if (key == "mc_step") mc_step = to_double(key, value);
  else if (key == "bp_step") bp_step = to_double(key, value);
  else if (key == "quad_refine") quad_refine = to_bool(key, value);
  else if (key == "stage2_window") stage2_window = to_double(key, value);
  else throw std::invalid_argument("unknown configuration key '" + key + "'");
}

std::vector<std::pair<std::string, std::string>> PipelineConfig::snapshot() const {
  std::string centers;
  for (double c : strip_centers) centers += (centers.empty() ? "" : ",") + fmt(c);
  return {
      {"num_mics", std::to_string(num_mics)},
      {"radius", fmt(radius)},
      {"speed_of_sound", fmt(speed_of_sound)},
      {"sample_rate", fmt(sample_rate)},
      {"nfft", std::to_string(frames.nfft)},
      {"overlap_fraction", fmt(frames.overlap_fraction)},
      {"phat_epsilon", fmt(frames.phat_epsilon)},
      {"min_freq", fmt(frames.min_freq)},
      {"max_freq", fmt(frames.max_freq)},
      {"f0", fmt(lfm.f0)},
      {"f1", fmt(lfm.f1)},
      {"duration", fmt(lfm.duration)},
      {"start_level", std::to_string(start_level)},
      {"top_n", std::to_string(top_n)},
      {"cap_scale", fmt(cap_scale)},
      {"strip_centers", centers},
      {"strip_half_width", fmt(strip_half_width)},
      {"mc_half_window", fmt(mc_half_window)},
      {"mc_step", fmt(mc_step)},
      {"bp_step", fmt(bp_step)},
      {"quad_refine", quad_refine ? "true" : "false"},
      {"stage2_window", fmt(stage2_window)},
  };
}

PipelineConfig load_config(const std::string& path, PipelineConfig base) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(path + ": cannot open configuration file");
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": expected key = value");
    try {
      base.set(trim(line.substr(0, eq)), line.substr(eq + 1));
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return base;
}

}  // namespace asap
