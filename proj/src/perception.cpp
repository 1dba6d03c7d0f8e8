/*
 * Copyright 2026 The vrsim Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "vrsim/perception.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "vrsim/error.hpp"
#include "vrsim/rng.hpp"
#include "vrsim/sensing.hpp"

namespace vrsim {
namespace {

constexpr double kAutoregression = 0.95;
constexpr double kBoundarySlack = 1e-12;

double population_variance(const std::vector<double>& xs) {
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= static_cast<double>(xs.size());
  double acc = 0.0;
  for (double x : xs) acc += (x - mean) * (x - mean);
  return acc / static_cast<double>(xs.size());
}

SampleSeries frame_series(const DisplayModel& m, std::size_t n, double fill, Channel ch) {
  SampleSeries s;
  s.dt = 1.0 / m.frame_rate;
  s.channel = ch;
  s.values.assign(n, fill);
  return s;
}

// Zero-mean AR(1) sequence with stationary standard deviation `sigma`.
std::vector<double> ar1(std::size_t n, double sigma, CounterRng& rng) {
  std::vector<double> out(n);
  const double innovation = sigma * std::sqrt(1.0 - kAutoregression * kAutoregression);
  double state = sigma * rng.normal();
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = state;
    state = kAutoregression * state + innovation * rng.normal();
  }
  return out;
}

}  // namespace

void validate(const ThresholdSet& th) {
  if (!(th.speed_ratio_jnd > 0.0)) throw Error(Errc::kDomain, "speed_ratio_jnd", "must be positive");
  if (!(th.hand_offset_jnd > 0.0)) throw Error(Errc::kDomain, "hand_offset_jnd", "must be positive");
  if (!(th.walking_speed > 0.0)) throw Error(Errc::kDomain, "walking_speed", "must be positive");
}

WalkOutcome real_walk_distance(const WalkScenario& s) {
  if (!(s.gain > 0.0) || !(s.gain <= 1.0)) throw Error(Errc::kDomain, "gain", "must lie in (0, 1]");
  if (!(s.virtual_distance >= 0.0)) throw Error(Errc::kDomain, "virtual_distance", "must be >= 0");
  return {s.virtual_distance / s.gain, s.virtual_distance * (1.0 / s.gain - 1.0)};
}

bool is_speed_attack_detectable(double attack_speed, double true_speed, const ThresholdSet& th) {
  if (!(true_speed > 0.0)) throw Error(Errc::kDomain, "true_speed", "must be positive");
  if (!(attack_speed >= 0.0)) throw Error(Errc::kDomain, "attack_speed", "must be >= 0");
  // A ratio sitting on the threshold (to rounding) stays unnoticed.
  return attack_speed / true_speed > th.speed_ratio_jnd * (1.0 + kBoundarySlack);
}

bool is_hand_offset_detectable(double offset, const ThresholdSet& th) {
  if (!(offset >= 0.0)) throw Error(Errc::kDomain, "offset", "must be >= 0");
  return offset >= th.hand_offset_jnd * (1.0 - kBoundarySlack);
}

Eigen::Vector2d arm_fk(double shoulder, double elbow, double upper_arm, double forearm) {
  return {upper_arm * std::cos(shoulder) + forearm * std::cos(shoulder + elbow),
          upper_arm * std::sin(shoulder) + forearm * std::sin(shoulder + elbow)};
}

ArmPose arm_ik(const Eigen::Vector2d& wrist_target, double upper_arm, double forearm) {
  if (!(upper_arm > 0.0) || !(forearm > 0.0)) throw Error(Errc::kDomain, "links", "must be positive");
  if (!wrist_target.allFinite()) throw Error(Errc::kNumeric, "wrist target must be finite");
  const double reach = wrist_target.norm();
  const double slack = 1e-12 * (upper_arm + forearm);
  if (reach > upper_arm + forearm + slack || reach < std::abs(upper_arm - forearm) - slack) {
    throw Error(Errc::kReach, "wrist target at distance " + std::to_string(reach) +
                                  " m is outside the reachable annulus");
  }
  const double c = std::clamp(
      (reach * reach - upper_arm * upper_arm - forearm * forearm) / (2.0 * upper_arm * forearm), -1.0, 1.0);
  ArmPose pose;
  pose.elbow = std::acos(c);
  pose.shoulder = std::atan2(wrist_target.y(), wrist_target.x()) -
                  std::atan2(forearm * std::sin(pose.elbow), upper_arm + forearm * std::cos(pose.elbow));
  pose.upper_arm = upper_arm;
  pose.forearm = forearm;
  pose.wrist = arm_fk(pose.shoulder, pose.elbow, upper_arm, forearm);
  return pose;
}

DizzinessCloud dizziness_triples(const SampleSeries& display_x, const SampleSeries& display_y,
                                 const SampleSeries& depth) {
  if (display_x.size() != display_y.size() || display_x.size() != depth.size()) {
    throw Error(Errc::kShape, "display and depth series differ in length");
  }
  DizzinessCloud cloud;
  if (display_x.size() < 2) return cloud;
  cloud.frames.reserve(display_x.size() - 1);
  for (std::size_t i = 1; i < display_x.size(); ++i) {
    cloud.frames.push_back({static_cast<std::int64_t>(i), display_x.values[i] - display_x.values[i - 1],
                            display_y.values[i] - display_y.values[i - 1], depth.values[i]});
  }
  return cloud;
}

double dispersion_score(const DizzinessCloud& cloud, const DispersionWeights& w) {
  if (cloud.frames.empty()) throw Error(Errc::kDomain, "cloud", "must contain at least one frame");
  if (w.h_flow < 0.0 || w.v_flow < 0.0 || w.disparity < 0.0) {
    throw Error(Errc::kDomain, "weights", "must be >= 0");
  }
  std::vector<double> h, v, d;
  h.reserve(cloud.frames.size());
  v.reserve(cloud.frames.size());
  d.reserve(cloud.frames.size());
  for (const auto& f : cloud.frames) {
    h.push_back(f.h_flow);
    v.push_back(f.v_flow);
    if (w.inverse_disparity) {
      if (f.disparity == 0.0) throw Error(Errc::kDomain, "disparity", "must be nonzero for inverse weighting");
      d.push_back(1.0 / f.disparity);
    } else {
      d.push_back(f.disparity);
    }
  }
  return std::sqrt(w.h_flow * population_variance(h) + w.v_flow * population_variance(v) +
                   w.disparity * population_variance(d));
}

DisplayTrack stationary_display(const DisplayModel& m, double duration) {
  const std::size_t n = sample_count(duration, m.frame_rate);
  return {frame_series(m, n, 0.0, Channel::kFlowH), frame_series(m, n, 0.0, Channel::kFlowV),
          frame_series(m, n, m.base_disparity, Channel::kDisparity)};
}

DisplayTrack gameplay_display(const DisplayModel& m, double duration, std::uint64_t seed) {
  DisplayTrack track = stationary_display(m, duration);
  const std::size_t n = track.x.size();
  CounterRng rng_h(seed, 1), rng_v(seed, 2), rng_d(seed, 3);
  const auto h_flow = ar1(n, m.gameplay_h_flow, rng_h);
  const auto v_flow = ar1(n, m.gameplay_v_flow, rng_v);
  const auto d_dev = ar1(n, m.gameplay_disparity, rng_d);
  double x = 0.0;
  double y = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0) {
      x += h_flow[i];
      y += v_flow[i];
    }
    track.x.values[i] = x;
    track.y.values[i] = y;
    track.depth.values[i] = m.base_disparity + d_dev[i];
  }
  return track;
}

DisplayTrack apply_ipd_jitter(DisplayTrack track, const SampleSeries& ipd_bias_mm, const DisplayModel& m) {
  if (ipd_bias_mm.size() != track.x.size()) throw Error(Errc::kShape, "IPD series length differs from display track");
  for (std::size_t i = 0; i < track.x.size(); ++i) {
    const double shift = ipd_bias_mm.values[i] * m.pixels_per_mm;
    track.x.values[i] += 0.5 * shift;
    track.depth.values[i] += shift;
  }
  return track;
}

void write_csv(std::ostream& os, const DizzinessCloud& cloud) {
  os << "frame,h_flow,v_flow,disparity\n";
  for (const auto& f : cloud.frames) {
    os << f.frame << ',' << format_number(f.h_flow) << ',' << format_number(f.v_flow) << ','
       << format_number(f.disparity) << '\n';
  }
}

void write_csv(const std::string& path, const DizzinessCloud& cloud) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error(Errc::kIo, "cannot open " + path + " for writing");
  write_csv(os, cloud);
  if (!os) throw Error(Errc::kIo, "failed writing " + path);
}

DizzinessCloud read_dizziness_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line.rfind("frame,h_flow,v_flow,disparity", 0) != 0) {
    throw Error(Errc::kValidation, "input", "expected header 'frame,h_flow,v_flow,disparity'");
  }
  DizzinessCloud cloud;
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    std::vector<double> cols;
    while (std::getline(ss, cell, ',')) {
      try {
        cols.push_back(std::stod(cell));
      } catch (const std::logic_error&) {
        throw Error(Errc::kValidation, "input", "line " + std::to_string(lineno) + ": not a number");
      }
    }
    if (cols.size() != 4) {
      throw Error(Errc::kValidation, "input", "line " + std::to_string(lineno) + ": expected four columns");
    }
    for (double c : cols) {
      if (!std::isfinite(c)) throw Error(Errc::kValidation, "input", "line " + std::to_string(lineno) + ": non-finite value");
    }
    cloud.frames.push_back({static_cast<std::int64_t>(cols[0]), cols[1], cols[2], cols[3]});
  }
  return cloud;
}

DizzinessCloud read_dizziness_csv_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error(Errc::kIo, "cannot open " + path);
  return read_dizziness_csv(is);
}

}  // namespace vrsim
