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

#ifndef VRSIM_PERCEPTION_HPP
#define VRSIM_PERCEPTION_HPP

#include <Eigen/Core>
#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "vrsim/series.hpp"

namespace vrsim {

/// Population-level detection thresholds.
struct ThresholdSet {
  double speed_ratio_jnd = 0.2;   ///< v_attack / v_true at which drift is noticed
  double hand_offset_jnd = 0.09;  ///< m
  double walking_speed = 1.35;    ///< m/s
};

void validate(const ThresholdSet& th);

struct WalkScenario {
  double virtual_distance = 2.25;  ///< m to the (virtual) safety boundary
  double gain = 1.0;               ///< virtual / real displacement, in (0, 1]
  double boundary_offset = 0.0;    ///< m, reported alongside
};

struct WalkOutcome {
  double real_distance = 0.0;
  double overshoot = 0.0;
};

/// real = D / k, overshoot = D (1/k - 1). Throws kDomain unless 0 < k <= 1.
WalkOutcome real_walk_distance(const WalkScenario& s);

/// v_a / v_t > speed_ratio_jnd; a ratio on the threshold (within 1e-12
/// relative) is not detectable. Throws kDomain for v_t <= 0 or v_a < 0.
bool is_speed_attack_detectable(double attack_speed, double true_speed, const ThresholdSet& th);

/// d >= hand_offset_jnd, inclusive to 1e-12 relative.
bool is_hand_offset_detectable(double offset, const ThresholdSet& th);

struct ArmPose {
  double shoulder = 0.0;  ///< rad from +x
  double elbow = 0.0;     ///< rad relative to the upper arm; >= 0 on the elbow-down branch
  double upper_arm = 0.0; ///< L1, m
  double forearm = 0.0;   ///< L2, m
  Eigen::Vector2d wrist = Eigen::Vector2d::Zero();
};

/// Planar two-link inverse kinematics, elbow-down branch. Throws kReach
/// when the target lies outside the annulus |L1 - L2| <= |target| <= L1 + L2.
ArmPose arm_ik(const Eigen::Vector2d& wrist_target, double upper_arm, double forearm);

/// Wrist position for joint angles.
Eigen::Vector2d arm_fk(double shoulder, double elbow, double upper_arm, double forearm);

struct DizzinessFrame {
  std::int64_t frame = 0;
  double h_flow = 0.0;     ///< px/frame
  double v_flow = 0.0;     ///< px/frame
  double disparity = 0.0;  ///< px
};

struct DizzinessCloud {
  std::vector<DizzinessFrame> frames;
};

/// Per-frame first differences of display position; frame i (1-based) pairs
/// x[i] - x[i-1], y[i] - y[i-1] with depth[i].
DizzinessCloud dizziness_triples(const SampleSeries& display_x, const SampleSeries& display_y,
                                 const SampleSeries& depth);

struct DispersionWeights {
  double h_flow = 2.0;
  double v_flow = 1.0;
  double disparity = 1.0;
  /// Score 1/disparity instead of disparity, so spread among distant
  /// (small-disparity) content dominates.
  bool inverse_disparity = false;
};

/// sqrt(w_h var(h) + w_v var(v) + w_d var(d)), population variances.
double dispersion_score(const DizzinessCloud& cloud, const DispersionWeights& w = {});

/// Display-space motion of a synthetic scene, one sample per frame.
struct DisplayTrack {
  SampleSeries x;      ///< px
  SampleSeries y;      ///< px
  SampleSeries depth;  ///< disparity proxy, px
};

/// Parameters of the synthetic display profiles.
struct DisplayModel {
  double frame_rate = 72.0;        ///< Hz
  double pixels_per_mm = 10.0;     ///< image shift per mm of IPD change
  double base_disparity = 20.0;    ///< px
  double gameplay_h_flow = 1.0;    ///< stationary std of horizontal flow, px/frame
  double gameplay_v_flow = 0.5;    ///< px/frame
  double gameplay_disparity = 3.0; ///< px
};

/// A user who does not move: every track is constant.
DisplayTrack stationary_display(const DisplayModel& m, double duration);

/// Ordinary head motion: first-order autoregressive flow (coefficient 0.95)
/// with the configured stationary spreads; seeded.
DisplayTrack gameplay_display(const DisplayModel& m, double duration, std::uint64_t seed);

/// Adds IPD jitter to a track: each eye image shifts by half the IPD bias
/// and the binocular disparity by the full bias.
DisplayTrack apply_ipd_jitter(DisplayTrack track, const SampleSeries& ipd_bias_mm, const DisplayModel& m);

/// `frame,h_flow,v_flow,disparity` rows.
void write_csv(std::ostream& os, const DizzinessCloud& cloud);
void write_csv(const std::string& path, const DizzinessCloud& cloud);
DizzinessCloud read_dizziness_csv(std::istream& is);
DizzinessCloud read_dizziness_csv_file(const std::string& path);

}  // namespace vrsim

#endif  // VRSIM_PERCEPTION_HPP
