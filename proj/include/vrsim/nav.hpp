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

#ifndef VRSIM_NAV_HPP
#define VRSIM_NAV_HPP

#include <Eigen/Core>
#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "vrsim/sensing.hpp"
#include "vrsim/series.hpp"

namespace vrsim {

/// Rotation-velocity-position state of the tracked body in the world frame.
struct NavState {
  Eigen::Matrix3d R = Eigen::Matrix3d::Identity();
  Eigen::Vector3d v = Eigen::Vector3d::Zero();
  Eigen::Vector3d p = Eigen::Vector3d::Zero();
  double t = 0.0;
  /// Propagation steps taken; drives periodic re-orthonormalization.
  std::uint64_t steps = 0;
};

struct PropagationConfig {
  Eigen::Vector3d g{0.0, 0.0, -9.81};
  double dt = 0.01;
};

struct Trajectory {
  std::vector<NavState> states;
};

struct ErrorStats {
  double mae = 0.0;
  double rmse = 0.0;
};

/// Steps between polar re-projections of R onto SO(3).
inline constexpr std::uint64_t kReorthonormalizeEvery = 1000;

/// Rodrigues exponential of a rotation vector; series form below 1e-8 rad.
Eigen::Matrix3d so3_exp(const Eigen::Vector3d& theta);

/// Nearest rotation matrix (polar factor via SVD).
Eigen::Matrix3d project_to_so3(const Eigen::Matrix3d& m);

/// One preintegration step with the pre-step R and v:
///   R' = R exp((ω - b_ω) dt)
///   v' = v + g dt + R (a - b_a) dt
///   p' = p + v dt + ½ g dt² + ½ R (a - b_a) dt²
NavState propagate(const NavState& s, const Eigen::Vector3d& omega, const Eigen::Vector3d& accel,
                   const PropagationConfig& cfg, const ImuSpec& spec);

/// Orientation error accumulated by ∫₀ᵀ k (c - c t/T) sin(2π f t) dt over one
/// decay window, in closed form: (ck/ω)(1 - sin(ωT)/(ωT)) with ω = 2πf.
/// Zero at f = 0.
double theta_T_analytic(double amplitude, double gain, double observed_frequency, double decay_period);

/// Folds propagate over three gyro and three accel streams. All six
/// streams must share length and rate; cfg.dt is taken from them.
Trajectory dead_reckon(const std::array<SampleSeries, 3>& gyro, const std::array<SampleSeries, 3>& accel,
                       const PropagationConfig& cfg, const ImuSpec& spec, const NavState& initial);

/// Position MAE and RMSE over matched states (timestamps within 1e-9 s).
ErrorStats trajectory_errors(const Trajectory& est, const Trajectory& truth);

/// Straight-line constant-speed walk along a world-frame heading.
struct WalkProfile {
  double speed = 1.35;    ///< m/s
  double heading = 0.0;   ///< rad about world z
};

/// Injected fluctuation shape for the drift experiment: a decaying tone of
/// amplitude ω_o at f_o, restarted every decay_period, on one gyro axis.
struct DriftSetup {
  double decay_period = 1.0;  ///< s
  int axis = 1;               ///< body axis receiving the fluctuation (1 = pitch)
};

/// Ground-truth trajectory for `walk` sampled at spec.sample_rate.
Trajectory walk_truth(const WalkProfile& walk, const ImuSpec& spec, double duration,
                      const Eigen::Vector3d& g);

/// Ideal IMU readings (body frame) for `walk` plus bias.
std::array<SampleSeries, 3> walk_gyro(const WalkProfile& walk, const ImuSpec& spec, double duration);
std::array<SampleSeries, 3> walk_accel(const WalkProfile& walk, const ImuSpec& spec, double duration,
                                       const Eigen::Vector3d& g);

struct DriftResult {
  ErrorStats errors;
  Trajectory estimate;
  Trajectory truth;
  std::array<SampleSeries, 3> gyro;
};

/// Dead-reckons a synthetic walk with an injected observed fluctuation of
/// intensity ω_o at f_o and scores the estimate against truth.
DriftResult drift_experiment(double omega_o, double observed_frequency, double duration,
                             const WalkProfile& walk, const ImuSpec& spec = {},
                             const DriftSetup& setup = {});

/// `t,px,py,pz,qw,qx,qy,qz` rows; quaternions are sign-normalized to qw >= 0.
void write_csv(std::ostream& os, const Trajectory& traj);
void write_csv(const std::string& path, const Trajectory& traj);

}  // namespace vrsim

#endif  // VRSIM_NAV_HPP
