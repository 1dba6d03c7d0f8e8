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

#include "vrsim/nav.hpp"

#include <Eigen/Geometry>
#include <Eigen/SVD>
#include <cmath>
#include <fstream>
#include <numbers>

#include "vrsim/error.hpp"

namespace vrsim {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Eigen::Matrix3d skew(const Eigen::Vector3d& w) {
  Eigen::Matrix3d m;
  m << 0.0, -w.z(), w.y(),
       w.z(), 0.0, -w.x(),
       -w.y(), w.x(), 0.0;
  return m;
}

bool all_finite(const Eigen::Vector3d& v) { return v.allFinite(); }

// 1 - sin(x)/x without cancellation near zero.
double one_minus_sinc(double x) {
  if (std::abs(x) < 0.1) {
    const double x2 = x * x;
    // Alternating Taylor series through x^12.
    return x2 * (1.0 / 6.0 -
                 x2 * (1.0 / 120.0 -
                       x2 * (1.0 / 5040.0 -
                             x2 * (1.0 / 362880.0 -
                                   x2 * (1.0 / 39916800.0 - x2 / 6227020800.0)))));
  }
  return 1.0 - std::sin(x) / x;
}

Eigen::Matrix3d heading_rotation(double heading) {
  return Eigen::AngleAxisd(heading, Eigen::Vector3d::UnitZ()).toRotationMatrix();
}

void require_same_grid(const SampleSeries& a, const SampleSeries& b) {
  if (a.size() != b.size()) throw Error(Errc::kShape, "IMU streams differ in length");
  if (std::abs(a.dt - b.dt) > 1e-12 * a.dt || std::abs(a.t0 - b.t0) > 1e-12) {
    throw Error(Errc::kShape, "IMU streams differ in rate or start time");
  }
}

}  // namespace

Eigen::Matrix3d so3_exp(const Eigen::Vector3d& theta) {
  const double angle = theta.norm();
  const Eigen::Matrix3d K = skew(theta);
  if (angle < 1e-8) {
    return Eigen::Matrix3d::Identity() + K + 0.5 * K * K;
  }
  const double a = std::sin(angle) / angle;
  const double b = (1.0 - std::cos(angle)) / (angle * angle);
  return Eigen::Matrix3d::Identity() + a * K + b * K * K;
}

Eigen::Matrix3d project_to_so3(const Eigen::Matrix3d& m) {
  Eigen::JacobiSVD<Eigen::Matrix3d> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Eigen::Matrix3d r = svd.matrixU() * svd.matrixV().transpose();
  if (r.determinant() < 0.0) {
    Eigen::Matrix3d u = svd.matrixU();
    u.col(2) *= -1.0;
    r = u * svd.matrixV().transpose();
  }
  return r;
}

NavState propagate(const NavState& s, const Eigen::Vector3d& omega, const Eigen::Vector3d& accel,
                   const PropagationConfig& cfg, const ImuSpec& spec) {
  if (!all_finite(omega) || !all_finite(accel) || !s.R.allFinite() || !s.v.allFinite() ||
      !s.p.allFinite() || !cfg.g.allFinite() || !std::isfinite(cfg.dt)) {
    throw Error(Errc::kNumeric, "propagate received a non-finite input");
  }
  if (!(cfg.dt > 0.0)) throw Error(Errc::kDomain, "dt", "must be positive");

  const Eigen::Vector3d gyro_bias(spec.gyro_bias[0], spec.gyro_bias[1], spec.gyro_bias[2]);
  const Eigen::Vector3d accel_bias(spec.accel_bias[0], spec.accel_bias[1], spec.accel_bias[2]);
  const double dt = cfg.dt;
  const Eigen::Vector3d world_accel = s.R * (accel - accel_bias);

  NavState out;
  out.R = s.R * so3_exp((omega - gyro_bias) * dt);
  out.v = s.v + cfg.g * dt + world_accel * dt;
  out.p = s.p + s.v * dt + 0.5 * cfg.g * dt * dt + 0.5 * world_accel * dt * dt;
  out.t = s.t + dt;
  out.steps = s.steps + 1;
  if (out.steps % kReorthonormalizeEvery == 0) out.R = project_to_so3(out.R);
  return out;
}

double theta_T_analytic(double amplitude, double gain, double observed_frequency, double decay_period) {
  if (!(decay_period > 0.0)) throw Error(Errc::kDomain, "decay_period", "must be positive");
  if (!(observed_frequency >= 0.0)) throw Error(Errc::kDomain, "observed_frequency", "must be >= 0");
  if (observed_frequency == 0.0) return 0.0;
  const double w = kTwoPi * observed_frequency;
  return amplitude * gain / w * one_minus_sinc(w * decay_period);
}

Trajectory dead_reckon(const std::array<SampleSeries, 3>& gyro, const std::array<SampleSeries, 3>& accel,
                       const PropagationConfig& cfg, const ImuSpec& spec, const NavState& initial) {
  for (const auto& s : gyro) require_same_grid(gyro[0], s);
  for (const auto& s : accel) require_same_grid(gyro[0], s);

  PropagationConfig step_cfg = cfg;
  step_cfg.dt = gyro[0].dt;

  Trajectory traj;
  traj.states.reserve(gyro[0].size() + 1);
  traj.states.push_back(initial);
  NavState s = initial;
  for (std::size_t k = 0; k < gyro[0].size(); ++k) {
    const Eigen::Vector3d w(gyro[0].values[k], gyro[1].values[k], gyro[2].values[k]);
    const Eigen::Vector3d a(accel[0].values[k], accel[1].values[k], accel[2].values[k]);
    s = propagate(s, w, a, step_cfg, spec);
    // Timestamps come from the grid, not accumulated dt.
    s.t = initial.t + static_cast<double>(k + 1) * step_cfg.dt;
    traj.states.push_back(s);
  }
  return traj;
}

ErrorStats trajectory_errors(const Trajectory& est, const Trajectory& truth) {
  if (est.states.size() != truth.states.size() || est.states.empty()) {
    throw Error(Errc::kAlignment, "trajectories differ in length");
  }
  double sum = 0.0;
  double sum_sq = 0.0;
  for (std::size_t i = 0; i < est.states.size(); ++i) {
    if (std::abs(est.states[i].t - truth.states[i].t) > 1e-9) {
      throw Error(Errc::kAlignment, "timestamp mismatch at state " + std::to_string(i));
    }
    const double e = (est.states[i].p - truth.states[i].p).norm();
    sum += e;
    sum_sq += e * e;
  }
  const double n = static_cast<double>(est.states.size());
  ErrorStats stats{sum / n, std::sqrt(sum_sq / n)};
  // sqrt(mean e²) >= mean e holds exactly; guard against last-ulp rounding.
  stats.rmse = std::max(stats.rmse, stats.mae);
  return stats;
}

Trajectory walk_truth(const WalkProfile& walk, const ImuSpec& spec, double duration,
                      const Eigen::Vector3d& /*g*/) {
  const auto n = sample_count(duration, spec.sample_rate);
  const double dt = 1.0 / spec.sample_rate;
  const Eigen::Matrix3d R = heading_rotation(walk.heading);
  const Eigen::Vector3d v = R * Eigen::Vector3d(walk.speed, 0.0, 0.0);
  Trajectory traj;
  traj.states.reserve(n + 1);
  for (std::size_t k = 0; k <= n; ++k) {
    NavState s;
    s.t = static_cast<double>(k) * dt;
    s.R = R;
    s.v = v;
    s.p = v * s.t;
    s.steps = k;
    traj.states.push_back(s);
  }
  return traj;
}

std::array<SampleSeries, 3> walk_gyro(const WalkProfile& /*walk*/, const ImuSpec& spec, double duration) {
  std::array<SampleSeries, 3> out;
  const auto n = sample_count(duration, spec.sample_rate);
  for (std::size_t axis = 0; axis < 3; ++axis) {
    out[axis].dt = 1.0 / spec.sample_rate;
    out[axis].channel = static_cast<Channel>(static_cast<int>(Channel::kGyroX) + static_cast<int>(axis));
    out[axis].values.assign(n, spec.gyro_bias[axis]);
  }
  return out;
}

std::array<SampleSeries, 3> walk_accel(const WalkProfile& walk, const ImuSpec& spec, double duration,
                                       const Eigen::Vector3d& g) {
  // Unaccelerated walk: the accelerometer reads specific force R^T (0 - g).
  const Eigen::Vector3d f = heading_rotation(walk.heading).transpose() * (-g);
  std::array<SampleSeries, 3> out;
  const auto n = sample_count(duration, spec.sample_rate);
  for (std::size_t axis = 0; axis < 3; ++axis) {
    out[axis].dt = 1.0 / spec.sample_rate;
    out[axis].channel = static_cast<Channel>(static_cast<int>(Channel::kAccelX) + static_cast<int>(axis));
    out[axis].values.assign(n, f[static_cast<Eigen::Index>(axis)] + spec.accel_bias[axis]);
  }
  return out;
}

DriftResult drift_experiment(double omega_o, double observed_frequency, double duration,
                             const WalkProfile& walk, const ImuSpec& spec, const DriftSetup& setup) {
  validate(spec);
  if (!(omega_o >= 0.0)) throw Error(Errc::kDomain, "omega_o", "must be >= 0");
  if (!(duration > 0.0)) throw Error(Errc::kDomain, "duration", "must be positive");
  if (setup.axis < 0 || setup.axis > 2) throw Error(Errc::kDomain, "axis", "must be 0, 1 or 2");

  PropagationConfig cfg;
  cfg.dt = 1.0 / spec.sample_rate;

  const Waveform fluctuation = make_decaying_tone(omega_o, setup.decay_period, observed_frequency);
  const RateFunction injected =
      repeat_every([fluctuation](double t) { return eval_waveform(fluctuation, t); }, setup.decay_period);

  DriftResult r;
  r.gyro = walk_gyro(walk, spec, duration);
  const auto axis = static_cast<std::size_t>(setup.axis);
  r.gyro[axis] = sample_imu([](double) { return 0.0; }, injected, spec, duration, setup.axis);
  const auto accel = walk_accel(walk, spec, duration, cfg.g);

  r.truth = walk_truth(walk, spec, duration, cfg.g);
  r.estimate = dead_reckon(r.gyro, accel, cfg, spec, r.truth.states.front());
  r.errors = trajectory_errors(r.estimate, r.truth);
  return r;
}

void write_csv(std::ostream& os, const Trajectory& traj) {
  os << "t,px,py,pz,qw,qx,qy,qz\n";
  for (const auto& s : traj.states) {
    Eigen::Quaterniond q(s.R);
    q.normalize();
    if (q.w() < 0.0) q.coeffs() *= -1.0;
    os << format_number(s.t) << ',' << format_number(s.p.x()) << ',' << format_number(s.p.y()) << ','
       << format_number(s.p.z()) << ',' << format_number(q.w()) << ',' << format_number(q.x()) << ','
       << format_number(q.y()) << ',' << format_number(q.z()) << '\n';
  }
}

void write_csv(const std::string& path, const Trajectory& traj) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error(Errc::kIo, "cannot open " + path + " for writing");
  write_csv(os, traj);
  if (!os) throw Error(Errc::kIo, "failed writing " + path);
}

}  // namespace vrsim
