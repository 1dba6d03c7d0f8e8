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

#ifndef VRSIM_FUSION_HPP
#define VRSIM_FUSION_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "vrsim/series.hpp"

namespace vrsim {

/// Dual-rate fusion: gyro prediction at imu_rate, camera correction at
/// camera_rate, with innovation-driven process-noise adaptation.
struct FusionConfig {
  double imu_rate = 500.0;               ///< Hz
  double camera_rate = 30.0;             ///< Hz
  double measurement_variance = 9e-6;    ///< nominal camera variance R, rad^2
  double process_variance = 1e-4;        ///< initial Q, rad^2 per second
  int adapt_window = 30;                 ///< updates in the innovation window
  double camera_noise = 1e-3;            ///< simulated camera sigma, rad
  double initial_variance = 1e-2;        ///< P at t = 0, rad^2
  double process_floor = 1e-14;          ///< lower clamp on adapted Q
  double process_ceiling = 1.0;          ///< upper clamp on adapted Q
  double bias_window = 1.0;              ///< trailing seconds averaged into final_bias
};

void validate(const FusionConfig& cfg);

struct EskfState {
  double nominal = 0.0;     ///< x̂, rad
  double error = 0.0;       ///< last injected correction δx̂, rad
  double variance = 0.0;    ///< P, rad^2
  double gain = 0.0;        ///< K of the most recent update
  double process = 0.0;     ///< current adapted Q, rad^2 per second
};

struct GainSample {
  double t = 0.0;
  double gain = 0.0;
  double residual = 0.0;
};

struct GainTrace {
  std::vector<GainSample> samples;
};

struct BypassCandidate {
  double frequency = 0.0;  ///< f_a = m imu_rate + n camera_rate
  std::int64_t m = 0;
  int n = 0;
};

/// Every f_a = m·imu_rate + n·camera_rate with m >= 1 and 1 <= n <= n_max
/// inside [band_lo, band_hi], ordered by frequency. An inverted or
/// unreachable band yields an empty list.
std::vector<BypassCandidate> select_bypass_frequencies(double band_lo, double band_hi,
                                                       const FusionConfig& cfg, int n_max = 16);

/// Phase that puts the zero crossings of sin(2π f_obs t + φ) on every
/// camera update instant k / camera_rate. Throws kAlignment unless f_obs is
/// an integer multiple of camera_rate.
double phase_align(double observed_frequency, const FusionConfig& cfg);

struct EskfRun {
  double final_bias = 0.0;          ///< mean output error over the trailing bias_window
  double mean_abs_residual = 0.0;   ///< mean |Y - h(x̂)| over all updates
  GainTrace trace;
  SampleSeries output_error;        ///< estimate minus truth at each IMU sample
  EskfState final_state;
};

/// Stationary truth; the gyro carries attack_amp·sin(2π f_obs t + phase)
/// sampled at imu_rate. The camera reports truth plus N(0, camera_noise²)
/// drawn from `seed`. Each update applies
///   δx̂ = K (Y - x̂),  x = x̂ + δx̂
/// and rescales Q by (observed innovation power) / (predicted S) over the
/// last adapt_window updates, so residuals that stay below prediction drive
/// Q, P and K down.
EskfRun eskf_run(double observed_frequency, double attack_amp, double phase, double duration,
                 const FusionConfig& cfg, std::uint64_t seed = 0);

/// `t,K,residual` rows.
void write_csv(std::ostream& os, const GainTrace& trace);
void write_csv(const std::string& path, const GainTrace& trace);

}  // namespace vrsim

#endif  // VRSIM_FUSION_HPP
