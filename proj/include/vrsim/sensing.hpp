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

#ifndef VRSIM_SENSING_HPP
#define VRSIM_SENSING_HPP

#include <array>
#include <cstdint>
#include <functional>

#include "vrsim/series.hpp"
#include "vrsim/waveforms.hpp"

namespace vrsim {

/// Continuous-time rate signal, rad/s as a function of seconds.
using RateFunction = std::function<double(double)>;

/// Gyroscope/accelerometer physics relevant to acoustic injection.
struct ImuSpec {
  double sample_rate = 100.0;           ///< f_s, Hz
  double resonance_center = 27880.0;    ///< f_r, Hz
  double resonance_bandwidth = 60.0;    ///< f_w, Hz
  double transduction_gain = 1.0;       ///< k, rad/s per signal unit
  std::array<double, 3> gyro_bias{};    ///< rad/s
  std::array<double, 3> accel_bias{};   ///< m/s^2

  double band_low() const noexcept { return resonance_center - resonance_bandwidth / 2.0; }
  double band_high() const noexcept { return resonance_center + resonance_bandwidth / 2.0; }
  bool in_band(double f) const noexcept { return f >= band_low() && f <= band_high(); }
};

void validate(const ImuSpec& spec);

/// Hall-effect IPD feedback: an external coil field biases the reading.
struct HallSpec {
  double k_ipd = 5.0;      ///< mm per ampere
  double ipd_rest = 68.0;  ///< mm
  double ipd_min = 58.0;   ///< mm
  double ipd_max = 68.0;   ///< mm
};

void validate(const HallSpec& spec);

struct AliasResult {
  std::int64_t n = 0;       ///< fold index, integer nearest f_b / f_s
  double observed = 0.0;    ///< f_o = |f_b - n f_s|, in [0, f_s/2]
  /// +1 if f_b >= n f_s. Sampling sin(2π f_b t) yields sign * sin(2π f_o t).
  int sign = 1;
};

/// Folds a tone at f_b into the baseband of an ideal sampler at f_s.
/// Half-integer ratios (two valid n) resolve to the smaller n.
AliasResult alias_frequency(double tone_frequency, double sample_rate);

/// Gyro response to an acoustic waveform: k·envelope(t)·sin(2π f t + φ) if
/// the base frequency lies in the resonance band, identically zero
/// otherwise. Swept tones use their cosine-phase form scaled by k.
RateFunction transduce_acoustic(const Waveform& w, const ImuSpec& spec);

/// Samples covering [0, duration) at `rate`: round(duration·rate) when that
/// product is integral to 1e-9, otherwise its ceiling; at least one.
std::size_t sample_count(double duration, double rate);

/// f(t mod period); schedules a windowed signal to repeat.
RateFunction repeat_every(RateFunction f, double period);

/// Ideal instantaneous sampling at dt = 1/f_s over [0, duration):
/// values[i] = true_motion(i dt) + injected(i dt) + gyro_bias[axis].
SampleSeries sample_imu(const RateFunction& true_motion, const RateFunction& injected,
                        const ImuSpec& spec, double duration, int axis = 0);

/// Applied IPD bias (mm) after the resulting IPD is clamped to the device
/// range: bias = ipd_rest - clamp(ipd_rest - k_ipd I, ipd_min, ipd_max).
double hall_bias(double current, const HallSpec& spec);

/// IPD bias sampled at f_s for a sinusoidal coil current.
SampleSeries ipd_jitter_series(const Waveform& current, const HallSpec& spec, double sample_rate,
                               double duration);

}  // namespace vrsim

#endif  // VRSIM_SENSING_HPP
