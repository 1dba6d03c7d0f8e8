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

#include "vrsim/sensing.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "vrsim/error.hpp"

namespace vrsim {

std::size_t sample_count(double duration, double rate) {
  // Round first so 10 s at 100 Hz is exactly 1000 samples despite 0.1 not
  // being representable.
  const double exact = duration * rate;
  const double rounded = std::round(exact);
  const double n = std::abs(exact - rounded) < 1e-9 * std::max(1.0, exact) ? rounded : std::ceil(exact);
  return static_cast<std::size_t>(std::max(1.0, n));
}

void validate(const ImuSpec& spec) {
  if (!(spec.sample_rate > 0.0) || !std::isfinite(spec.sample_rate)) {
    throw Error(Errc::kDomain, "sample_rate", "must be positive");
  }
  if (!(spec.resonance_bandwidth >= 0.0)) throw Error(Errc::kDomain, "resonance_bandwidth", "must be >= 0");
  if (!(spec.resonance_center > 0.0)) throw Error(Errc::kDomain, "resonance_center", "must be positive");
  if (!std::isfinite(spec.transduction_gain)) throw Error(Errc::kDomain, "transduction_gain", "must be finite");
  for (double b : spec.gyro_bias) {
    if (!std::isfinite(b)) throw Error(Errc::kDomain, "gyro_bias", "must be finite");
  }
  for (double b : spec.accel_bias) {
    if (!std::isfinite(b)) throw Error(Errc::kDomain, "accel_bias", "must be finite");
  }
}

void validate(const HallSpec& spec) {
  if (!std::isfinite(spec.k_ipd)) throw Error(Errc::kDomain, "k_ipd", "must be finite");
  if (!(spec.ipd_min <= spec.ipd_rest && spec.ipd_rest <= spec.ipd_max)) {
    throw Error(Errc::kDomain, "ipd_rest", "must satisfy ipd_min <= ipd_rest <= ipd_max");
  }
}

AliasResult alias_frequency(double tone_frequency, double sample_rate) {
  if (!(tone_frequency > 0.0) || !(sample_rate > 0.0)) {
    throw Error(Errc::kDomain, "alias_frequency requires positive frequencies");
  }
  const double ratio = tone_frequency / sample_rate;
  const double lower = std::floor(ratio);
  const double frac = ratio - lower;
  // Ties (frac == 0.5) take the smaller n.
  const double n = frac > 0.5 ? lower + 1.0 : lower;
  const double diff = tone_frequency - n * sample_rate;
  AliasResult r;
  r.n = static_cast<std::int64_t>(n);
  r.observed = std::min(std::abs(diff), sample_rate / 2.0);
  r.sign = diff >= 0.0 ? 1 : -1;
  return r;
}

RateFunction transduce_acoustic(const Waveform& w, const ImuSpec& spec) {
  if (!w.is_acoustic()) {
    throw Error(Errc::kKind, "transduce_acoustic needs an acoustic waveform, got " +
                                 std::string(to_string(w.kind)));
  }
  // Swept tones are judged by both ends of their sweep: the rectangular
  // band passes the tone only while it stays inside.
  bool in_band = spec.in_band(w.frequency);
  if (w.kind == WaveformKind::kSweptTone) in_band = in_band && spec.in_band(w.target_frequency);
  if (!in_band) return [](double) { return 0.0; };
  const double k = spec.transduction_gain;
  return [w, k](double t) { return k * eval_waveform(w, t); };
}

RateFunction repeat_every(RateFunction f, double period) {
  if (!(period > 0.0)) throw Error(Errc::kDomain, "period", "must be positive");
  return [f = std::move(f), period](double t) {
    const double local = t - std::floor(t / period) * period;
    return f(local);
  };
}

SampleSeries sample_imu(const RateFunction& true_motion, const RateFunction& injected,
                        const ImuSpec& spec, double duration, int axis) {
  validate(spec);
  if (!(duration > 0.0)) throw Error(Errc::kDomain, "duration", "must be positive");
  if (axis < 0 || axis > 2) throw Error(Errc::kDomain, "axis", "must be 0, 1 or 2");
  const std::size_t n = sample_count(duration, spec.sample_rate);
  SampleSeries s;
  s.dt = 1.0 / spec.sample_rate;
  s.channel = static_cast<Channel>(static_cast<int>(Channel::kGyroX) + axis);
  s.values.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / spec.sample_rate;
    s.values[i] = true_motion(t) + injected(t) + spec.gyro_bias[static_cast<std::size_t>(axis)];
  }
  return s;
}

double hall_bias(double current, const HallSpec& spec) {
  const double raw = spec.k_ipd * current;
  const double ipd = std::clamp(spec.ipd_rest - raw, spec.ipd_min, spec.ipd_max);
  return spec.ipd_rest - ipd;
}

SampleSeries ipd_jitter_series(const Waveform& current, const HallSpec& spec, double sample_rate,
                               double duration) {
  if (current.kind != WaveformKind::kSinusoidCurrent) {
    throw Error(Errc::kKind, "ipd_jitter_series needs a sinusoid_current waveform");
  }
  validate(spec);
  if (!(sample_rate > 0.0)) throw Error(Errc::kDomain, "sample_rate", "must be positive");
  if (!(duration > 0.0)) throw Error(Errc::kDomain, "duration", "must be positive");
  const std::size_t n = sample_count(duration, sample_rate);
  SampleSeries s;
  s.dt = 1.0 / sample_rate;
  s.channel = Channel::kHall;
  s.values.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / sample_rate;
    s.values[i] = hall_bias(eval_waveform(current, t), spec);
  }
  return s;
}

}  // namespace vrsim
