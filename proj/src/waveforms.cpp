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

#include "vrsim/waveforms.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "vrsim/error.hpp"

namespace vrsim {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw Error(Errc::kDomain, name, "must be positive and finite, got " + std::to_string(v));
  }
}

void require_amplitude(double v) {
  if (!(v >= 0.0) || !std::isfinite(v)) {
    throw Error(Errc::kDomain, "amplitude", "must be non-negative and finite, got " + std::to_string(v));
  }
}

void require_phase(double v) {
  if (!std::isfinite(v)) throw Error(Errc::kDomain, "phase", "must be finite");
}

}  // namespace

std::string_view to_string(WaveformKind k) noexcept {
  switch (k) {
    case WaveformKind::kConstantTone: return "constant_tone";
    case WaveformKind::kDecayingTone: return "decaying_tone";
    case WaveformKind::kSweptTone: return "swept_tone";
    case WaveformKind::kSinusoidCurrent: return "sinusoid_current";
  }
  return "unknown";
}

Waveform make_constant_tone(double amplitude, double frequency, double phase) {
  require_amplitude(amplitude);
  require_positive(frequency, "frequency");
  require_phase(phase);
  return {WaveformKind::kConstantTone, amplitude, frequency, 0.0, 0.0, phase};
}

Waveform make_decaying_tone(double amplitude, double decay_period, double frequency, double phase) {
  require_amplitude(amplitude);
  require_positive(decay_period, "decay_period");
  require_positive(frequency, "frequency");
  require_phase(phase);
  return {WaveformKind::kDecayingTone, amplitude, frequency, 0.0, decay_period, phase};
}

Waveform make_swept_tone(double amplitude, double start_frequency, double target_frequency,
                         double sweep_period, double phase) {
  require_amplitude(amplitude);
  require_positive(start_frequency, "start_frequency");
  require_positive(target_frequency, "target_frequency");
  require_positive(sweep_period, "sweep_period");
  require_phase(phase);
  return {WaveformKind::kSweptTone, amplitude, start_frequency, target_frequency, sweep_period, phase};
}

Waveform make_sinusoid_current(double amplitude, double frequency, double phase) {
  require_amplitude(amplitude);
  require_positive(frequency, "frequency");
  require_phase(phase);
  return {WaveformKind::kSinusoidCurrent, amplitude, frequency, 0.0, 0.0, phase};
}

Waveform scaled(const Waveform& w, double factor) {
  require_amplitude(factor);
  Waveform out = w;
  out.amplitude *= factor;
  return out;
}

double envelope(const Waveform& w, double t) {
  if (w.kind != WaveformKind::kDecayingTone) return w.amplitude;
  if (t < 0.0 || t > w.period) return 0.0;
  return -w.amplitude / w.period * t + w.amplitude;
}

double instantaneous_frequency(const Waveform& w, double t) {
  if (w.kind != WaveformKind::kSweptTone) return w.frequency;
  const double span = w.target_frequency - w.frequency;
  return span * (std::sin(kTwoPi * t / w.period) + 1.0) / 2.0 + w.frequency;
}

double accumulated_cycles(const Waveform& w, double t) {
  if (w.kind != WaveformKind::kSweptTone) return w.frequency * t;
  // ∫₀ᵗ [Δ/2 (sin(2πτ/T) + 1) + f_0] dτ = (f_0 + Δ/2) t + Δ T (1 - cos(2πt/T)) / (4π)
  const double span = w.target_frequency - w.frequency;
  return (w.frequency + span / 2.0) * t +
         span * w.period * (1.0 - std::cos(kTwoPi * t / w.period)) / (2.0 * kTwoPi);
}

double eval_waveform(const Waveform& w, double t) {
  switch (w.kind) {
    case WaveformKind::kConstantTone:
    case WaveformKind::kSinusoidCurrent:
      return w.amplitude * std::sin(kTwoPi * w.frequency * t + w.phase);
    case WaveformKind::kDecayingTone:
      if (t > w.period) return 0.0;
      return envelope(w, t) * std::sin(kTwoPi * w.frequency * t + w.phase);
    case WaveformKind::kSweptTone:
      return w.amplitude * std::cos(kTwoPi * accumulated_cycles(w, t) + w.phase);
  }
  return 0.0;
}

}  // namespace vrsim
