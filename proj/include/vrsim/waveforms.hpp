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

#ifndef VRSIM_WAVEFORMS_HPP
#define VRSIM_WAVEFORMS_HPP

#include <string_view>

namespace vrsim {

enum class WaveformKind {
  kConstantTone,     ///< c sin(2π f t + φ)
  kDecayingTone,     ///< c (1 - t/T) sin(2π f t + φ) on [0, T], zero afterwards
  kSweptTone,        ///< c cos(2π ∫₀ᵗ f(τ) dτ + φ), f oscillating between f_0 and f_a
  kSinusoidCurrent,  ///< A sin(2π f_I t + φ), amperes
};

std::string_view to_string(WaveformKind k) noexcept;

/// Parametric continuous-time attack signal. Immutable once built; use the
/// make_* factories, which enforce the parameter domain.
///
/// Field use by kind:
///   ConstantTone     amplitude, frequency, phase
///   DecayingTone     amplitude, frequency, period (decay time), phase
///   SweptTone        amplitude, frequency (f_0), target_frequency (f_a),
///                    period (sweep period), phase
///   SinusoidCurrent  amplitude (A), frequency (f_I), phase
struct Waveform {
  WaveformKind kind = WaveformKind::kConstantTone;
  double amplitude = 0.0;
  double frequency = 1.0;
  double target_frequency = 0.0;
  double period = 0.0;
  double phase = 0.0;

  /// Acoustic kinds can drive a resonating gyroscope; currents cannot.
  bool is_acoustic() const noexcept { return kind != WaveformKind::kSinusoidCurrent; }
};

Waveform make_constant_tone(double amplitude, double frequency, double phase = 0.0);
Waveform make_decaying_tone(double amplitude, double decay_period, double frequency, double phase = 0.0);
Waveform make_swept_tone(double amplitude, double start_frequency, double target_frequency,
                         double sweep_period, double phase = 0.0);
Waveform make_sinusoid_current(double amplitude, double frequency, double phase = 0.0);

/// Same waveform with amplitude multiplied by `factor` (factor >= 0).
Waveform scaled(const Waveform& w, double factor);

/// Amplitude envelope at t: linear ramp-down for the decaying tone, the
/// constant amplitude otherwise, zero past the decay window.
double envelope(const Waveform& w, double t);

/// Instantaneous frequency in hertz; constant except for the swept tone.
double instantaneous_frequency(const Waveform& w, double t);

/// Closed-form ∫₀ᵗ f(τ) dτ in cycles (multiply by 2π for radians).
double accumulated_cycles(const Waveform& w, double t);

/// Signal value at t >= 0.
double eval_waveform(const Waveform& w, double t);

}  // namespace vrsim

#endif  // VRSIM_WAVEFORMS_HPP
