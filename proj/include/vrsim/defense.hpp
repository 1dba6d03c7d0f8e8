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

#ifndef VRSIM_DEFENSE_HPP
#define VRSIM_DEFENSE_HPP

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "vrsim/series.hpp"

namespace vrsim {

struct DetectorConfig {
  std::size_t window = 256;         ///< samples per analysis window, >= 16
  double snr_threshold_db = 10.0;   ///< peak over median bin power
  double corr_threshold = 0.5;      ///< minimum Pearson r between IMU and camera
  double exclusion_low = 0.0;       ///< Hz, bins in [low, high] are ignored
  double exclusion_high = 2.0;      ///< Hz
  std::size_t max_lag = 0;          ///< samples searched each side for correlation
};

void validate(const DetectorConfig& cfg);

enum class AlarmKind { kNarrowbandPeak, kCorrelationBreak };

std::string_view to_string(AlarmKind k) noexcept;

struct Alarm {
  double t = 0.0;       ///< window centre, s
  AlarmKind kind = AlarmKind::kNarrowbandPeak;
  double score = 0.0;   ///< dB for peaks, 1 - r for correlation breaks; never negative
  double frequency = 0.0;  ///< Hz of the peak bin; 0 for correlation breaks
};

/// Sliding windows with 50% overlap. Each window is reduced to a Welch
/// spectrum (quarter-length Hann segments) and flags a peak whose power
/// exceeds the median of the remaining bins by snr_threshold_db. Throws
/// kLength if the series is shorter than one window.
std::vector<Alarm> spectral_detect(const SampleSeries& s, const DetectorConfig& cfg = {});

/// Pearson correlation of IMU-derived and camera-derived motion per window;
/// raises an alarm when the best r over lags in [-max_lag, max_lag] falls
/// below corr_threshold. Windows where either stream is constant are skipped.
std::vector<Alarm> correlation_check(const SampleSeries& imu, const SampleSeries& camera,
                                     const DetectorConfig& cfg = {});

/// Haptic cue for vertical motion: (1 - exp(-|v_z|)) V_max.
double vibration_feedback(double vertical_speed, double v_max);

/// One JSON object per line: {"t":..,"kind":..,"score":..,"frequency":..}.
void write_alarms(std::ostream& os, const std::vector<Alarm>& alarms);

}  // namespace vrsim

#endif  // VRSIM_DEFENSE_HPP
