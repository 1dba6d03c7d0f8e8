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

#ifndef VRSIM_CONFIG_HPP
#define VRSIM_CONFIG_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "vrsim/defense.hpp"
#include "vrsim/fusion.hpp"
#include "vrsim/perception.hpp"
#include "vrsim/sensing.hpp"

namespace vrsim {

enum class CaseKind { kTrajectory, kAvatar, kDizziness };

std::string_view to_string(CaseKind k) noexcept;

/// Case 1: acoustic drift of the headset's own IMU.
struct TrajectoryParams {
  double omega_o = 0.2;                  ///< observed fluctuation amplitude, rad/s
  double observed_frequency = 5.0;       ///< f_o, Hz
  double decay_period = 1.0;             ///< T, s
  int axis = 1;                          ///< body gyro axis receiving the injection
  double heading = 0.0;                  ///< rad
  std::vector<double> sweep{5.0, 20.0, 40.0, 75.0};  ///< f_o values for the drift comparison
  WalkScenario walk{2.25, 0.8, 0.0};
};

/// Case 2: fusion bypass on the controller IMU.
struct AvatarParams {
  double band_low = 27100.0;       ///< Hz
  double band_high = 27150.0;      ///< Hz
  int n_max = 16;
  double attack_amp = 5.0;         ///< observed gyro amplitude, rad/s
  double control_frequency = 37.0; ///< misaligned observed frequency, Hz
  double upper_arm = 0.30;         ///< m
  double forearm = 0.25;           ///< m
  double wrist_x = 0.30;           ///< neutral wrist target, m
  double wrist_y = 0.25;           ///< m
};

/// Case 3: Hall-sensor IPD jitter.
struct DizzinessParams {
  double current_amplitude = 2.0;  ///< A
  double current_frequency = 0.5;  ///< Hz
  DisplayModel display;
  DispersionWeights weights;
};

struct ScenarioConfig {
  std::string name;
  CaseKind kind = CaseKind::kTrajectory;
  std::uint64_t seed = 0;
  double duration = 10.0;  ///< s
  ImuSpec imu;
  HallSpec hall;
  FusionConfig fusion;
  ThresholdSet thresholds;
  DetectorConfig detector;
  TrajectoryParams trajectory;
  AvatarParams avatar;
  DizzinessParams dizziness;
};

/// A list of scenarios run together. Scenarios without an explicit seed get
/// plan seed XOR index.
struct Plan {
  std::uint64_t seed = 0;
  std::vector<ScenarioConfig> scenarios;
};

/// Parses one scenario object. Unknown keys and out-of-domain values throw
/// kValidation whose field() is the dotted JSON path (e.g. `walk.gain`).
ScenarioConfig parse_config(const std::string& json_text);

/// Either a scenario object (has "case") or `{"seed":..,"scenarios":[..]}`.
Plan parse_plan(const std::string& json_text);

/// File variants; a missing file throws kIo.
ScenarioConfig load_config(const std::string& path);
Plan load_plan(const std::string& path);

/// Canonical JSON echo of a scenario, every field explicit.
std::string config_to_json(const ScenarioConfig& cfg);

}  // namespace vrsim

#endif  // VRSIM_CONFIG_HPP
