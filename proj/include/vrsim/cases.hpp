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

#ifndef VRSIM_CASES_HPP
#define VRSIM_CASES_HPP

#include <optional>
#include <string>
#include <vector>

#include "vrsim/config.hpp"
#include "vrsim/nav.hpp"

namespace vrsim {

/// A named file produced by a run, held in memory until export.
struct Artifact {
  std::string name;
  std::string content;
};

struct SweepPoint {
  double observed_frequency = 0.0;
  ErrorStats errors;
};

struct TrajectoryMetrics {
  double theta_T = 0.0;               ///< rad, one decay window
  double injection_frequency = 0.0;   ///< in-band acoustic tone f_b, Hz
  AliasResult alias;
  ErrorStats errors;
  std::vector<SweepPoint> sweep;
  double sweep_ratio = 0.0;           ///< MAE at the first sweep point over the last
  double effective_gain = 1.0;
  WalkOutcome walk;
  double reference_overshoot = 0.597;     ///< user-study mean, informational
  double reference_overshoot_band = 0.15; ///< informational half-width
  bool overshoot_within_band = false;
  double attack_speed = 0.0;          ///< m/s
  double speed_ratio = 0.0;
  bool detectable = false;
};

struct FusionOutcome {
  double observed_frequency = 0.0;
  double phase = 0.0;
  double final_bias = 0.0;
  double mean_abs_residual = 0.0;
  double final_gain = 0.0;
};

struct AvatarMetrics {
  std::vector<BypassCandidate> candidates;
  bool feasible = false;
  BypassCandidate selected;
  AliasResult alias;
  FusionOutcome aligned;
  FusionOutcome control;
  double bias_ratio = 0.0;
  double residual_ratio = 0.0;
  double hand_offset = 0.0;       ///< m
  double shoulder_delta = 0.0;    ///< rad
  double elbow_delta = 0.0;       ///< rad
  bool detectable = false;
};

struct DizzinessMetrics {
  double ipd_bias_peak = 0.0;          ///< mm
  double jitter_frequency = 0.0;       ///< dominant frequency of the IPD bias, Hz
  double score_stationary = 0.0;
  double score_gameplay = 0.0;
  double score_attack = 0.0;
  bool ordering_holds = false;
  bool detector_ran = false;           ///< false when the series is shorter than one window
  std::size_t alarm_count = 0;
};

struct RunReport {
  ScenarioConfig config;
  std::string status = "ok";  ///< "ok" or "no_feasible_attack"
  std::optional<TrajectoryMetrics> trajectory;
  std::optional<AvatarMetrics> avatar;
  std::optional<DizzinessMetrics> dizziness;
  std::vector<Artifact> artifacts;  ///< report.json excluded
};

/// Smallest in-band tone f_b = n f_s ± f_o. Throws kDomain when the
/// resonance band contains none.
double design_injection_tone(double observed_frequency, const ImuSpec& spec);

RunReport run_case1(const ScenarioConfig& cfg);
RunReport run_case2(const ScenarioConfig& cfg);
RunReport run_case3(const ScenarioConfig& cfg);

/// Dispatches on cfg.kind.
RunReport run_scenario(const ScenarioConfig& cfg);

/// report.json body: scenario echo, status, metrics and the artifact list
/// with byte counts and SHA-256 digests.
std::string report_to_json(const RunReport& report);

/// Hex SHA-256 of a byte string.
std::string sha256_hex(const std::string& bytes);

struct ExportEntry {
  std::string name;
  std::string directory;
  std::string status;
  std::string report_sha256;
};

/// Runs every scenario (up to `jobs` at once), writes
/// out_dir/<name>/{artifacts, report.json} and out_dir/manifest.json.
/// Output bytes depend only on the plan.
std::vector<ExportEntry> simulate_plan(const Plan& plan, const std::string& out_dir, unsigned jobs = 1);

/// Writes one report and its artifacts to `dir`, creating it.
void export_report(const RunReport& report, const std::string& dir);

}  // namespace vrsim

#endif  // VRSIM_CASES_HPP
