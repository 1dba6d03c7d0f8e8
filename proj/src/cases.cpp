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

#include "vrsim/cases.hpp"

#include <Eigen/Geometry>
#include <algorithm>
#include <cmath>
#include <json.hpp>
#include <limits>
#include <numbers>
#include <openssl/evp.h>
#include <sstream>

#include "vrsim/defense.hpp"
#include "vrsim/error.hpp"
#include "vrsim/fusion.hpp"
#include "vrsim/perception.hpp"
#include "vrsim/sensing.hpp"
#include "vrsim/waveforms.hpp"

namespace vrsim {
namespace {

using ojson = nlohmann::ordered_json;

template <typename T>
std::string to_csv(const T& value) {
  std::ostringstream os;
  write_csv(os, value);
  return os.str();
}

double safe_ratio(double num, double den) { return den > 0.0 ? num / den : 0.0; }

ojson alias_json(const AliasResult& a) {
  return {{"n", a.n}, {"observed", a.observed}, {"sign", a.sign}};
}

ojson errors_json(const ErrorStats& e) { return {{"mae", e.mae}, {"rmse", e.rmse}}; }

ojson fusion_json(const FusionOutcome& f) {
  return {{"observed_frequency", f.observed_frequency},
          {"phase", f.phase},
          {"final_bias", f.final_bias},
          {"mean_abs_residual", f.mean_abs_residual},
          {"final_gain", f.final_gain}};
}

FusionOutcome summarize(const EskfRun& run, double f_obs, double phase) {
  return {f_obs, phase, run.final_bias, run.mean_abs_residual, run.final_state.gain};
}

}  // namespace

double design_injection_tone(double observed_frequency, const ImuSpec& spec) {
  validate(spec);
  if (!(observed_frequency >= 0.0)) throw Error(Errc::kDomain, "observed_frequency", "must be >= 0");
  const double fs = spec.sample_rate;
  const auto n_lo = static_cast<std::int64_t>(std::floor((spec.band_low() - observed_frequency) / fs)) - 1;
  const auto n_hi = static_cast<std::int64_t>(std::ceil((spec.band_high() + observed_frequency) / fs)) + 1;
  double best = std::numeric_limits<double>::infinity();
  for (std::int64_t n = std::max<std::int64_t>(n_lo, 0); n <= n_hi; ++n) {
    for (double f : {static_cast<double>(n) * fs - observed_frequency, static_cast<double>(n) * fs + observed_frequency}) {
      if (f > 0.0 && spec.in_band(f)) best = std::min(best, f);
    }
  }
  if (!std::isfinite(best)) {
    throw Error(Errc::kDomain, "observed_frequency",
                "no tone in the resonance band aliases to " + std::to_string(observed_frequency) + " Hz");
  }
  return best;
}

RunReport run_case1(const ScenarioConfig& cfg) {
  if (cfg.kind != CaseKind::kTrajectory) throw Error(Errc::kKind, "run_case1 needs a trajectory scenario");
  const auto& tp = cfg.trajectory;
  RunReport report;
  report.config = cfg;
  TrajectoryMetrics m;

  // Physical path: in-band decaying tone, resonance transduction, sampling.
  m.injection_frequency = design_injection_tone(tp.observed_frequency, cfg.imu);
  m.alias = alias_frequency(m.injection_frequency, cfg.imu.sample_rate);
  const double acoustic_amp = tp.omega_o / cfg.imu.transduction_gain;
  m.theta_T = theta_T_analytic(acoustic_amp, cfg.imu.transduction_gain, m.alias.observed, tp.decay_period);
  const Waveform tone = make_decaying_tone(acoustic_amp, tp.decay_period, m.injection_frequency);
  const RateFunction injected = repeat_every(transduce_acoustic(tone, cfg.imu), tp.decay_period);

  WalkProfile walk{cfg.thresholds.walking_speed, tp.heading};
  PropagationConfig prop;
  prop.dt = 1.0 / cfg.imu.sample_rate;
  auto gyro = walk_gyro(walk, cfg.imu, cfg.duration);
  gyro[static_cast<std::size_t>(tp.axis)] =
      sample_imu([](double) { return 0.0; }, injected, cfg.imu, cfg.duration, tp.axis);
  const auto accel = walk_accel(walk, cfg.imu, cfg.duration, prop.g);
  const Trajectory truth = walk_truth(walk, cfg.imu, cfg.duration, prop.g);
  const Trajectory estimate = dead_reckon(gyro, accel, prop, cfg.imu, truth.states.front());
  m.errors = trajectory_errors(estimate, truth);

  // Baseband comparison across observed frequencies.
  DriftSetup setup{tp.decay_period, tp.axis};
  std::ostringstream sweep_csv;
  sweep_csv << "f_o,mae,rmse\n";
  for (double f : tp.sweep) {
    const auto r = drift_experiment(tp.omega_o, f, cfg.duration, walk, cfg.imu, setup);
    m.sweep.push_back({f, r.errors});
    sweep_csv << format_number(f) << ',' << format_number(r.errors.mae) << ',' << format_number(r.errors.rmse)
              << '\n';
  }
  if (m.sweep.size() >= 2) m.sweep_ratio = safe_ratio(m.sweep.front().errors.mae, m.sweep.back().errors.mae);

  // Redirected walking. Without an attack the user sees an honest gain of 1.
  m.effective_gain = tp.omega_o > 0.0 ? tp.walk.gain : 1.0;
  WalkScenario ws = tp.walk;
  ws.gain = m.effective_gain;
  m.walk = real_walk_distance(ws);
  m.overshoot_within_band = std::abs(m.walk.overshoot - m.reference_overshoot) <= m.reference_overshoot_band;
  m.attack_speed = cfg.thresholds.walking_speed * (1.0 - m.effective_gain);
  m.speed_ratio = m.attack_speed / cfg.thresholds.walking_speed;
  m.detectable = is_speed_attack_detectable(m.attack_speed, cfg.thresholds.walking_speed, cfg.thresholds);

  std::ostringstream walk_csv;
  walk_csv << "virtual_distance,gain,real_distance,overshoot,attack_speed\n"
           << format_number(ws.virtual_distance) << ',' << format_number(ws.gain) << ','
           << format_number(m.walk.real_distance) << ',' << format_number(m.walk.overshoot) << ','
           << format_number(m.attack_speed) << '\n';

  SampleSeries injected_axis = gyro[static_cast<std::size_t>(tp.axis)];
  report.artifacts.push_back({"gyro_injected.csv", to_csv(injected_axis)});
  report.artifacts.push_back({"trajectory_estimate.csv", to_csv(estimate)});
  report.artifacts.push_back({"trajectory_truth.csv", to_csv(truth)});
  report.artifacts.push_back({"drift_sweep.csv", sweep_csv.str()});
  report.artifacts.push_back({"walk.csv", walk_csv.str()});
  report.trajectory = std::move(m);
  return report;
}

RunReport run_case2(const ScenarioConfig& cfg) {
  if (cfg.kind != CaseKind::kAvatar) throw Error(Errc::kKind, "run_case2 needs an avatar scenario");
  const auto& ap = cfg.avatar;
  const auto& fc = cfg.fusion;
  RunReport report;
  report.config = cfg;
  AvatarMetrics m;

  m.candidates = select_bypass_frequencies(ap.band_low, ap.band_high, fc, ap.n_max);
  std::ostringstream cand_csv;
  cand_csv << "frequency,m,n,observed,sign,alignable\n";
  bool picked = false;
  for (const auto& c : m.candidates) {
    const AliasResult a = alias_frequency(c.frequency, fc.imu_rate);
    bool alignable = a.observed > 0.0;
    if (alignable) {
      try {
        phase_align(a.observed, fc);
      } catch (const Error& e) {
        if (e.code() != Errc::kAlignment) throw;
        alignable = false;
      }
    }
    if (alignable && !picked) {
      m.selected = c;
      m.alias = a;
      picked = true;
    }
    cand_csv << format_number(c.frequency) << ',' << c.m << ',' << c.n << ',' << format_number(a.observed) << ','
             << a.sign << ',' << (alignable ? 1 : 0) << '\n';
  }
  report.artifacts.push_back({"bypass_candidates.csv", cand_csv.str()});

  if (!picked) {
    report.status = "no_feasible_attack";
    report.avatar = std::move(m);
    return report;
  }
  m.feasible = true;

  // A negative fold flips the sampled sine; a half-turn restores it.
  const double phase = phase_align(m.alias.observed, fc) + (m.alias.sign < 0 ? std::numbers::pi : 0.0);
  const EskfRun aligned = eskf_run(m.alias.observed, ap.attack_amp, phase, cfg.duration, fc, cfg.seed);
  const EskfRun control = eskf_run(ap.control_frequency, ap.attack_amp, 0.0, cfg.duration, fc, cfg.seed);
  m.aligned = summarize(aligned, m.alias.observed, phase);
  m.control = summarize(control, ap.control_frequency, 0.0);
  m.bias_ratio = safe_ratio(std::abs(aligned.final_bias), std::abs(control.final_bias));
  m.residual_ratio = safe_ratio(aligned.mean_abs_residual, control.mean_abs_residual);

  // The orientation bias swings the whole arm about the shoulder.
  const Eigen::Vector2d neutral(ap.wrist_x, ap.wrist_y);
  const Eigen::Vector2d shifted = Eigen::Rotation2Dd(aligned.final_bias) * neutral;
  const ArmPose before = arm_ik(neutral, ap.upper_arm, ap.forearm);
  const ArmPose after = arm_ik(shifted, ap.upper_arm, ap.forearm);
  m.hand_offset = (after.wrist - before.wrist).norm();
  m.shoulder_delta = after.shoulder - before.shoulder;
  m.elbow_delta = after.elbow - before.elbow;
  m.detectable = is_hand_offset_detectable(m.hand_offset, cfg.thresholds);

  // Frequency track of a sweep from the band edge to the chosen tone.
  const Waveform sweep = make_swept_tone(1.0, ap.band_low, m.selected.frequency, 1.0);
  std::ostringstream sweep_csv;
  sweep_csv << "t,frequency\n";
  for (int i = 0; i <= 1000; ++i) {
    const double t = i * 1e-3;
    sweep_csv << format_number(t) << ',' << format_number(instantaneous_frequency(sweep, t)) << '\n';
  }

  std::ostringstream arm_csv;
  arm_csv << "pose,shoulder,elbow,wrist_x,wrist_y\n";
  for (const auto& [label, pose] : {std::pair{"neutral", before}, std::pair{"attacked", after}}) {
    arm_csv << label << ',' << format_number(pose.shoulder) << ',' << format_number(pose.elbow) << ','
            << format_number(pose.wrist.x()) << ',' << format_number(pose.wrist.y()) << '\n';
  }

  report.artifacts.push_back({"gain_aligned.csv", to_csv(aligned.trace)});
  report.artifacts.push_back({"gain_control.csv", to_csv(control.trace)});
  report.artifacts.push_back({"output_error_aligned.csv", to_csv(aligned.output_error)});
  report.artifacts.push_back({"output_error_control.csv", to_csv(control.output_error)});
  report.artifacts.push_back({"arm.csv", arm_csv.str()});
  report.artifacts.push_back({"sweep_frequency.csv", sweep_csv.str()});
  report.avatar = std::move(m);
  return report;
}

RunReport run_case3(const ScenarioConfig& cfg) {
  if (cfg.kind != CaseKind::kDizziness) throw Error(Errc::kKind, "run_case3 needs a dizziness scenario");
  const auto& dp = cfg.dizziness;
  RunReport report;
  report.config = cfg;
  DizzinessMetrics m;

  const Waveform current = make_sinusoid_current(dp.current_amplitude, dp.current_frequency);
  const SampleSeries ipd = ipd_jitter_series(current, cfg.hall, dp.display.frame_rate, cfg.duration);
  m.ipd_bias_peak = *std::max_element(ipd.values.begin(), ipd.values.end());
  m.jitter_frequency = dominant_frequency(ipd);

  const DisplayTrack still = stationary_display(dp.display, cfg.duration);
  const DisplayTrack play = gameplay_display(dp.display, cfg.duration, cfg.seed);
  const DisplayTrack attacked = apply_ipd_jitter(still, ipd, dp.display);
  const auto cloud = [](const DisplayTrack& t) { return dizziness_triples(t.x, t.y, t.depth); };
  const DizzinessCloud c_still = cloud(still);
  const DizzinessCloud c_play = cloud(play);
  const DizzinessCloud c_attack = cloud(attacked);
  if (c_still.frames.empty()) throw Error(Errc::kDomain, "duration", "covers fewer than two display frames");
  m.score_stationary = dispersion_score(c_still, dp.weights);
  m.score_gameplay = dispersion_score(c_play, dp.weights);
  m.score_attack = dispersion_score(c_attack, dp.weights);
  m.ordering_holds = m.score_stationary < m.score_gameplay && m.score_gameplay < m.score_attack;

  std::vector<Alarm> alarms;
  if (ipd.size() >= cfg.detector.window) {
    alarms = spectral_detect(ipd, cfg.detector);
    m.detector_ran = true;
  }
  m.alarm_count = alarms.size();
  std::ostringstream alarm_lines;
  write_alarms(alarm_lines, alarms);

  std::ostringstream score_csv;
  score_csv << "profile,score\n"
            << "stationary," << format_number(m.score_stationary) << '\n'
            << "gameplay," << format_number(m.score_gameplay) << '\n'
            << "attack," << format_number(m.score_attack) << '\n';

  report.artifacts.push_back({"ipd_bias.csv", to_csv(ipd)});
  report.artifacts.push_back({"cloud_stationary.csv", to_csv(c_still)});
  report.artifacts.push_back({"cloud_gameplay.csv", to_csv(c_play)});
  report.artifacts.push_back({"cloud_attack.csv", to_csv(c_attack)});
  report.artifacts.push_back({"scores.csv", score_csv.str()});
  report.artifacts.push_back({"alarms.jsonl", alarm_lines.str()});
  report.dizziness = std::move(m);
  return report;
}

RunReport run_scenario(const ScenarioConfig& cfg) {
  switch (cfg.kind) {
    case CaseKind::kTrajectory: return run_case1(cfg);
    case CaseKind::kAvatar: return run_case2(cfg);
    case CaseKind::kDizziness: return run_case3(cfg);
  }
  throw Error(Errc::kKind, "unknown case");
}

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw Error(Errc::kNumeric, "SHA-256 computation failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(kHex[digest[i] >> 4]);
    out.push_back(kHex[digest[i] & 0xF]);
  }
  return out;
}

std::string report_to_json(const RunReport& r) {
  ojson j;
  j["scenario"] = ojson::parse(config_to_json(r.config));
  j["status"] = r.status;
  ojson metrics = ojson::object();
  if (r.trajectory) {
    const auto& m = *r.trajectory;
    ojson sweep = ojson::array();
    for (const auto& p : m.sweep) {
      sweep.push_back({{"observed_frequency", p.observed_frequency}, {"mae", p.errors.mae}, {"rmse", p.errors.rmse}});
    }
    metrics = {{"theta_T", m.theta_T},
               {"injection_frequency", m.injection_frequency},
               {"alias", alias_json(m.alias)},
               {"errors", errors_json(m.errors)},
               {"sweep", sweep},
               {"sweep_ratio", m.sweep_ratio},
               {"walk",
                {{"effective_gain", m.effective_gain},
                 {"real_distance", m.walk.real_distance},
                 {"overshoot", m.walk.overshoot},
                 {"reference_overshoot", m.reference_overshoot},
                 {"reference_band", m.reference_overshoot_band},
                 {"within_reference_band", m.overshoot_within_band}}},
               {"detectability",
                {{"attack_speed", m.attack_speed}, {"speed_ratio", m.speed_ratio}, {"detectable", m.detectable}}}};
  }
  if (r.avatar) {
    const auto& m = *r.avatar;
    ojson cands = ojson::array();
    for (const auto& c : m.candidates) cands.push_back({{"frequency", c.frequency}, {"m", c.m}, {"n", c.n}});
    metrics = {{"candidates", cands}, {"feasible", m.feasible}};
    if (m.feasible) {
      metrics["selected"] = {{"frequency", m.selected.frequency}, {"m", m.selected.m}, {"n", m.selected.n}};
      metrics["alias"] = alias_json(m.alias);
      metrics["aligned"] = fusion_json(m.aligned);
      metrics["control"] = fusion_json(m.control);
      metrics["bias_ratio"] = m.bias_ratio;
      metrics["residual_ratio"] = m.residual_ratio;
      metrics["hand"] = {{"offset", m.hand_offset},
                         {"shoulder_delta", m.shoulder_delta},
                         {"elbow_delta", m.elbow_delta},
                         {"detectable", m.detectable}};
    }
  }
  if (r.dizziness) {
    const auto& m = *r.dizziness;
    metrics = {{"ipd_bias_peak", m.ipd_bias_peak},
               {"jitter_frequency", m.jitter_frequency},
               {"scores", {{"stationary", m.score_stationary}, {"gameplay", m.score_gameplay}, {"attack", m.score_attack}}},
               {"ordering_holds", m.ordering_holds},
               {"detector_ran", m.detector_ran},
               {"alarm_count", m.alarm_count}};
  }
  j["metrics"] = metrics;
  ojson files = ojson::array();
  for (const auto& a : r.artifacts) {
    files.push_back({{"file", a.name}, {"bytes", a.content.size()}, {"sha256", sha256_hex(a.content)}});
  }
  j["artifacts"] = files;
  return j.dump(2) + "\n";
}

}  // namespace vrsim
