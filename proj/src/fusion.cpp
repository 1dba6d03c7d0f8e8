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

#include "vrsim/fusion.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <fstream>
#include <limits>
#include <numbers>

#include "vrsim/error.hpp"
#include "vrsim/rng.hpp"

namespace vrsim {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr std::uint64_t kCameraNoiseStream = 0xCA3E8A;

void require(bool ok, const char* field, const char* what) {
  if (!ok) throw Error(Errc::kDomain, field, what);
}

}  // namespace

void validate(const FusionConfig& cfg) {
  require(cfg.camera_rate > 0.0 && std::isfinite(cfg.camera_rate), "camera_rate", "must be positive");
  require(cfg.imu_rate > cfg.camera_rate && std::isfinite(cfg.imu_rate), "imu_rate",
          "must exceed camera_rate");
  require(cfg.measurement_variance > 0.0, "measurement_variance", "must be positive");
  require(cfg.process_variance > 0.0, "process_variance", "must be positive");
  require(cfg.adapt_window >= 1, "adapt_window", "must be >= 1");
  require(cfg.camera_noise >= 0.0, "camera_noise", "must be >= 0");
  require(cfg.initial_variance > 0.0, "initial_variance", "must be positive");
  require(cfg.process_floor > 0.0 && cfg.process_floor <= cfg.process_ceiling, "process_floor",
          "must be positive and <= process_ceiling");
  require(cfg.bias_window > 0.0, "bias_window", "must be positive");
}

std::vector<BypassCandidate> select_bypass_frequencies(double band_lo, double band_hi,
                                                       const FusionConfig& cfg, int n_max) {
  validate(cfg);
  if (n_max < 1) throw Error(Errc::kDomain, "n_max", "must be >= 1");
  std::vector<BypassCandidate> out;
  if (!(band_lo <= band_hi)) return out;
  for (int n = 1; n <= n_max; ++n) {
    const double offset = n * cfg.camera_rate;
    const double m_lo = std::max(1.0, std::ceil((band_lo - offset) / cfg.imu_rate));
    const double m_hi = std::floor((band_hi - offset) / cfg.imu_rate);
    // Widen by one on each side and let the exact test decide; the division
    // can land one ulp on the wrong side of an integer.
    for (double m = std::max(1.0, m_lo - 1.0); m <= m_hi + 1.0; m += 1.0) {
      const double f = m * cfg.imu_rate + offset;
      if (f >= band_lo && f <= band_hi) {
        out.push_back({f, static_cast<std::int64_t>(m), n});
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const BypassCandidate& a, const BypassCandidate& b) {
    if (a.frequency != b.frequency) return a.frequency < b.frequency;
    return a.m < b.m;
  });
  return out;
}

double phase_align(double observed_frequency, const FusionConfig& cfg) {
  validate(cfg);
  if (!(observed_frequency > 0.0)) throw Error(Errc::kDomain, "observed_frequency", "must be positive");
  const double ratio = observed_frequency / cfg.camera_rate;
  if (std::abs(ratio - std::round(ratio)) > 1e-9 * std::max(1.0, ratio)) {
    throw Error(Errc::kAlignment, "observed frequency " + std::to_string(observed_frequency) +
                                      " Hz is not a multiple of the camera rate " +
                                      std::to_string(cfg.camera_rate) + " Hz");
  }
  // Updates fall at k / camera_rate, where 2π f_obs t = 2π (ratio k) is
  // already a zero of the sine.
  return 0.0;
}

EskfRun eskf_run(double observed_frequency, double attack_amp, double phase, double duration,
                 const FusionConfig& cfg, std::uint64_t seed) {
  validate(cfg);
  if (!(duration > 0.0)) throw Error(Errc::kDomain, "duration", "must be positive");
  if (!(observed_frequency >= 0.0) || !(attack_amp >= 0.0) || !std::isfinite(phase)) {
    throw Error(Errc::kDomain, "attack", "frequency and amplitude must be >= 0, phase finite");
  }

  const auto imu_samples = static_cast<std::size_t>(std::llround(std::floor(duration * cfg.imu_rate + 1e-9)));
  const auto cam_updates = static_cast<std::size_t>(std::llround(std::floor(duration * cfg.camera_rate + 1e-9)));

  CounterRng camera_rng(seed, kCameraNoiseStream);

  EskfState st;
  st.variance = cfg.initial_variance;
  st.process = cfg.process_variance;
  double held_rate = 0.0;
  double last_t = 0.0;

  std::deque<double> window;
  double window_sq = 0.0;
  double abs_residual_sum = 0.0;

  EskfRun run;
  run.output_error.dt = 1.0 / cfg.imu_rate;
  run.output_error.values.reserve(imu_samples);
  run.trace.samples.reserve(cam_updates);

  auto advance = [&](double t) {
    const double h = t - last_t;
    st.nominal += held_rate * h;
    st.variance += st.process * h;
    last_t = t;
  };

  std::size_t i = 0;
  std::size_t k = 1;
  while (i < imu_samples || k <= cam_updates) {
    const double ti = i < imu_samples ? static_cast<double>(i) / cfg.imu_rate
                                      : std::numeric_limits<double>::infinity();
    const double tc = k <= cam_updates ? static_cast<double>(k) / cfg.camera_rate
                                       : std::numeric_limits<double>::infinity();
    if (tc <= ti) {
      advance(tc);
      const double measurement = cfg.camera_noise * camera_rng.normal();
      const double residual = measurement - st.nominal;
      const double predicted = st.variance + cfg.measurement_variance;

      window.push_back(residual * residual);
      window_sq += residual * residual;
      if (window.size() > static_cast<std::size_t>(cfg.adapt_window)) {
        window_sq -= window.front();
        window.pop_front();
      }
      if (window.size() == static_cast<std::size_t>(cfg.adapt_window)) {
        const double observed = window_sq / static_cast<double>(window.size());
        st.process = std::clamp(st.process * observed / predicted, cfg.process_floor, cfg.process_ceiling);
      }

      st.gain = st.variance / predicted;
      st.error = st.gain * residual;
      st.nominal += st.error;
      st.variance *= (1.0 - st.gain);

      abs_residual_sum += std::abs(residual);
      run.trace.samples.push_back({tc, st.gain, residual});
      ++k;
    } else {
      advance(ti);
      held_rate = attack_amp * std::sin(kTwoPi * observed_frequency * ti + phase);
      run.output_error.values.push_back(st.nominal);
      ++i;
    }
  }

  if (!run.trace.samples.empty()) {
    run.mean_abs_residual = abs_residual_sum / static_cast<double>(run.trace.samples.size());
  }
  const double cutoff = duration - cfg.bias_window;
  double bias_sum = 0.0;
  std::size_t bias_count = 0;
  for (std::size_t j = 0; j < run.output_error.size(); ++j) {
    if (run.output_error.time_at(j) >= cutoff - 1e-12) {
      bias_sum += run.output_error.values[j];
      ++bias_count;
    }
  }
  run.final_bias = bias_count > 0 ? bias_sum / static_cast<double>(bias_count) : 0.0;
  run.final_state = st;
  return run;
}

void write_csv(std::ostream& os, const GainTrace& trace) {
  os << "t,K,residual\n";
  for (const auto& s : trace.samples) {
    os << format_number(s.t) << ',' << format_number(s.gain) << ',' << format_number(s.residual) << '\n';
  }
}

void write_csv(const std::string& path, const GainTrace& trace) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error(Errc::kIo, "cannot open " + path + " for writing");
  write_csv(os, trace);
  if (!os) throw Error(Errc::kIo, "failed writing " + path);
}

}  // namespace vrsim
