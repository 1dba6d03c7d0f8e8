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

#include "vrsim/defense.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <json.hpp>
#include <ostream>

#include "spectrum.hpp"
#include "vrsim/error.hpp"

namespace vrsim {
namespace {

// Reported when the median bin is exactly zero but a peak exists.
constexpr double kScoreCeilingDb = 300.0;

double pearson(const double* a, const double* b, std::size_t n, bool& degenerate) {
  double ma = 0.0, mb = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    ma += a[i];
    mb += b[i];
  }
  ma /= static_cast<double>(n);
  mb /= static_cast<double>(n);
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double da = a[i] - ma;
    const double db = b[i] - mb;
    sab += da * db;
    saa += da * da;
    sbb += db * db;
  }
  const double scale = std::max(std::abs(ma), std::abs(mb)) + 1.0;
  degenerate = saa <= 1e-24 * scale * scale * static_cast<double>(n) ||
               sbb <= 1e-24 * scale * scale * static_cast<double>(n);
  if (degenerate) return 0.0;
  return sab / std::sqrt(saa * sbb);
}

}  // namespace

void validate(const DetectorConfig& cfg) {
  if (cfg.window < 16) throw Error(Errc::kDomain, "window", "must be >= 16");
  if (!std::isfinite(cfg.snr_threshold_db)) throw Error(Errc::kDomain, "snr_threshold_db", "must be finite");
  if (!(cfg.corr_threshold >= -1.0 && cfg.corr_threshold <= 1.0)) {
    throw Error(Errc::kDomain, "corr_threshold", "must lie in [-1, 1]");
  }
  if (!(cfg.exclusion_low >= 0.0) || !(cfg.exclusion_low <= cfg.exclusion_high)) {
    throw Error(Errc::kDomain, "exclusion_band", "needs 0 <= low <= high");
  }
  if (cfg.max_lag >= cfg.window / 2) throw Error(Errc::kDomain, "max_lag", "must be below window / 2");
}

std::string_view to_string(AlarmKind k) noexcept {
  switch (k) {
    case AlarmKind::kNarrowbandPeak: return "NarrowbandPeak";
    case AlarmKind::kCorrelationBreak: return "CorrelationBreak";
  }
  return "Unknown";
}

std::vector<Alarm> spectral_detect(const SampleSeries& s, const DetectorConfig& cfg) {
  validate(cfg);
  validate(s);
  if (s.size() < cfg.window) {
    throw Error(Errc::kLength, "series has " + std::to_string(s.size()) + " samples, window needs " +
                                   std::to_string(cfg.window));
  }
  const std::size_t segment = cfg.window / 4;
  const double bin_hz = s.rate() / static_cast<double>(segment);
  const std::size_t hop = cfg.window / 2;

  std::vector<Alarm> alarms;
  std::vector<double> rest;
  for (std::size_t start = 0; start + cfg.window <= s.size(); start += hop) {
    const auto psd = detail::welch(std::span<const double>(s.values).subspan(start, cfg.window), segment);
    rest.clear();
    double peak = 0.0;
    std::size_t peak_bin = 0;
    for (std::size_t k = 1; k < psd.size(); ++k) {
      const double f = static_cast<double>(k) * bin_hz;
      if (f >= cfg.exclusion_low && f <= cfg.exclusion_high) continue;
      rest.push_back(psd[k]);
      if (psd[k] > peak) {
        peak = psd[k];
        peak_bin = k;
      }
    }
    if (rest.empty() || peak <= 0.0) continue;
    auto mid = rest.begin() + static_cast<std::ptrdiff_t>(rest.size() / 2);
    std::nth_element(rest.begin(), mid, rest.end());
    const double median = *mid;
    const double score = median > 0.0 ? std::min(kScoreCeilingDb, 10.0 * std::log10(peak / median))
                                      : kScoreCeilingDb;
    if (score >= cfg.snr_threshold_db) {
      const double centre = s.time_at(start) + 0.5 * static_cast<double>(cfg.window) * s.dt;
      alarms.push_back({centre, AlarmKind::kNarrowbandPeak, score, static_cast<double>(peak_bin) * bin_hz});
    }
  }
  return alarms;
}

std::vector<Alarm> correlation_check(const SampleSeries& imu, const SampleSeries& camera,
                                     const DetectorConfig& cfg) {
  validate(cfg);
  validate(imu);
  validate(camera);
  if (imu.size() != camera.size() || std::abs(imu.dt - camera.dt) > 1e-9 * imu.dt) {
    throw Error(Errc::kShape, "IMU and camera streams must share one sampling grid");
  }
  if (imu.size() < cfg.window) {
    throw Error(Errc::kLength, "series has " + std::to_string(imu.size()) + " samples, window needs " +
                                   std::to_string(cfg.window));
  }
  const std::size_t hop = cfg.window / 2;
  const auto lag = static_cast<std::ptrdiff_t>(cfg.max_lag);
  const std::size_t span = cfg.window - cfg.max_lag * 2;
  std::vector<Alarm> alarms;
  for (std::size_t start = 0; start + cfg.window <= imu.size(); start += hop) {
    double best = -std::numeric_limits<double>::infinity();
    bool any = false;
    const double* a = imu.values.data() + start + cfg.max_lag;
    for (std::ptrdiff_t d = -lag; d <= lag; ++d) {
      const double* b = camera.values.data() + static_cast<std::ptrdiff_t>(start + cfg.max_lag) + d;
      bool degenerate = false;
      const double r = pearson(a, b, span, degenerate);
      if (degenerate) continue;
      any = true;
      best = std::max(best, r);
    }
    if (any && best < cfg.corr_threshold) {
      const double centre = imu.time_at(start) + 0.5 * static_cast<double>(cfg.window) * imu.dt;
      alarms.push_back({centre, AlarmKind::kCorrelationBreak, 1.0 - best, 0.0});
    }
  }
  return alarms;
}

double vibration_feedback(double vertical_speed, double v_max) {
  if (!std::isfinite(vertical_speed)) throw Error(Errc::kDomain, "vertical_speed", "must be finite");
  if (!(v_max >= 0.0)) throw Error(Errc::kDomain, "v_max", "must be >= 0");
  return -std::expm1(-std::abs(vertical_speed)) * v_max;
}

void write_alarms(std::ostream& os, const std::vector<Alarm>& alarms) {
  for (const auto& a : alarms) {
    nlohmann::ordered_json j;
    j["t"] = a.t;
    j["kind"] = std::string(to_string(a.kind));
    j["score"] = a.score;
    j["frequency"] = a.frequency;
    os << j.dump() << '\n';
  }
}

}  // namespace vrsim
