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

#include "vrsim/series.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "spectrum.hpp"
#include "vrsim/error.hpp"

namespace vrsim {

std::string_view to_string(Channel c) noexcept {
  switch (c) {
    case Channel::kGyroX: return "gyro_x";
    case Channel::kGyroY: return "gyro_y";
    case Channel::kGyroZ: return "gyro_z";
    case Channel::kAccelX: return "accel_x";
    case Channel::kAccelY: return "accel_y";
    case Channel::kAccelZ: return "accel_z";
    case Channel::kHall: return "hall";
    case Channel::kFlowH: return "flow_h";
    case Channel::kFlowV: return "flow_v";
    case Channel::kDisparity: return "disparity";
    case Channel::kOther: return "other";
  }
  return "other";
}

void validate(const SampleSeries& s) {
  if (!(s.dt > 0.0) || !std::isfinite(s.dt)) throw Error(Errc::kDomain, "series dt must be positive");
  if (s.values.empty()) throw Error(Errc::kDomain, "series must contain at least one sample");
  for (double v : s.values) {
    if (!std::isfinite(v)) throw Error(Errc::kDomain, "series values must be finite");
  }
}

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v == 0.0 ? 0.0 : v);  // no "-0"
  return buf;
}

void write_csv(std::ostream& os, const SampleSeries& s) {
  os << "t,value\n";
  for (std::size_t i = 0; i < s.size(); ++i) {
    os << format_number(s.time_at(i)) << ',' << format_number(s.values[i]) << '\n';
  }
}

void write_csv(const std::string& path, const SampleSeries& s) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error(Errc::kIo, "cannot open " + path + " for writing");
  write_csv(os, s);
  if (!os) throw Error(Errc::kIo, "failed writing " + path);
}

SampleSeries read_csv(std::istream& is, Channel channel) {
  std::string line;
  if (!std::getline(is, line)) throw Error(Errc::kValidation, "input", "empty series file");
  if (line.rfind("t,value", 0) != 0) {
    throw Error(Errc::kValidation, "input", "expected header 't,value'");
  }
  std::vector<double> ts;
  std::vector<double> vs;
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) {
      throw Error(Errc::kValidation, "input", "line " + std::to_string(lineno) + ": expected two columns");
    }
    try {
      std::size_t used = 0;
      const std::string tpart = line.substr(0, comma);
      const std::string vpart = line.substr(comma + 1);
      ts.push_back(std::stod(tpart, &used));
      if (used != tpart.size()) throw std::invalid_argument(tpart);
      vs.push_back(std::stod(vpart, &used));
      if (used != vpart.size()) throw std::invalid_argument(vpart);
    } catch (const std::logic_error&) {
      throw Error(Errc::kValidation, "input", "line " + std::to_string(lineno) + ": not a number");
    }
  }
  if (ts.size() < 2) throw Error(Errc::kValidation, "input", "need at least two samples to infer the rate");

  SampleSeries s;
  s.t0 = ts[0];
  // Least-squares slope against the row index; averages out the print
  // rounding that a single pair of timestamps would carry forward.
  const double n = static_cast<double>(ts.size());
  const double mid = 0.5 * (n - 1.0);
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const double di = static_cast<double>(i) - mid;
    sxy += di * (ts[i] - ts[0]);
    sxx += di * di;
  }
  s.dt = sxy / sxx;
  s.channel = channel;
  if (!(s.dt > 0.0)) throw Error(Errc::kValidation, "input", "timestamps must increase");
  for (std::size_t i = 1; i < ts.size(); ++i) {
    // Slack covers `%.9g` rounding of the timestamps.
    if (std::abs(ts[i] - s.time_at(i)) > 1e-6 * s.dt + 1e-8 * std::abs(ts[i])) {
      throw Error(Errc::kValidation, "input", "non-uniform sampling at row " + std::to_string(i + 2));
    }
  }
  s.values = std::move(vs);
  validate(s);
  return s;
}

SampleSeries read_csv_file(const std::string& path, Channel channel) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error(Errc::kIo, "cannot open " + path);
  return read_csv(is, channel);
}

double dominant_frequency(const SampleSeries& s) {
  validate(s);
  const double mean = std::accumulate(s.values.begin(), s.values.end(), 0.0) /
                      static_cast<double>(s.size());
  std::vector<double> centered(s.values);
  double spread = 0.0;
  double scale = 1.0;
  for (double& v : centered) {
    scale = std::max(scale, std::abs(v));
    v -= mean;
    spread = std::max(spread, std::abs(v));
  }
  if (spread <= 1e-12 * scale) return 0.0;
  const auto p = detail::power_spectrum(centered);
  std::size_t best = 0;
  double best_power = 0.0;
  for (std::size_t k = 1; k < p.size(); ++k) {
    if (p[k] > best_power) {
      best_power = p[k];
      best = k;
    }
  }
  return static_cast<double>(best) / (static_cast<double>(s.size()) * s.dt);
}

}  // namespace vrsim
