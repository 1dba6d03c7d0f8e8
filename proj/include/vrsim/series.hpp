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

#ifndef VRSIM_SERIES_HPP
#define VRSIM_SERIES_HPP

#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace vrsim {

enum class Channel {
  kGyroX, kGyroY, kGyroZ,
  kAccelX, kAccelY, kAccelZ,
  kHall,
  kFlowH, kFlowV, kDisparity,
  kOther,
};

std::string_view to_string(Channel c) noexcept;

/// Uniformly sampled measurement stream: values[i] is taken at t0 + i*dt.
struct SampleSeries {
  double t0 = 0.0;
  double dt = 1.0;
  std::vector<double> values;
  Channel channel = Channel::kOther;

  std::size_t size() const noexcept { return values.size(); }
  double time_at(std::size_t i) const noexcept { return t0 + static_cast<double>(i) * dt; }
  double rate() const noexcept { return 1.0 / dt; }
};

/// Throws kDomain if dt <= 0, the series is empty, or any value is not finite.
void validate(const SampleSeries& s);

/// `%.9g` formatting shared by every CSV writer.
std::string format_number(double v);

/// Writes `t,value` rows.
void write_csv(std::ostream& os, const SampleSeries& s);
void write_csv(const std::string& path, const SampleSeries& s);

/// Parses `t,value` rows. t0 is the first timestamp, dt the least-squares spacing;
/// every row must sit on that grid within 1e-6 dt + 1e-8 |t|.
SampleSeries read_csv(std::istream& is, Channel channel = Channel::kOther);
SampleSeries read_csv_file(const std::string& path, Channel channel = Channel::kOther);

/// Frequency of the largest non-DC periodogram bin after mean removal.
/// Returns 0 for constant series.
double dominant_frequency(const SampleSeries& s);

}  // namespace vrsim

#endif  // VRSIM_SERIES_HPP
