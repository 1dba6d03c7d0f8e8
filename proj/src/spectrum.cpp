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

#include "spectrum.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <memory>
#include <mutex>
#include <numbers>
#include <numeric>

namespace vrsim::detail {
namespace {

// FFTW planning is not thread-safe; execution on distinct arrays is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwFree {
  void operator()(void* p) const noexcept { fftw_free(p); }
};

}  // namespace

std::vector<double> power_spectrum(std::span<const double> x) {
  const std::size_t n = x.size();
  if (n == 0) return {};
  const std::size_t bins = n / 2 + 1;

  std::unique_ptr<double, FftwFree> in(fftw_alloc_real(n));
  std::unique_ptr<fftw_complex, FftwFree> out(fftw_alloc_complex(bins));

  fftw_plan plan;
  {
    std::lock_guard lock(planner_mutex());
    // ESTIMATE never times candidate algorithms, so the chosen plan (and
    // its rounding) is the same on every run.
    plan = fftw_plan_dft_r2c_1d(static_cast<int>(n), in.get(), out.get(), FFTW_ESTIMATE);
  }
  std::copy(x.begin(), x.end(), in.get());
  fftw_execute(plan);

  std::vector<double> power(bins);
  for (std::size_t k = 0; k < bins; ++k) {
    const double re = out.get()[k][0];
    const double im = out.get()[k][1];
    power[k] = re * re + im * im;
  }
  {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
  return power;
}

std::vector<double> hann(std::size_t n) {
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) {
    w[i] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * static_cast<double>(i) /
                                static_cast<double>(n));
  }
  return w;
}

std::vector<double> welch(std::span<const double> x, std::size_t segment) {
  const std::size_t hop = std::max<std::size_t>(segment / 2, 1);
  const auto taper = hann(segment);
  std::vector<double> acc(segment / 2 + 1, 0.0);
  std::vector<double> buf(segment);
  std::size_t count = 0;
  for (std::size_t start = 0; start + segment <= x.size(); start += hop) {
    const auto seg = x.subspan(start, segment);
    const double mean = std::accumulate(seg.begin(), seg.end(), 0.0) / static_cast<double>(segment);
    for (std::size_t i = 0; i < segment; ++i) buf[i] = (seg[i] - mean) * taper[i];
    const auto p = power_spectrum(buf);
    for (std::size_t k = 0; k < acc.size(); ++k) acc[k] += p[k];
    ++count;
  }
  if (count > 0) {
    for (double& v : acc) v /= static_cast<double>(count);
  }
  return acc;
}

}  // namespace vrsim::detail
