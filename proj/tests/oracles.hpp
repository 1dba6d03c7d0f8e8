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

#ifndef VRSIM_TESTS_ORACLES_HPP
#define VRSIM_TESTS_ORACLES_HPP

// Reference computations that share no code with the library.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <tuple>
#include <vector>

namespace oracle {

/// |X_k|^2 for k = 0..n/2 by the O(n^2) definition.
inline std::vector<double> naive_power(const std::vector<double>& x) {
  const std::size_t n = x.size();
  std::vector<double> out(n / 2 + 1);
  for (std::size_t k = 0; k < out.size(); ++k) {
    double re = 0.0, im = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double a = -2.0 * std::numbers::pi * static_cast<double>(k * i % n) / static_cast<double>(n);
      re += x[i] * std::cos(a);
      im += x[i] * std::sin(a);
    }
    out[k] = re * re + im * im;
  }
  return out;
}

/// Frequency of the strongest non-DC bin after mean removal.
inline double naive_peak_frequency(std::vector<double> x, double rate) {
  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= static_cast<double>(x.size());
  for (double& v : x) v -= mean;
  const auto p = naive_power(x);
  std::size_t best = 1;
  for (std::size_t k = 1; k < p.size(); ++k) {
    if (p[k] > p[best]) best = k;
  }
  return static_cast<double>(best) * rate / static_cast<double>(x.size());
}

namespace detail {
inline double simpson_step(const std::function<double(double)>& f, double a, double b, double fa, double fm,
                           double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return simpson_step(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
         simpson_step(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}
}  // namespace detail

/// Adaptive Simpson quadrature, absolute tolerance `tol`. The interval is
/// pre-split into `pieces` so oscillatory integrands are resolved.
inline double integrate(const std::function<double(double)>& f, double a, double b, double tol = 1e-14,
                        int pieces = 64) {
  double total = 0.0;
  const double h = (b - a) / pieces;
  for (int i = 0; i < pieces; ++i) {
    const double lo = a + i * h, hi = lo + h;
    const double fa = f(lo), fb = f(hi), fm = f(0.5 * (lo + hi));
    const double whole = h / 6.0 * (fa + 4.0 * fm + fb);
    total += detail::simpson_step(f, lo, hi, fa, fm, fb, whole, tol / pieces, 30);
  }
  return total;
}

/// Every (f, m, n) with f = m*imu + n*cam in [lo, hi], m >= 1, 1 <= n <= n_max,
/// found by scanning m upward until the smallest tone leaves the band.
inline std::vector<std::tuple<double, std::int64_t, int>> brute_bypass(double lo, double hi, double imu, double cam,
                                                                       int n_max) {
  std::vector<std::tuple<double, std::int64_t, int>> out;
  for (std::int64_t m = 1; static_cast<double>(m) * imu + cam <= hi; ++m) {
    for (int n = 1; n <= n_max; ++n) {
      const double f = static_cast<double>(m) * imu + n * cam;
      if (f >= lo && f <= hi) out.emplace_back(f, m, n);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Folded frequency by searching all n for the minimum |f - n fs|.
inline double brute_alias(double f, double fs) {
  double best = f;
  for (std::int64_t n = 0; static_cast<double>(n - 1) * fs <= f; ++n) {
    best = std::min(best, std::abs(f - static_cast<double>(n) * fs));
  }
  return best;
}

}  // namespace oracle

#endif  // VRSIM_TESTS_ORACLES_HPP
