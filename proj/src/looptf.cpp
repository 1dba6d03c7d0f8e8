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

#include "vrsim/looptf.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <json.hpp>
#include <numbers>

#include "vrsim/error.hpp"

namespace vrsim {
namespace {

using Poly = std::vector<double>;

Poly poly_mul(const Poly& a, const Poly& b) {
  Poly out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

double max_abs(const Poly& p) {
  double m = 0.0;
  for (double c : p) m = std::max(m, std::abs(c));
  return m;
}

void trim(Poly& p) {
  while (p.size() > 1 && p.back() == 0.0) p.pop_back();
}

std::complex<double> horner(const Poly& p, std::complex<double> s) {
  std::complex<double> acc = 0.0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * s + *it;
  return acc;
}

}  // namespace

void validate(const RationalTF& tf) {
  if (tf.num.empty()) throw Error(Errc::kDomain, "num", "needs at least one coefficient");
  if (tf.den.empty()) throw Error(Errc::kDomain, "den", "needs at least one coefficient");
  for (double c : tf.num) {
    if (!std::isfinite(c)) throw Error(Errc::kDomain, "num", "coefficients must be finite");
  }
  for (double c : tf.den) {
    if (!std::isfinite(c)) throw Error(Errc::kDomain, "den", "coefficients must be finite");
  }
  if (max_abs(tf.den) == 0.0) throw Error(Errc::kDomain, "den", "is identically zero");
}

RationalTF multiply(const RationalTF& a, const RationalTF& b) {
  validate(a);
  validate(b);
  return {poly_mul(a.num, b.num), poly_mul(a.den, b.den)};
}

RationalTF normalize(const RationalTF& tf) {
  validate(tf);
  RationalTF out = tf;
  trim(out.num);
  trim(out.den);
  const double lead = out.den.back();
  for (double& c : out.num) c /= lead;
  for (double& c : out.den) c /= lead;
  return out;
}

RationalTF compose_G(const RationalTF& f_s, const RationalTF& f_p, const RationalTF& f_a,
                     const RationalTF& h_s, const RationalTF& h_a) {
  const RationalTF loop = multiply(multiply(multiply(f_s, f_p), f_a), h_s);
  validate(h_a);
  // G = nL dA / (dL dA - nL nA)
  const Poly forward = poly_mul(loop.den, h_a.den);
  const Poly feedback = poly_mul(loop.num, h_a.num);
  Poly den(std::max(forward.size(), feedback.size()), 0.0);
  for (std::size_t i = 0; i < forward.size(); ++i) den[i] += forward[i];
  for (std::size_t i = 0; i < feedback.size(); ++i) den[i] -= feedback[i];
  const double scale = std::max(max_abs(forward), max_abs(feedback));
  const double tol = 64.0 * std::numeric_limits<double>::epsilon() * scale;
  for (double& c : den) {
    if (std::abs(c) <= tol) c = 0.0;
  }
  if (max_abs(den) == 0.0) {
    throw Error(Errc::kSingularLoop, "1 - L(s) H_a(s) vanishes identically; the loop is marginal");
  }
  return normalize({poly_mul(loop.num, h_a.den), den});
}

RationalTF compose_P(const RationalTF& g, const RationalTF& h_a) { return normalize(multiply(g, h_a)); }

double eval_magnitude(const RationalTF& tf, double frequency) {
  validate(tf);
  if (!std::isfinite(frequency)) throw Error(Errc::kDomain, "frequency", "must be finite");
  const std::complex<double> s(0.0, 2.0 * std::numbers::pi * frequency);
  const auto d = horner(tf.den, s);
  double den_scale = 0.0;
  double power = 1.0;
  for (double c : tf.den) {
    den_scale += std::abs(c) * power;
    power *= std::abs(s);
  }
  if (std::abs(d) <= 1e-12 * den_scale) {
    throw Error(Errc::kPole, "denominator vanishes at " + std::to_string(frequency) + " Hz");
  }
  return std::abs(horner(tf.num, s) / d);
}

RationalTF parse_tf(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(Errc::kValidation, "tf", std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw Error(Errc::kValidation, "tf", "must be an object");
  for (const auto& [key, value] : j.items()) {
    if (key != "num" && key != "den") throw Error(Errc::kValidation, key, "unknown key");
  }
  RationalTF tf;
  for (const char* field : {"num", "den"}) {
    if (!j.contains(field) || !j[field].is_array()) {
      throw Error(Errc::kValidation, field, "must be an array of numbers");
    }
    auto& dst = std::string(field) == "num" ? tf.num : tf.den;
    for (const auto& c : j[field]) {
      if (!c.is_number()) throw Error(Errc::kValidation, field, "must be an array of numbers");
      dst.push_back(c.get<double>());
    }
  }
  try {
    validate(tf);
  } catch (const Error& e) {
    throw Error(Errc::kValidation, e.field(), e.detail());
  }
  return tf;
}

}  // namespace vrsim
