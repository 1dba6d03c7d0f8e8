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

#ifndef VRSIM_LOOPTF_HPP
#define VRSIM_LOOPTF_HPP

#include <string>
#include <vector>

namespace vrsim {

/// num(s) / den(s); coefficients in ascending powers of s.
struct RationalTF {
  std::vector<double> num;
  std::vector<double> den;
};

/// Throws kDomain for empty or non-finite coefficients or an all-zero
/// denominator.
void validate(const RationalTF& tf);

/// Product of two transfer functions, coefficient-wise.
RationalTF multiply(const RationalTF& a, const RationalTF& b);

/// Divides through by the highest-order nonzero denominator coefficient and
/// drops trailing zeros. No pole-zero cancellation.
RationalTF normalize(const RationalTF& tf);

/// Closed loop of the forward chain L = F_s F_p F_a H_s with feedback H_a:
/// G = L / (1 - L H_a). Throws kSingularLoop when 1 - L H_a vanishes
/// identically.
RationalTF compose_G(const RationalTF& f_s, const RationalTF& f_p, const RationalTF& f_a,
                     const RationalTF& h_s, const RationalTF& h_a);

/// P = G H_a.
RationalTF compose_P(const RationalTF& g, const RationalTF& h_a);

/// |tf(i 2π f)|. Throws kPole when the denominator vanishes there.
double eval_magnitude(const RationalTF& tf, double frequency);

/// Parses `{"num":[...], "den":[...]}`. Throws kValidation naming the field.
RationalTF parse_tf(const std::string& json_text);

}  // namespace vrsim

#endif  // VRSIM_LOOPTF_HPP
