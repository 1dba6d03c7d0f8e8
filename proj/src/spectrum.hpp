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

#ifndef VRSIM_SRC_SPECTRUM_HPP
#define VRSIM_SRC_SPECTRUM_HPP

#include <cstddef>
#include <span>
#include <vector>

namespace vrsim::detail {

/// |DFT|^2 for bins 0..n/2 of a real sequence.
std::vector<double> power_spectrum(std::span<const double> x);

/// Periodic Hann taper of length n.
std::vector<double> hann(std::size_t n);

/// Mean of Hann-tapered, mean-removed periodograms over segments of
/// `segment` samples with 50% overlap. Requires x.size() >= segment.
std::vector<double> welch(std::span<const double> x, std::size_t segment);

}  // namespace vrsim::detail

#endif  // VRSIM_SRC_SPECTRUM_HPP
