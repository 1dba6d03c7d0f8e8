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

#ifndef VRSIM_ERROR_HPP
#define VRSIM_ERROR_HPP

#include <stdexcept>
#include <string>
#include <utility>

namespace vrsim {

/// Failure categories raised by the simulation core.
enum class Errc {
  kDomain,        ///< parameter outside its admissible range
  kKind,          ///< operation applied to the wrong waveform kind
  kShape,         ///< mismatched stream lengths or rates
  kAlignment,     ///< timestamps or phases cannot be aligned
  kNumeric,       ///< non-finite input or result
  kReach,         ///< inverse kinematics target out of reach
  kPole,          ///< transfer function evaluated at a pole
  kSingularLoop,  ///< closed-loop denominator vanishes identically
  kLength,        ///< series shorter than the analysis window
  kValidation,    ///< configuration failed schema validation
  kIo,            ///< filesystem failure
};

const char* to_string(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code), detail_(what) {}
  Error(Errc code, std::string field, const std::string& what)
      : std::runtime_error(field + ": " + what), code_(code), field_(std::move(field)), detail_(what) {}

  Errc code() const noexcept { return code_; }
  /// Dotted config path of the offending field; empty when not applicable.
  const std::string& field() const noexcept { return field_; }
  /// Message without the field prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  Errc code_;
  std::string field_;
  std::string detail_;
};

}  // namespace vrsim

#endif  // VRSIM_ERROR_HPP
