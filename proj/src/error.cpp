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

#include "vrsim/error.hpp"

namespace vrsim {

const char* to_string(Errc code) noexcept {
  switch (code) {
    case Errc::kDomain: return "domain";
    case Errc::kKind: return "kind";
    case Errc::kShape: return "shape";
    case Errc::kAlignment: return "alignment";
    case Errc::kNumeric: return "numeric";
    case Errc::kReach: return "reach";
    case Errc::kPole: return "pole";
    case Errc::kSingularLoop: return "singular-loop";
    case Errc::kLength: return "length";
    case Errc::kValidation: return "validation";
    case Errc::kIo: return "io";
  }
  return "unknown";
}

}  // namespace vrsim
