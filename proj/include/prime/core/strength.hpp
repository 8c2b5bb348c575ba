/* Copyright 2026 The prime-aug Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/
#pragma once

#include <string>

#include "prime/core/distributions.hpp"
#include "prime/core/errors.hpp"
#include "prime/core/rng.hpp"

namespace prime {

// Closed interval a primitive's strength sigma is drawn from.
struct StrengthRange {
  double min = 0.0;
  double max = 0.0;

  void validate(const std::string& what) const {
    if (!(min >= 0.0 && min <= max)) {
      throw InvalidParameter(what + " strength range must satisfy 0 <= min <= max, got [" +
                             std::to_string(min) + ", " + std::to_string(max) + "]");
    }
  }
  friend bool operator==(const StrengthRange&, const StrengthRange&) = default;
};

// sigma ~ U[alpha * min, alpha * max].
inline double sample_strength(Rng& rng, const StrengthRange& range, double alpha, const std::string& what) {
  range.validate(what);
  if (!(alpha >= 0.0)) throw InvalidParameter("strength scale alpha must be >= 0");
  return sample_uniform(rng, alpha * range.min, alpha * range.max);
}

}  // namespace prime
