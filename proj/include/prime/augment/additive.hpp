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

#include <cstddef>
#include <vector>

#include "prime/core/distributions.hpp"
#include "prime/core/errors.hpp"
#include "prime/core/image.hpp"
#include "prime/core/rng.hpp"
#include "prime/core/strength.hpp"

namespace prime {

struct AdditiveSettings {
  StrengthRange strength{0.0, 0.05};
  friend bool operator==(const AdditiveSettings&, const AdditiveSettings&) = default;
};

// Gaussian pixel noise. The realization is either stored explicitly or
// regenerated from `noise_key` (one N(0, strength^2) draw per value, in
// storage order).
struct AdditiveParams {
  double strength = 0.0;
  SeedMaterial noise_key;
  std::vector<double> realization;  // empty: regenerate from noise_key
  friend bool operator==(const AdditiveParams&, const AdditiveParams&) = default;
};

inline AdditiveParams sample_additive_params(Rng& rng, const StrengthRange& range, double alpha) {
  AdditiveParams params;
  params.strength = sample_strength(rng, range, alpha, "additive");
  for (auto& w : params.noise_key.words) w = rng.next_u64();
  return params;
}

inline AdditiveParams sample_additive_params(Rng& rng, const AdditiveSettings& settings, double alpha) {
  return sample_additive_params(rng, settings.strength, alpha);
}

inline std::vector<double> additive_noise(const AdditiveParams& params, std::size_t count) {
  if (!params.realization.empty()) {
    detail::require(params.realization.size() == count, "additive noise realization does not match image size");
    return params.realization;
  }
  std::vector<double> noise(count);
  Rng rng = Rng::from_key(params.noise_key);
  for (double& v : noise) v = sample_gaussian(rng, 0.0, params.strength);
  return noise;
}

inline void validate(const AdditiveParams& params) {
  detail::require(params.strength >= 0.0, "additive strength must be >= 0");
}

inline Image apply_additive(const Image& img, const AdditiveParams& params) {
  validate(params);
  Image out = img;
  const auto noise = additive_noise(params, img.size());
  auto values = out.values();
  for (std::size_t i = 0; i < values.size(); ++i) values[i] += noise[i];
  clamp_in_place(out);
  return out;
}

}  // namespace prime
