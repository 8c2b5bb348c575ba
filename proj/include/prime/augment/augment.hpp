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

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>

#include "prime/augment/config.hpp"
#include "prime/augment/recipe.hpp"
#include "prime/core/distributions.hpp"
#include "prime/core/errors.hpp"
#include "prime/core/image.hpp"
#include "prime/core/rng.hpp"

namespace prime {

// Label of the mixing-weight stream under a recipe's root stream. Step
// streams use two-label paths {chain, step}, so this cannot collide.
inline constexpr std::uint64_t kWeightsLabel = ~std::uint64_t{0};

inline Rng step_stream(const Rng& root, std::size_t chain, std::size_t step) {
  return root.child({static_cast<std::uint64_t>(chain), static_cast<std::uint64_t>(step)});
}

inline constexpr StepKind step_kind_of(Primitive p) noexcept {
  switch (p) {
    case Primitive::spectral: return StepKind::spectral;
    case Primitive::spatial: return StepKind::spatial;
    case Primitive::color: return StepKind::color;
    case Primitive::additive: return StepKind::additive;
  }
  return StepKind::identity;
}

// Uniform draw over {identity} + cfg.enabled.
inline StepKind sample_step_kind(Rng& stream, const PrimeConfig& cfg) {
  const auto pick = stream.below(cfg.enabled.size() + 1);
  return pick == 0 ? StepKind::identity : step_kind_of(cfg.enabled[pick - 1]);
}

inline Step sample_step(Rng& stream, const PrimeConfig& cfg) {
  switch (sample_step_kind(stream, cfg)) {
    case StepKind::identity: return IdentityStep{};
    case StepKind::spectral: return sample_spectral_params(stream, cfg.spectral, cfg.alpha);
    case StepKind::spatial: return sample_spatial_params(stream, cfg.spatial, cfg.alpha);
    case StepKind::color: return sample_color_params(stream, cfg.color, cfg.alpha);
    case StepKind::additive: return sample_additive_params(stream, cfg.additive, cfg.alpha);
  }
  return IdentityStep{};
}

// Throws unless every enabled primitive can run on a height x width image.
inline void check_image_size(const PrimeConfig& cfg, std::size_t height, std::size_t width) {
  cfg.validate();
  if (height == 0 || width == 0) throw InvalidParameter("cannot augment an empty image");
  if (cfg.is_enabled(Primitive::spectral) &&
      static_cast<std::size_t>(cfg.spectral.kernel_size) > std::min(height, width))
    throw InvalidParameter("spectral kernel size exceeds image size");
  if (cfg.is_enabled(Primitive::spatial) && (height < 2 || width < 2))
    throw InvalidParameter("spatial transform needs images of at least 2x2");
}

// Draws cfg.width chains of cfg.depth steps and Dir(1) weights over
// width + 1 images. Each step gets its own child stream of `root`.
inline Recipe sample_recipe(const Rng& root, const PrimeConfig& cfg, std::size_t height, std::size_t width) {
  check_image_size(cfg, height, width);

  Recipe recipe;
  recipe.chains.resize(static_cast<std::size_t>(cfg.width));
  for (std::size_t i = 0; i < recipe.chains.size(); ++i) {
    auto& chain = recipe.chains[i];
    chain.reserve(static_cast<std::size_t>(cfg.depth));
    for (std::size_t j = 0; j < static_cast<std::size_t>(cfg.depth); ++j) {
      Rng stream = step_stream(root, i, j);
      chain.push_back(sample_step(stream, cfg));
    }
  }
  Rng weights = root.child({kWeightsLabel});
  recipe.weights = sample_dirichlet_uniform(weights, recipe.chains.size() + 1);
  return recipe;
}

struct Augmentation {
  Image image;
  Recipe recipe;
};

inline Augmentation prime_augment(const Image& img, const PrimeConfig& cfg, const Rng& root) {
  Recipe recipe = sample_recipe(root, cfg, img.height(), img.width());
  Image out = apply_recipe(img, recipe);
  return {std::move(out), std::move(recipe)};
}

}  // namespace prime
