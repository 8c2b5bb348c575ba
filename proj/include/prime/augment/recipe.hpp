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

#include <cmath>
#include <cstddef>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "prime/augment/additive.hpp"
#include "prime/core/errors.hpp"
#include "prime/core/image.hpp"
#include "prime/transforms/color.hpp"
#include "prime/transforms/spatial.hpp"
#include "prime/transforms/spectral.hpp"

namespace prime {

struct IdentityStep {
  friend bool operator==(const IdentityStep&, const IdentityStep&) = default;
};

using Step = std::variant<IdentityStep, SpectralParams, SpatialParams, ColorParams, AdditiveParams>;

enum class StepKind { identity, spectral, spatial, color, additive };

inline constexpr std::size_t kStepKindCount = 5;

inline StepKind step_kind(const Step& step) noexcept { return static_cast<StepKind>(step.index()); }

inline constexpr const char* step_kind_name(StepKind kind) noexcept {
  switch (kind) {
    case StepKind::identity: return "identity";
    case StepKind::spectral: return "spectral";
    case StepKind::spatial: return "spatial";
    case StepKind::color: return "color";
    case StepKind::additive: return "additive";
  }
  return "unknown";
}

// Complete record of one augmentation draw. chains[i] is applied in order
// starting from the clean image; weights[0] belongs to the clean image and
// weights[i + 1] to chains[i].
struct Recipe {
  std::vector<std::vector<Step>> chains;
  std::vector<double> weights;
  friend bool operator==(const Recipe&, const Recipe&) = default;
};

inline Image apply_step(const Image& img, const Step& step) {
  return std::visit(
      [&](const auto& params) -> Image {
        using T = std::decay_t<decltype(params)>;
        if constexpr (std::is_same_v<T, IdentityStep>) return img;
        else if constexpr (std::is_same_v<T, SpectralParams>) return apply_spectral(img, params);
        else if constexpr (std::is_same_v<T, SpatialParams>) return apply_spatial(img, params);
        else if constexpr (std::is_same_v<T, ColorParams>) return apply_color(img, params);
        else return apply_additive(img, params);
      },
      step);
}

inline void validate(const Recipe& recipe) {
  if (recipe.weights.size() != recipe.chains.size() + 1) {
    throw RecipeError("recipe needs one weight per chain plus one for the clean image (" +
                      std::to_string(recipe.chains.size()) + " chains, " + std::to_string(recipe.weights.size()) +
                      " weights)");
  }
  double total = 0.0;
  for (double w : recipe.weights) {
    if (!std::isfinite(w) || w < 0.0) throw RecipeError("recipe weights must be finite and >= 0");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-9) throw RecipeError("recipe weights must sum to 1, got " + std::to_string(total));
  for (const auto& chain : recipe.chains) {
    for (const auto& step : chain) {
      try {
        std::visit(
            [](const auto& params) {
              if constexpr (!std::is_same_v<std::decay_t<decltype(params)>, IdentityStep>) validate(params);
            },
            step);
      } catch (const InvalidParameter& e) {
        throw RecipeError(std::string("malformed ") + step_kind_name(step_kind(step)) + " step: " + e.what());
      }
    }
  }
}

namespace detail {

struct DirectStepRunner {
  template <typename Fn>
  Image operator()(StepKind, Fn&& fn) const {
    return fn();
  }
};

}  // namespace detail

// Replays a recipe. The mix is evaluated as
//   clean + sum_i w_i (chain_i - clean),
// algebraically the convex combination, and bitwise the clean image whenever
// every chain reproduces it. `run(kind, fn)` must return fn(); benchmarking
// wraps it to time each primitive.
template <typename StepRunner = detail::DirectStepRunner>
Image apply_recipe(const Image& img, const Recipe& recipe, StepRunner&& run = {}) {
  validate(recipe);
  Image out = img;
  auto mixed = out.values();
  const auto clean = img.values();
  for (std::size_t i = 0; i < recipe.chains.size(); ++i) {
    Image current = img;
    for (const auto& step : recipe.chains[i]) {
      if (std::holds_alternative<IdentityStep>(step)) continue;
      current = run(step_kind(step), [&] { return apply_step(current, step); });
    }
    const double w = recipe.weights[i + 1];
    if (w == 0.0) continue;
    const auto chain = current.values();
    for (std::size_t p = 0; p < mixed.size(); ++p) mixed[p] += w * (chain[p] - clean[p]);
  }
  clamp_in_place(out);
  return out;
}

}  // namespace prime
