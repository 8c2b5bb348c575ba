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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "prime/augment/additive.hpp"
#include "prime/core/errors.hpp"
#include "prime/transforms/color.hpp"
#include "prime/transforms/spatial.hpp"
#include "prime/transforms/spectral.hpp"

namespace prime {

enum class Primitive { spectral, spatial, color, additive };

inline constexpr std::string_view primitive_name(Primitive p) noexcept {
  switch (p) {
    case Primitive::spectral: return "spectral";
    case Primitive::spatial: return "spatial";
    case Primitive::color: return "color";
    case Primitive::additive: return "additive";
  }
  return "unknown";
}

inline std::optional<Primitive> parse_primitive(std::string_view name) noexcept {
  for (Primitive p : {Primitive::spectral, Primitive::spatial, Primitive::color, Primitive::additive})
    if (primitive_name(p) == name) return p;
  return std::nullopt;
}

// Everything the mixing pipeline needs: per-primitive smoothness and strength ranges,
// which primitives may be drawn, the mixing width (chains) and depth (steps
// per chain), and a global strength scale alpha.
struct PrimeConfig {
  SpectralSettings spectral;
  SpatialSettings spatial;
  ColorSettings color;
  AdditiveSettings additive;
  std::vector<Primitive> enabled{Primitive::spectral, Primitive::spatial, Primitive::color};
  int width = 3;
  int depth = 3;
  double alpha = 1.0;
  // An empty `enabled` set is rejected unless this is set.
  bool allow_identity_only = false;

  bool is_enabled(Primitive p) const noexcept { return std::find(enabled.begin(), enabled.end(), p) != enabled.end(); }

  void validate() const {
    auto fail = [](const std::string& msg) { throw ConfigError(msg); };
    if (width < 1) fail("mixing width must be >= 1");
    if (depth < 1) fail("mixing depth must be >= 1");
    if (!(alpha >= 0.0)) fail("alpha must be >= 0");
    if (enabled.empty() && !allow_identity_only)
      fail("no primitive enabled; set allow_identity_only to run the identity pipeline");
    for (std::size_t i = 0; i < enabled.size(); ++i)
      for (std::size_t j = i + 1; j < enabled.size(); ++j)
        if (enabled[i] == enabled[j]) fail("primitive listed twice: " + std::string(primitive_name(enabled[i])));
    try {
      if (spectral.kernel_size < 1 || spectral.kernel_size % 2 == 0) fail("spectral kernel size must be odd and >= 1");
      if (spatial.cutoff < 1) fail("spatial cutoff must be >= 1");
      if (color.max_frequency < 0 || color.band_width < 1 || color.band_width > color.max_frequency + 1)
        fail("color band width must lie in [1, max_frequency + 1]");
      spectral.strength.validate("spectral");
      spatial.strength.validate("spatial");
      color.strength.validate("color");
      additive.strength.validate("additive");
    } catch (const InvalidParameter& e) {
      throw ConfigError(e.what());
    }
  }

  friend bool operator==(const PrimeConfig&, const PrimeConfig&) = default;
};

// 32x32-class defaults: 3x3 filters with sigma up to 4, K_tau = 100, a
// full-band color curve with K_gamma = 10 and sigma up to 0.01.
inline PrimeConfig cifar_preset() {
  PrimeConfig cfg;
  cfg.spectral = {3, {0.0, 4.0}};
  cfg.spatial = {100, {0.0, 0.018}};
  cfg.color = {10, 11, {0.0, 0.01}};
  return cfg;
}

// 224x224-class defaults: K_tau = 500 and K_gamma = 500 with a 20-frequency band.
inline PrimeConfig imagenet_preset() {
  PrimeConfig cfg;
  cfg.spectral = {3, {0.0, 4.0}};
  cfg.spatial = {500, {0.0, 0.0036}};
  cfg.color = {500, 20, {0.0, 0.05}};
  return cfg;
}

inline std::optional<PrimeConfig> preset(std::string_view name) {
  if (name == "cifar") return cifar_preset();
  if (name == "imagenet") return imagenet_preset();
  return std::nullopt;
}

}  // namespace prime
