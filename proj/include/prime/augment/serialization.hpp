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

#include <charconv>
#include <cstdint>
#include <cstdio>
#include <map>
#include <nlohmann/json.hpp>
#include <string>
#include <utility>
#include <vector>

#include "prime/augment/config.hpp"
#include "prime/augment/recipe.hpp"
#include "prime/core/errors.hpp"

// JSON forms of PrimeConfig and Recipe.
//
// Recipe document (schema_version 1):
//   {
//     "schema_version": 1,
//     "weights": [w0, w1, ...],              // w0 = clean image
//     "chains": [[step, ...], ...],
//   }
// with each step one of
//   {"kind": "identity"}
//   {"kind": "spectral", "kernel_size": K, "strength": s, "taps": [K*K row-major]}
//   {"kind": "spatial", "cutoff": K, "strength": s,
//    "coefficients": [[axis, i, j, value], ...]}   // axis 0 = horizontal, 1 = vertical; zeros omitted
//   {"kind": "color", "max_frequency": K, "band_width": D, "band_start": n0, "strength": s,
//    "coefficients": [[r, g, b], ...]}             // D triples, frequencies n0 .. n0 + D - 1
//   {"kind": "additive", "strength": s, "noise_key": ["hex64" x 4]}   // optional "realization": [...]
// Reals are written with round-trip precision.
namespace prime {

inline constexpr int kRecipeSchemaVersion = 1;

namespace detail {

using Json = nlohmann::json;

inline std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

inline std::uint64_t parse_hex64(const std::string& s) {
  std::uint64_t v = 0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v, 16);
  if (s.empty() || ec != std::errc{} || end != s.data() + s.size())
    throw RecipeError("bad 64-bit hex word: '" + s + "'");
  return v;
}

inline Json step_to_json(const Step& step) {
  return std::visit(
      [](const auto& p) -> Json {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, IdentityStep>) {
          return {{"kind", "identity"}};
        } else if constexpr (std::is_same_v<T, SpectralParams>) {
          return {{"kind", "spectral"}, {"kernel_size", p.kernel_size}, {"strength", p.strength}, {"taps", p.taps}};
        } else if constexpr (std::is_same_v<T, SpatialParams>) {
          Json coeffs = Json::array();
          std::size_t idx = 0;
          for (int i = 1; i <= p.cutoff; ++i) {
            const int len = quarter_disc_row_length(p.cutoff, i);
            for (int j = 1; j <= len; ++j, ++idx) {
              if (idx < p.horizontal.size() && p.horizontal[idx] != 0.0)
                coeffs.push_back(Json::array({0, i, j, p.horizontal[idx]}));
              if (idx < p.vertical.size() && p.vertical[idx] != 0.0)
                coeffs.push_back(Json::array({1, i, j, p.vertical[idx]}));
            }
          }
          return {{"kind", "spatial"}, {"cutoff", p.cutoff}, {"strength", p.strength}, {"coefficients", std::move(coeffs)}};
        } else if constexpr (std::is_same_v<T, ColorParams>) {
          Json coeffs = Json::array();
          for (const auto& b : p.coefficients) coeffs.push_back(Json::array({b[0], b[1], b[2]}));
          return {{"kind", "color"},        {"max_frequency", p.max_frequency}, {"band_width", p.band_width},
                  {"band_start", p.band_start}, {"strength", p.strength},         {"coefficients", std::move(coeffs)}};
        } else {
          Json key = Json::array();
          for (auto w : p.noise_key.words) key.push_back(hex64(w));
          Json out = {{"kind", "additive"}, {"strength", p.strength}, {"noise_key", std::move(key)}};
          if (!p.realization.empty()) out["realization"] = p.realization;
          return out;
        }
      },
      step);
}

inline Step step_from_json(const Json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "identity") return IdentityStep{};
  if (kind == "spectral") {
    SpectralParams p;
    p.kernel_size = j.at("kernel_size").get<int>();
    p.strength = j.at("strength").get<double>();
    p.taps = j.at("taps").get<std::vector<double>>();
    return p;
  }
  if (kind == "spatial") {
    SpatialParams p;
    p.cutoff = j.at("cutoff").get<int>();
    p.strength = j.at("strength").get<double>();
    if (p.cutoff < 1) throw RecipeError("spatial cutoff must be >= 1");
    std::vector<std::size_t> row_offset(static_cast<std::size_t>(p.cutoff) + 2, 0);
    for (int i = 1; i <= p.cutoff; ++i)
      row_offset[i + 1] = row_offset[i] + static_cast<std::size_t>(quarter_disc_row_length(p.cutoff, i));
    const std::size_t count = row_offset[p.cutoff + 1];
    p.horizontal.assign(count, 0.0);
    p.vertical.assign(count, 0.0);
    std::vector<char> seen(2 * count, 0);
    for (const auto& e : j.at("coefficients")) {
      if (!e.is_array() || e.size() != 4) throw RecipeError("spatial coefficient entries must be [axis, i, j, value]");
      const int axis = e[0].get<int>(), fi = e[1].get<int>(), fj = e[2].get<int>();
      if (axis != 0 && axis != 1) throw RecipeError("spatial axis must be 0 or 1");
      if (fi < 1 || fi > p.cutoff || fj < 1 || fj > quarter_disc_row_length(p.cutoff, fi))
        throw RecipeError("spatial frequency pair outside the quarter disc");
      const std::size_t idx = row_offset[fi] + static_cast<std::size_t>(fj - 1);
      if (seen[axis * count + idx]++) throw RecipeError("duplicate spatial coefficient");
      (axis == 0 ? p.horizontal : p.vertical)[idx] = e[3].get<double>();
    }
    return p;
  }
  if (kind == "color") {
    ColorParams p;
    p.max_frequency = j.at("max_frequency").get<int>();
    p.band_width = j.at("band_width").get<int>();
    p.band_start = j.at("band_start").get<int>();
    p.strength = j.at("strength").get<double>();
    for (const auto& b : j.at("coefficients")) {
      if (!b.is_array() || b.size() != 3) throw RecipeError("color coefficients must be RGB triples");
      p.coefficients.push_back({b[0].get<double>(), b[1].get<double>(), b[2].get<double>()});
    }
    return p;
  }
  if (kind == "additive") {
    AdditiveParams p;
    p.strength = j.at("strength").get<double>();
    const auto& key = j.at("noise_key");
    if (!key.is_array() || key.size() != 4) throw RecipeError("additive noise_key must hold 4 hex words");
    for (std::size_t i = 0; i < 4; ++i) p.noise_key.words[i] = parse_hex64(key[i].get<std::string>());
    if (j.contains("realization")) p.realization = j.at("realization").get<std::vector<double>>();
    return p;
  }
  throw RecipeError("unknown step kind '" + kind + "'");
}

}  // namespace detail

inline nlohmann::json recipe_to_json(const Recipe& recipe) {
  nlohmann::json chains = nlohmann::json::array();
  for (const auto& chain : recipe.chains) {
    nlohmann::json steps = nlohmann::json::array();
    for (const auto& step : chain) steps.push_back(detail::step_to_json(step));
    chains.push_back(std::move(steps));
  }
  return {{"schema_version", kRecipeSchemaVersion}, {"weights", recipe.weights}, {"chains", std::move(chains)}};
}

// Parses and validates. Any structural problem surfaces as RecipeError.
inline Recipe recipe_from_json(const nlohmann::json& j) {
  Recipe recipe;
  try {
    const int version = j.at("schema_version").get<int>();
    if (version != kRecipeSchemaVersion)
      throw RecipeError("unsupported recipe schema_version " + std::to_string(version));
    recipe.weights = j.at("weights").get<std::vector<double>>();
    for (const auto& chain : j.at("chains")) {
      std::vector<Step> steps;
      for (const auto& step : chain) steps.push_back(detail::step_from_json(step));
      recipe.chains.push_back(std::move(steps));
    }
  } catch (const nlohmann::json::exception& e) {
    throw RecipeError(std::string("malformed recipe JSON: ") + e.what());
  }
  validate(recipe);
  return recipe;
}

inline std::string serialize_recipe(const Recipe& recipe) { return recipe_to_json(recipe).dump(); }

inline Recipe parse_recipe(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw RecipeError(std::string("recipe is not valid JSON: ") + e.what());
  }
  return recipe_from_json(j);
}

// Config document mirrors PrimeConfig:
//   {"width": 3, "depth": 3, "alpha": 1.0, "enabled": ["spectral", "spatial", "color"],
//    "allow_identity_only": false,
//    "spectral": {"kernel_size": 3, "sigma_min": 0, "sigma_max": 4},
//    "spatial": {"cutoff": 100, "sigma_min": 0, "sigma_max": 0.018},
//    "color": {"max_frequency": 10, "band_width": 11, "sigma_min": 0, "sigma_max": 0.01},
//    "additive": {"sigma_min": 0, "sigma_max": 0.05}}
inline nlohmann::json config_to_json(const PrimeConfig& cfg) {
  nlohmann::json enabled = nlohmann::json::array();
  for (Primitive p : cfg.enabled) enabled.push_back(std::string(primitive_name(p)));
  return {
      {"width", cfg.width},
      {"depth", cfg.depth},
      {"alpha", cfg.alpha},
      {"enabled", std::move(enabled)},
      {"allow_identity_only", cfg.allow_identity_only},
      {"spectral",
       {{"kernel_size", cfg.spectral.kernel_size},
        {"sigma_min", cfg.spectral.strength.min},
        {"sigma_max", cfg.spectral.strength.max}}},
      {"spatial",
       {{"cutoff", cfg.spatial.cutoff}, {"sigma_min", cfg.spatial.strength.min}, {"sigma_max", cfg.spatial.strength.max}}},
      {"color",
       {{"max_frequency", cfg.color.max_frequency},
        {"band_width", cfg.color.band_width},
        {"sigma_min", cfg.color.strength.min},
        {"sigma_max", cfg.color.strength.max}}},
      {"additive", {{"sigma_min", cfg.additive.strength.min}, {"sigma_max", cfg.additive.strength.max}}},
  };
}

// Overlays the fields present in `j` onto `base`; absent fields keep their
// base values. Throws ConfigError on unknown primitives or wrong types.
inline PrimeConfig config_from_json(const nlohmann::json& j, PrimeConfig base = {}) {
  try {
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    auto get = [](const nlohmann::json& obj, const char* key, auto& field) {
      if (obj.contains(key)) field = obj.at(key).get<std::decay_t<decltype(field)>>();
    };
    get(j, "width", base.width);
    get(j, "depth", base.depth);
    get(j, "alpha", base.alpha);
    get(j, "allow_identity_only", base.allow_identity_only);
    if (j.contains("enabled")) {
      base.enabled.clear();
      for (const auto& name : j.at("enabled")) {
        auto p = parse_primitive(name.get<std::string>());
        if (!p) throw ConfigError("unknown primitive '" + name.get<std::string>() + "'");
        base.enabled.push_back(*p);
      }
    }
    if (j.contains("spectral")) {
      const auto& s = j.at("spectral");
      get(s, "kernel_size", base.spectral.kernel_size);
      get(s, "sigma_min", base.spectral.strength.min);
      get(s, "sigma_max", base.spectral.strength.max);
    }
    if (j.contains("spatial")) {
      const auto& s = j.at("spatial");
      get(s, "cutoff", base.spatial.cutoff);
      get(s, "sigma_min", base.spatial.strength.min);
      get(s, "sigma_max", base.spatial.strength.max);
    }
    if (j.contains("color")) {
      const auto& s = j.at("color");
      get(s, "max_frequency", base.color.max_frequency);
      get(s, "band_width", base.color.band_width);
      get(s, "sigma_min", base.color.strength.min);
      get(s, "sigma_max", base.color.strength.max);
    }
    if (j.contains("additive")) {
      const auto& s = j.at("additive");
      get(s, "sigma_min", base.additive.strength.min);
      get(s, "sigma_max", base.additive.strength.max);
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed config JSON: ") + e.what());
  }
  base.validate();
  return base;
}

}  // namespace prime
