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
#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <string>
#include <vector>

#include "prime/core/distributions.hpp"
#include "prime/core/errors.hpp"
#include "prime/core/image.hpp"
#include "prime/core/rng.hpp"
#include "prime/core/strength.hpp"

namespace prime {

struct ColorSettings {
  int max_frequency = 10;
  int band_width = 11;  // max_frequency + 1 uses every frequency in [0, max_frequency]
  StrengthRange strength{0.0, 0.01};
  friend bool operator==(const ColorSettings&, const ColorSettings&) = default;
};

// Frozen draw of a per-channel color curve
//   v -> v + sum_{n = band_start}^{band_start + band_width - 1} beta_n[c] sin(pi n v).
struct ColorParams {
  int max_frequency = 0;
  int band_width = 1;
  int band_start = 0;
  double strength = 0.0;
  std::vector<std::array<double, 3>> coefficients;  // one RGB triple per band frequency
  friend bool operator==(const ColorParams&, const ColorParams&) = default;
};

inline constexpr std::size_t kDefaultColorLutSize = 4096;
inline constexpr std::size_t kMinColorLutSize = 64;

namespace detail {

inline void check_band(int max_frequency, int band_width) {
  if (max_frequency < 0 || band_width < 1 || band_width > max_frequency + 1) {
    throw InvalidParameter("color band width must lie in [1, max_frequency + 1], got band_width=" +
                           std::to_string(band_width) + " max_frequency=" + std::to_string(max_frequency));
  }
}

// sum_n beta_n[c] * sin(n x) over the band n = n0, n0+1, ..., for all three
// channels, given sin/cos of x and of n0 x. Walks the band with the Chebyshev
// recurrence sin((n+1)x) = 2 cos(x) sin(nx) - sin((n-1)x).
inline std::array<double, 3> band_sum(const ColorParams& params, double s1, double c1, double sn,
                                      double cn) noexcept {
  std::array<double, 3> acc{};
  double cur = sn;
  double prev = sn * c1 - cn * s1;
  const double two_cos = 2.0 * c1;
  for (const auto& beta : params.coefficients) {
    acc[0] += beta[0] * cur;
    acc[1] += beta[1] * cur;
    acc[2] += beta[2] * cur;
    const double next = two_cos * cur - prev;
    prev = cur;
    cur = next;
  }
  return acc;
}

// sum_n beta_n[c] * sin(pi n v) at one input value.
inline std::array<double, 3> band_sum(const ColorParams& params, double v) noexcept {
  // sin(pi n v) vanishes for integer n at both endpoints.
  if (v == 0.0 || v == 1.0) return {};
  const double x = std::numbers::pi * v;
  const double s1 = std::sin(x), c1 = std::cos(x);
  if (params.band_start == 0) return band_sum(params, s1, c1, 0.0, 1.0);
  const double n0x = static_cast<double>(params.band_start) * x;
  return band_sum(params, s1, c1, std::sin(n0x), std::cos(n0x));
}

// Curve values at v = l / (size - 1). Between exact resyncs every 256 nodes,
// sin/cos advance by rotation, which keeps the drift near machine precision.
inline std::vector<std::array<double, 3>> color_table(const ColorParams& params, std::size_t size) {
  constexpr std::size_t kResync = 256;
  std::vector<std::array<double, 3>> table(size);
  const double step = std::numbers::pi / static_cast<double>(size - 1);
  const double n0 = static_cast<double>(params.band_start);
  const double rs1 = std::sin(step), rc1 = std::cos(step);
  const double rsn = std::sin(n0 * step), rcn = std::cos(n0 * step);
  double s1 = 0.0, c1 = 1.0, sn = 0.0, cn = 1.0;
  for (std::size_t l = 0; l < size; ++l) {
    const double v = grid_coordinate(l, size);
    if (l % kResync == 0) {
      const double x = std::numbers::pi * v;
      s1 = std::sin(x);
      c1 = std::cos(x);
      sn = std::sin(n0 * x);
      cn = std::cos(n0 * x);
    } else {
      const double s1n = s1 * rc1 + c1 * rs1, c1n = c1 * rc1 - s1 * rs1;
      const double snn = sn * rcn + cn * rsn, cnn = cn * rcn - sn * rsn;
      s1 = s1n;
      c1 = c1n;
      sn = snn;
      cn = cnn;
    }
    if (v == 0.0 || v == 1.0) {
      table[l] = {v, v, v};
      continue;
    }
    const auto sum = band_sum(params, s1, c1, sn, cn);
    table[l] = {v + sum[0], v + sum[1], v + sum[2]};
  }
  return table;
}

}  // namespace detail

inline ColorParams sample_color_params(Rng& rng, int max_frequency, int band_width, const StrengthRange& range,
                                       double alpha) {
  detail::check_band(max_frequency, band_width);
  ColorParams params;
  params.max_frequency = max_frequency;
  params.band_width = band_width;
  params.band_start = static_cast<int>(sample_uniform_int(rng, 0, max_frequency - band_width + 1));
  params.strength = sample_strength(rng, range, alpha, "color");
  params.coefficients.assign(static_cast<std::size_t>(band_width), {0.0, 0.0, 0.0});
  for (auto& beta : params.coefficients)
    for (double& b : beta) b = sample_gaussian(rng, 0.0, params.strength);
  return params;
}

inline ColorParams sample_color_params(Rng& rng, const ColorSettings& settings, double alpha) {
  return sample_color_params(rng, settings.max_frequency, settings.band_width, settings.strength, alpha);
}

inline void validate(const ColorParams& params) {
  detail::check_band(params.max_frequency, params.band_width);
  detail::require(params.band_start >= 0 && params.band_start + params.band_width - 1 <= params.max_frequency,
                  "color band must lie within [0, max_frequency]");
  detail::require(params.coefficients.size() == static_cast<std::size_t>(params.band_width),
                  "color coefficient count must equal band width");
  detail::require(params.strength >= 0.0, "color strength must be >= 0");
}

// Upper bound on |f''| of each channel's curve, used to size the lookup table.
inline std::array<double, 3> color_curvature_bound(const ColorParams& params) noexcept {
  std::array<double, 3> bound{};
  for (std::size_t k = 0; k < params.coefficients.size(); ++k) {
    const double w = std::numbers::pi * static_cast<double>(params.band_start + static_cast<int>(k));
    for (std::size_t c = 0; c < kChannels; ++c) bound[c] += std::abs(params.coefficients[k][c]) * w * w;
  }
  return bound;
}

// Table size whose linear-interpolation error stays below `tolerance`.
inline std::size_t color_lut_size_for(const ColorParams& params, double tolerance = 1e-5) {
  const auto bound = color_curvature_bound(params);
  const double worst = *std::max_element(bound.begin(), bound.end());
  const double intervals = std::ceil(std::sqrt(worst / (8.0 * tolerance)));
  return std::max<std::size_t>(kMinColorLutSize, static_cast<std::size_t>(intervals) + 1);
}

// Evaluates the curve directly at every value.
inline Image apply_color_exact(const Image& img, const ColorParams& params) {
  validate(params);
  Image out = img;
  auto values = out.values();
  for (std::size_t p = 0; p < values.size(); ++p) values[p] += detail::band_sum(params, values[p])[p % kChannels];
  clamp_in_place(out);
  return out;
}

// Samples the curve at `lut_size` evenly spaced nodes on [0, 1] and
// interpolates linearly. Values outside [0, 1] are evaluated directly.
inline Image apply_color_lut(const Image& img, const ColorParams& params, std::size_t lut_size = kDefaultColorLutSize) {
  validate(params);
  detail::require(lut_size >= 2, "color lookup table needs at least 2 nodes");
  const auto table = detail::color_table(params, lut_size);
  const double last = static_cast<double>(lut_size - 1);
  Image out = img;
  auto values = out.values();
  for (std::size_t p = 0; p < values.size(); ++p) {
    const double v = values[p];
    const std::size_t c = p % kChannels;
    if (!(v >= 0.0 && v <= 1.0)) {
      values[p] = v + detail::band_sum(params, v)[c];
      continue;
    }
    const double t = v * last;
    const auto l = std::min(static_cast<std::size_t>(t), lut_size - 2);
    const double f = t - static_cast<double>(l);
    values[p] = (1.0 - f) * table[l][c] + f * table[l + 1][c];
  }
  clamp_in_place(out);
  return out;
}

// Uses the lookup table when it is both accurate (error < 1e-5) and cheaper
// than direct evaluation, i.e. when it has fewer nodes than the image has
// values.
inline Image apply_color(const Image& img, const ColorParams& params) {
  validate(params);
  const bool all_zero = std::all_of(params.coefficients.begin(), params.coefficients.end(),
                                    [](const auto& beta) { return beta[0] == 0.0 && beta[1] == 0.0 && beta[2] == 0.0; });
  if (all_zero) return clamp_image(img);
  const std::size_t lut = color_lut_size_for(params);
  if (lut < img.size()) return apply_color_lut(img, params, lut);
  return apply_color_exact(img, params);
}

}  // namespace prime
