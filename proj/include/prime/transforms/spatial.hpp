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

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "prime/core/distributions.hpp"
#include "prime/core/errors.hpp"
#include "prime/core/image.hpp"
#include "prime/core/rng.hpp"
#include "prime/core/strength.hpp"

namespace prime {

struct SpatialSettings {
  int cutoff = 100;
  StrengthRange strength{0.0, 0.018};
  friend bool operator==(const SpatialSettings&, const SpatialSettings&) = default;
};

enum class Axis : int { horizontal = 0, vertical = 1 };

struct FrequencyPair {
  int i = 0;  // frequency along rows (r1)
  int j = 0;  // frequency along columns (r2)
  friend bool operator==(const FrequencyPair&, const FrequencyPair&) = default;
};

// Largest j >= 0 with i^2 + j^2 <= cutoff^2.
inline int quarter_disc_row_length(int cutoff, int i) noexcept {
  const std::int64_t r = static_cast<std::int64_t>(cutoff) * cutoff - static_cast<std::int64_t>(i) * i;
  if (r < 0) return 0;
  auto s = static_cast<std::int64_t>(std::sqrt(static_cast<double>(r)));
  while (s * s > r) --s;
  while ((s + 1) * (s + 1) <= r) ++s;
  return static_cast<int>(s);
}

// Number of (i, j) with i, j >= 1 and i^2 + j^2 <= cutoff^2.
inline std::size_t quarter_disc_count(int cutoff) noexcept {
  std::size_t count = 0;
  for (int i = 1; i <= cutoff; ++i) count += static_cast<std::size_t>(quarter_disc_row_length(cutoff, i));
  return count;
}

// Admissible pairs in canonical order: i ascending, then j ascending. The
// coefficient vectors of SpatialParams follow this order.
inline std::vector<FrequencyPair> quarter_disc_pairs(int cutoff) {
  std::vector<FrequencyPair> pairs;
  pairs.reserve(quarter_disc_count(cutoff));
  for (int i = 1; i <= cutoff; ++i) {
    const int len = quarter_disc_row_length(cutoff, i);
    for (int j = 1; j <= len; ++j) pairs.push_back({i, j});
  }
  return pairs;
}

// Frozen draw of a sine-series displacement field. One coefficient per
// admissible pair and axis, in quarter_disc_pairs() order.
struct SpatialParams {
  int cutoff = 1;
  double strength = 0.0;
  std::vector<double> horizontal;
  std::vector<double> vertical;

  const std::vector<double>& coefficients(Axis axis) const {
    return axis == Axis::horizontal ? horizontal : vertical;
  }
  friend bool operator==(const SpatialParams&, const SpatialParams&) = default;
};

// Per-pixel displacement in normalized coordinate units, row-major.
// `horizontal` displaces r2 (columns), `vertical` displaces r1 (rows).
struct DisplacementField {
  std::size_t height = 0;
  std::size_t width = 0;
  std::vector<double> horizontal;
  std::vector<double> vertical;

  double horizontal_at(std::size_t y, std::size_t x) const noexcept { return horizontal[y * width + x]; }
  double vertical_at(std::size_t y, std::size_t x) const noexcept { return vertical[y * width + x]; }
};

inline void validate(const SpatialParams& params) {
  detail::require(params.cutoff >= 1, "spatial cutoff must be >= 1");
  detail::require(params.strength >= 0.0, "spatial strength must be >= 0");
  const std::size_t count = quarter_disc_count(params.cutoff);
  detail::require(params.horizontal.size() == count && params.vertical.size() == count,
                  "spatial coefficient count does not match cutoff " + std::to_string(params.cutoff));
}

namespace detail {

// 1 / sqrt(i^2 + j^2) over quarter_disc_pairs(cutoff), cached per thread for the last cutoffs seen.
inline std::shared_ptr<const std::vector<double>> inverse_radii(int cutoff) {
  thread_local std::vector<std::pair<int, std::shared_ptr<const std::vector<double>>>> cache;
  for (const auto& [k, table] : cache)
    if (k == cutoff) return table;
  if (cache.size() >= 4) cache.erase(cache.begin());
  auto table = std::make_shared<std::vector<double>>();
  table->reserve(quarter_disc_count(cutoff));
  for (int i = 1; i <= cutoff; ++i) {
    const int len = quarter_disc_row_length(cutoff, i);
    for (int j = 1; j <= len; ++j) table->push_back(1.0 / std::sqrt(double(i) * i + double(j) * j));
  }
  cache.emplace_back(cutoff, table);
  return table;
}

}  // namespace detail

// beta_ij ~ N(0, sigma^2 / (i^2 + j^2)) independently per axis; sigma ~ U[alpha*min, alpha*max].
inline SpatialParams sample_spatial_params(Rng& rng, int cutoff, const StrengthRange& range, double alpha) {
  if (cutoff < 1) throw InvalidParameter("spatial cutoff must be >= 1, got " + std::to_string(cutoff));
  SpatialParams params;
  params.cutoff = cutoff;
  params.strength = sample_strength(rng, range, alpha, "spatial");
  const std::size_t count = quarter_disc_count(cutoff);
  params.horizontal.assign(count, 0.0);
  params.vertical.assign(count, 0.0);
  if (params.strength == 0.0) return params;

  const auto radii = detail::inverse_radii(cutoff);
  const std::vector<double>& inv_radius = *radii;
  for (std::vector<double>* axis : {&params.horizontal, &params.vertical}) {
    for (std::size_t p = 0; p < count; ++p) (*axis)[p] = params.strength * inv_radius[p] * standard_normal(rng);
  }
  return params;
}

inline SpatialParams sample_spatial_params(Rng& rng, const SpatialSettings& settings, double alpha) {
  return sample_spatial_params(rng, settings.cutoff, settings.strength, alpha);
}

namespace detail {

// sin(pi * m / n), exactly zero whenever m is a multiple of n.
inline double sin_pi_ratio(std::int64_t m, std::int64_t n) noexcept {
  const std::int64_t period = 2 * n;
  m %= period;
  if (m < 0) m += period;
  double sign = 1.0;
  if (m >= n) {
    m -= n;
    sign = -1.0;
  }
  if (m == 0) return 0.0;
  if (2 * m > n) m = n - m;
  return sign * std::sin(std::numbers::pi * static_cast<double>(m) / static_cast<double>(n));
}

// On a grid r = k / n, frequency i aliases onto [1, n-1] with a sign, or
// vanishes when i is a multiple of n.
struct Folded {
  int index = 0;  // 0 means the basis function is identically zero on the grid
  double sign = 1.0;
};

inline Folded fold_frequency(int i, int n) noexcept {
  const int m = i % (2 * n);
  if (m == 0 || m == n) return {};
  if (m < n) return {m, 1.0};
  return {2 * n - m, -1.0};
}

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// points x count table T(k, i - 1) = sin(pi * i * k / (points - 1)), cached per thread.
inline std::shared_ptr<const RowMatrix> sine_table(std::size_t points, int count) {
  struct Entry {
    std::size_t points;
    int count;
    std::shared_ptr<const RowMatrix> table;
  };
  thread_local std::vector<Entry> cache;
  for (const auto& e : cache)
    if (e.points == points && e.count == count) return e.table;
  if (cache.size() >= 8) cache.erase(cache.begin());
  const auto n = static_cast<std::int64_t>(points) - 1;
  auto table = std::make_shared<RowMatrix>(static_cast<Eigen::Index>(points), count);
  for (std::size_t k = 0; k < points; ++k)
    for (int i = 1; i <= count; ++i) (*table)(static_cast<Eigen::Index>(k), i - 1) = sin_pi_ratio(i * std::int64_t(k), n);
  cache.push_back({points, count, table});
  return table;
}

}  // namespace detail

// Evaluates tau'(r) = sum beta_ij sin(pi i r1) sin(pi j r2) on the H x W grid.
//
// Because r1 = k / (H - 1), frequencies above the grid's Nyquist index alias
// exactly onto lower ones; coefficients are folded first and the series is
// then a separable product S1 * B * S2^T of sine tables. Border rows and
// columns come out exactly zero.
inline DisplacementField displacement_field(const SpatialParams& params, std::size_t height, std::size_t width) {
  validate(params);
  if (height < 2 || width < 2) throw InvalidParameter("displacement field needs H, W >= 2");
  DisplacementField field;
  field.height = height;
  field.width = width;
  field.horizontal.assign(height * width, 0.0);
  field.vertical.assign(height * width, 0.0);

  const int n1 = static_cast<int>(height) - 1;
  const int n2 = static_cast<int>(width) - 1;
  const int rows = std::min(params.cutoff, n1 - 1);
  const int cols = std::min(params.cutoff, n2 - 1);
  if (rows <= 0 || cols <= 0) return field;

  detail::RowMatrix folded_h = detail::RowMatrix::Zero(rows, cols);
  detail::RowMatrix folded_v = detail::RowMatrix::Zero(rows, cols);
  std::size_t p = 0;
  for (int i = 1; i <= params.cutoff; ++i) {
    const int len = quarter_disc_row_length(params.cutoff, i);
    const detail::Folded fi = detail::fold_frequency(i, n1);
    if (fi.index == 0) {
      p += static_cast<std::size_t>(len);
      continue;
    }
    for (int j = 1; j <= len; ++j, ++p) {
      const detail::Folded fj = detail::fold_frequency(j, n2);
      if (fj.index == 0) continue;
      const double s = fi.sign * fj.sign;
      folded_h(fi.index - 1, fj.index - 1) += s * params.horizontal[p];
      folded_v(fi.index - 1, fj.index - 1) += s * params.vertical[p];
    }
  }

  const auto t1 = detail::sine_table(height, rows);
  const auto t2 = detail::sine_table(width, cols);
  const detail::RowMatrix& s1 = *t1;
  const detail::RowMatrix& s2 = *t2;

  using MapOut = Eigen::Map<detail::RowMatrix>;
  MapOut(field.horizontal.data(), height, width).noalias() = (s1 * folded_h) * s2.transpose();
  MapOut(field.vertical.data(), height, width).noalias() = (s1 * folded_v) * s2.transpose();
  return field;
}

// Backward warp: output at pixel (y, x) samples the input at
// (y + dv * (H - 1), x + dh * (W - 1)) bilinearly, source clamped to the
// image. Result clamped to [0, 1].
inline Image warp_image(const Image& img, const DisplacementField& field) {
  detail::require(field.height == img.height() && field.width == img.width(),
                  "displacement field size does not match image");
  const std::size_t H = img.height(), W = img.width();
  const double ymax = static_cast<double>(H - 1), xmax = static_cast<double>(W - 1);
  Image out(H, W);
  for (std::size_t y = 0; y < H; ++y) {
    for (std::size_t x = 0; x < W; ++x) {
      const double sy = std::clamp(static_cast<double>(y) + field.vertical_at(y, x) * ymax, 0.0, ymax);
      const double sx = std::clamp(static_cast<double>(x) + field.horizontal_at(y, x) * xmax, 0.0, xmax);
      const auto y0 = static_cast<std::size_t>(sy);
      const auto x0 = static_cast<std::size_t>(sx);
      const std::size_t y1 = std::min(y0 + 1, H - 1);
      const std::size_t x1 = std::min(x0 + 1, W - 1);
      const double fy = sy - static_cast<double>(y0);
      const double fx = sx - static_cast<double>(x0);
      for (std::size_t c = 0; c < kChannels; ++c) {
        const double top = (1.0 - fx) * img.at(y0, x0, c) + fx * img.at(y0, x1, c);
        const double bottom = (1.0 - fx) * img.at(y1, x0, c) + fx * img.at(y1, x1, c);
        out.at(y, x, c) = (1.0 - fy) * top + fy * bottom;
      }
    }
  }
  clamp_in_place(out);
  return out;
}

inline Image apply_spatial(const Image& img, const SpatialParams& params) {
  if (img.height() < 2 || img.width() < 2) throw InvalidParameter("spatial transform needs H, W >= 2");
  return warp_image(img, displacement_field(params, img.height(), img.width()));
}

}  // namespace prime
