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
#include <string>
#include <vector>

#include "prime/core/distributions.hpp"
#include "prime/core/errors.hpp"
#include "prime/core/image.hpp"
#include "prime/core/rng.hpp"
#include "prime/core/strength.hpp"

namespace prime {

struct SpectralSettings {
  int kernel_size = 3;
  StrengthRange strength{0.0, 4.0};
  friend bool operator==(const SpectralSettings&, const SpectralSettings&) = default;
};

// Frozen draw of a random FIR filter. `taps` holds the perturbation only; the
// applied filter is taps plus a unit impulse at the center.
struct SpectralParams {
  int kernel_size = 1;
  double strength = 0.0;
  std::vector<double> taps;  // kernel_size x kernel_size, row-major
  friend bool operator==(const SpectralParams&, const SpectralParams&) = default;
};

namespace detail {

inline void check_kernel_size(int kernel_size) {
  if (kernel_size < 1 || kernel_size % 2 == 0) {
    throw InvalidParameter("spectral kernel size must be odd and positive, got " + std::to_string(kernel_size));
  }
}

// Mirror index without repeating the edge sample: -1 -> 1, n -> n - 2.
inline std::size_t reflect_index(std::ptrdiff_t i, std::size_t n) noexcept {
  if (n == 1) return 0;
  const auto period = static_cast<std::ptrdiff_t>(2 * (n - 1));
  i %= period;
  if (i < 0) i += period;
  if (i >= static_cast<std::ptrdiff_t>(n)) i = period - i;
  return static_cast<std::size_t>(i);
}

}  // namespace detail

inline SpectralParams sample_spectral_params(Rng& rng, int kernel_size, const StrengthRange& range, double alpha) {
  detail::check_kernel_size(kernel_size);
  SpectralParams params;
  params.kernel_size = kernel_size;
  params.strength = sample_strength(rng, range, alpha, "spectral");
  params.taps.resize(static_cast<std::size_t>(kernel_size) * kernel_size);
  for (double& t : params.taps) t = sample_gaussian(rng, 0.0, params.strength);
  return params;
}

inline SpectralParams sample_spectral_params(Rng& rng, const SpectralSettings& settings, double alpha) {
  return sample_spectral_params(rng, settings.kernel_size, settings.strength, alpha);
}

inline void validate(const SpectralParams& params) {
  detail::check_kernel_size(params.kernel_size);
  const auto k = static_cast<std::size_t>(params.kernel_size);
  detail::require(params.taps.size() == k * k, "spectral taps must hold kernel_size^2 values");
  detail::require(params.strength >= 0.0, "spectral strength must be >= 0");
}

// Same-size convolution of every channel with (delta + taps), mirror padding,
// then clamp to [0, 1].
inline Image apply_spectral(const Image& img, const SpectralParams& params) {
  validate(params);
  detail::require(!img.empty(), "spectral transform needs a nonempty image");
  const auto k = static_cast<std::size_t>(params.kernel_size);
  if (k > img.height() || k > img.width()) {
    throw InvalidParameter("spectral kernel (" + std::to_string(k) + ") larger than image " +
                           std::to_string(img.height()) + "x" + std::to_string(img.width()));
  }
  const std::size_t half = k / 2;
  const std::size_t H = img.height(), W = img.width();

  std::vector<double> kernel = params.taps;
  kernel[half * k + half] += 1.0;

  // Mirror-padded copy so the inner loops are branch-free.
  const std::size_t PW = W + 2 * half;
  const std::size_t row_len = PW * kChannels;
  std::vector<double> padded((H + 2 * half) * row_len);
  for (std::size_t py = 0; py < H + 2 * half; ++py) {
    const std::size_t sy = detail::reflect_index(static_cast<std::ptrdiff_t>(py) - static_cast<std::ptrdiff_t>(half), H);
    for (std::size_t px = 0; px < PW; ++px) {
      const std::size_t sx =
          detail::reflect_index(static_cast<std::ptrdiff_t>(px) - static_cast<std::ptrdiff_t>(half), W);
      for (std::size_t c = 0; c < kChannels; ++c) padded[py * row_len + px * kChannels + c] = img.at(sy, sx, c);
    }
  }

  Image out(H, W, 0.0);
  const std::size_t n = W * kChannels;
  for (std::size_t y = 0; y < H; ++y) {
    double* acc = out.row(y).data();
    for (std::size_t a = 0; a < k; ++a) {
      const double* src_row = padded.data() + (y + 2 * half - a) * row_len;
      for (std::size_t b = 0; b < k; ++b) {
        const double w = kernel[a * k + b];
        const double* src = src_row + (2 * half - b) * kChannels;
        for (std::size_t t = 0; t < n; ++t) acc[t] += w * src[t];
      }
    }
  }
  clamp_in_place(out);
  return out;
}

}  // namespace prime
