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
#include <cstdint>

#include "prime/augment/augment.hpp"
#include "prime/augment/config.hpp"
#include "prime/core/errors.hpp"
#include "prime/core/image.hpp"
#include "prime/core/rng.hpp"

namespace prime {

// rows x cols tiles separated by `separator` pixels of `separator_value`.
// Tile 0 (top-left) is the clean image; tile t > 0 is prime_augment under
// the stream derive(seed, {t}).
inline Image preview_grid(const Image& img, const PrimeConfig& cfg, std::uint64_t seed, int rows, int cols,
                          std::size_t separator = 2, double separator_value = 1.0) {
  if (rows < 1 || cols < 1) throw InvalidParameter("preview grid dimensions must be positive");
  detail::require(!img.empty(), "preview needs a nonempty image");
  const std::size_t H = img.height(), W = img.width();
  const auto R = static_cast<std::size_t>(rows), C = static_cast<std::size_t>(cols);
  Image grid(R * H + (R - 1) * separator, C * W + (C - 1) * separator, separator_value);
  for (std::size_t t = 0; t < R * C; ++t) {
    const Image tile = t == 0 ? img : prime_augment(img, cfg, Rng::derive(seed, {t})).image;
    const std::size_t oy = (t / C) * (H + separator), ox = (t % C) * (W + separator);
    for (std::size_t y = 0; y < H; ++y)
      for (std::size_t x = 0; x < W; ++x)
        for (std::size_t c = 0; c < kChannels; ++c) grid.at(oy + y, ox + x, c) = tile.at(y, x, c);
  }
  return grid;
}

}  // namespace prime
