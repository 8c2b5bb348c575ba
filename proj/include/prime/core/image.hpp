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
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "prime/core/errors.hpp"

namespace prime {

inline constexpr std::size_t kChannels = 3;

// Dense RGB image, row-major with interleaved channels: value (y, x, c) lives
// at ((y * width) + x) * 3 + c. Nominal value range is [0, 1].
class Image {
 public:
  Image() = default;

  Image(std::size_t height, std::size_t width, double fill = 0.0)
      : height_(height), width_(width), data_(height * width * kChannels, fill) {}

  Image(std::size_t height, std::size_t width, std::vector<double> data)
      : height_(height), width_(width), data_(std::move(data)) {
    detail::require(data_.size() == height_ * width_ * kChannels,
                    "image data length must equal height * width * 3 (got " +
                        std::to_string(data_.size()) + ")");
  }

  std::size_t height() const noexcept { return height_; }
  std::size_t width() const noexcept { return width_; }
  std::size_t pixel_count() const noexcept { return height_ * width_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }

  double& at(std::size_t y, std::size_t x, std::size_t c) noexcept {
    return data_[(y * width_ + x) * kChannels + c];
  }
  double at(std::size_t y, std::size_t x, std::size_t c) const noexcept {
    return data_[(y * width_ + x) * kChannels + c];
  }

  std::span<double> values() noexcept { return data_; }
  std::span<const double> values() const noexcept { return data_; }

  // One row of width * 3 values.
  std::span<const double> row(std::size_t y) const noexcept {
    return std::span<const double>(data_).subspan(y * width_ * kChannels, width_ * kChannels);
  }
  std::span<double> row(std::size_t y) noexcept {
    return std::span<double>(data_).subspan(y * width_ * kChannels, width_ * kChannels);
  }

  bool same_shape(const Image& other) const noexcept {
    return height_ == other.height_ && width_ == other.width_;
  }

  friend bool operator==(const Image&, const Image&) = default;

 private:
  std::size_t height_ = 0;
  std::size_t width_ = 0;
  std::vector<double> data_;
};

// Normalized coordinate of pixel `index` along an axis with `extent` pixels:
// index / (extent - 1), so the first and last pixels map to exactly 0 and 1.
inline double grid_coordinate(std::size_t index, std::size_t extent) noexcept {
  if (extent < 2) return 0.0;
  if (index + 1 == extent) return 1.0;
  return static_cast<double>(index) / static_cast<double>(extent - 1);
}

inline void clamp_in_place(Image& img) noexcept {
  for (double& v : img.values()) v = std::min(1.0, std::max(0.0, v));
}

inline Image clamp_image(Image img) noexcept {
  clamp_in_place(img);
  return img;
}

}  // namespace prime
