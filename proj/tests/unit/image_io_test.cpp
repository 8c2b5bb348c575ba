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

#include <gtest/gtest.h>

#include <cstdint>
#include <numeric>
#include <vector>

#include "prime/pipeline/checksum.hpp"
#include "prime/pipeline/image_io.hpp"
#include "test_support.hpp"

namespace prime {
namespace {

Bytes gradient_rgb(std::size_t h, std::size_t w) {
  Bytes rgb(h * w * 3);
  for (std::size_t y = 0; y < h; ++y)
    for (std::size_t x = 0; x < w; ++x) {
      rgb[(y * w + x) * 3 + 0] = static_cast<std::uint8_t>(x * 255 / (w - 1));
      rgb[(y * w + x) * 3 + 1] = static_cast<std::uint8_t>(y * 255 / (h - 1));
      rgb[(y * w + x) * 3 + 2] = 128;
    }
  return rgb;
}

TEST(Rgb8, EveryLevelRoundTrips) {
  Bytes levels(256 * 3);
  for (std::size_t i = 0; i < levels.size(); ++i) levels[i] = static_cast<std::uint8_t>(i / 3);
  const Image img = image_from_rgb8(levels, 16, 16);
  EXPECT_EQ(img.at(0, 0, 0), 0.0);
  EXPECT_EQ(img.at(15, 15, 2), 1.0);
  EXPECT_DOUBLE_EQ(img.at(0, 1, 0), 1.0 / 255.0);
  EXPECT_EQ(image_to_rgb8(img), levels);
}

TEST(Rgb8, OutOfRangeValuesClampOnWrite) {
  Image img(1, 2);
  const double vals[] = {-0.5, 1.7, 0.5, 0.25 / 255.0, 3.7 / 255.0, 0.999};
  std::copy(std::begin(vals), std::end(vals), img.values().begin());
  const Bytes out = image_to_rgb8(img);
  EXPECT_EQ(out, (Bytes{0, 255, 128, 0, 4, 255}));
}

TEST(Rgb8, RejectsWrongLength) { EXPECT_THROW(image_from_rgb8(Bytes(10), 2, 2), InvalidParameter); }

TEST(Png, RoundTripIsExactAtEightBits) {
  const Bytes rgb = gradient_rgb(13, 21);
  const Image img = image_from_rgb8(rgb, 13, 21);
  const Bytes png = encode_png(img);
  ASSERT_TRUE(looks_like_png(png));
  const Image back = decode_image(png);
  EXPECT_EQ(back.height(), 13u);
  EXPECT_EQ(back.width(), 21u);
  EXPECT_EQ(image_to_rgb8(back), rgb);
  EXPECT_EQ(encode_png(back), png);
}

TEST(Png, FileRoundTrip) {
  testing::TempDir dir;
  const Image img = image_from_rgb8(image_to_rgb8(testing::random_image(3, 9, 7)), 9, 7);
  write_png(dir / "a.png", img);
  EXPECT_EQ(read_image(dir / "a.png").values().size(), img.size());
  EXPECT_EQ(testing::max_abs_diff(read_image(dir / "a.png"), img), 0.0);
}

TEST(Jpeg, DecodesCloseToSource) {
  const Bytes rgb = gradient_rgb(32, 48);
  const auto jpg = testing::encode_jpeg(rgb, 32, 48, 95);
  ASSERT_TRUE(looks_like_jpeg(jpg));
  const Image img = decode_image(jpg);
  ASSERT_EQ(img.height(), 32u);
  ASSERT_EQ(img.width(), 48u);
  EXPECT_LT(testing::max_abs_diff(img, image_from_rgb8(rgb, 32, 48)), 12.0 / 255.0);
}

TEST(Decode, CorruptOrUnknownBytesAreDataErrors) {
  EXPECT_THROW(decode_image(Bytes{}), DataError);
  EXPECT_THROW(decode_image(Bytes{'G', 'I', 'F', '8', '9', 'a', 0, 0}), DataError);
  Bytes png = encode_png(testing::random_image(1, 8, 8));
  png.resize(png.size() / 2);
  EXPECT_THROW(decode_image(png), DataError);
  auto jpg = testing::encode_jpeg(gradient_rgb(16, 16), 16, 16);
  const auto full = jpg;
  jpg.resize(20);
  EXPECT_THROW(decode_image(jpg), DataError);
  jpg.assign(full.begin(), full.end() - 40);
  EXPECT_THROW(decode_image(jpg), DataError);
  EXPECT_THROW(read_image("/nonexistent/file.png"), DataError);
}

TEST(Checksum, KnownDigests) {
  EXPECT_EQ(sha256_hex(std::string("abc")), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  EXPECT_EQ(sha256_hex(std::string()), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
}

}  // namespace
}  // namespace prime
