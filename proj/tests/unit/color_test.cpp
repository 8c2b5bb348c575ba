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

#include <boost/math/distributions/chi_squared.hpp>
#include <gtest/gtest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include "prime/transforms/color.hpp"
#include "test_support.hpp"

namespace prime {
namespace {

using testing::max_abs_diff;
using testing::random_image;

ColorParams random_params(std::uint64_t seed, int K, int delta, int start, double stddev) {
  ColorParams p;
  p.max_frequency = K;
  p.band_width = delta;
  p.band_start = start;
  p.strength = stddev;
  const auto z = testing::random_normals(seed, static_cast<std::size_t>(3 * delta), stddev);
  for (int k = 0; k < delta; ++k) p.coefficients.push_back({z[3 * k], z[3 * k + 1], z[3 * k + 2]});
  return p;
}

// v + sum_n beta_n[c] sin(pi n v), one std::sin per term, then clamp.
Image naive_color(const Image& img, const ColorParams& p) {
  Image out = img;
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double v = img.values()[i];
    double sum = v;
    for (int k = 0; k < p.band_width; ++k)
      sum += p.coefficients[k][i % 3] * std::sin(std::numbers::pi * (p.band_start + k) * v);
    out.values()[i] = std::clamp(sum, 0.0, 1.0);
  }
  return out;
}

Image endpoint_image(std::size_t h, std::size_t w, std::uint64_t seed) {
  Image img = random_image(seed, h, w);
  for (std::size_t i = 0; i < img.size(); ++i)
    if (i % 3 != 2) img.values()[i] = (i / 3) % 2 == 0 ? 0.0 : 1.0;
  return img;
}

TEST(ColorSample, FullBandStartsAtZero) {
  Rng rng = Rng::derive(1, {});
  for (int t = 0; t < 100; ++t) {
    const auto p = sample_color_params(rng, 10, 11, {0.0, 0.01}, 1.0);
    EXPECT_EQ(p.band_start, 0);
    EXPECT_EQ(p.coefficients.size(), 11u);
  }
}

TEST(ColorSample, ZeroStrengthGivesZeroCoefficients) {
  Rng rng = Rng::derive(2, {});
  const auto p = sample_color_params(rng, 10, 4, {0.0, 0.0}, 1.0);
  for (const auto& b : p.coefficients) EXPECT_EQ(b, (std::array<double, 3>{0.0, 0.0, 0.0}));
  const Image img = random_image(3, 8, 8);
  EXPECT_EQ(apply_color(img, p), img);
}

TEST(ColorSample, RejectsBandOutOfRange) {
  Rng rng = Rng::derive(4, {});
  EXPECT_THROW(sample_color_params(rng, 10, 0, {0.0, 0.01}, 1.0), InvalidParameter);
  EXPECT_THROW(sample_color_params(rng, 10, 12, {0.0, 0.01}, 1.0), InvalidParameter);
  EXPECT_THROW(sample_color_params(rng, 10, 5, {0.02, 0.01}, 1.0), InvalidParameter);
}

TEST(ColorSample, BandStartIsUniform) {
  Rng rng = Rng::derive(5, {});
  constexpr int kDraws = 10000;
  std::vector<int> counts(482, 0);
  for (int t = 0; t < kDraws; ++t) {
    const auto p = sample_color_params(rng, 500, 20, {0.0, 0.05}, 1.0);
    ASSERT_GE(p.band_start, 0);
    ASSERT_LE(p.band_start, 481);
    ++counts[static_cast<std::size_t>(p.band_start)];
  }
  const double expected = double(kDraws) / counts.size();
  double chi2 = 0.0;
  for (int c : counts) chi2 += (c - expected) * (c - expected) / expected;
  const boost::math::chi_squared dist(static_cast<double>(counts.size() - 1));
  EXPECT_LT(chi2, boost::math::quantile(dist, 0.99));
}

TEST(ColorSample, CoefficientVarianceIsConstantAcrossBand) {
  Rng rng = Rng::derive(6, {});
  constexpr int kDraws = 10000;
  const double sigma = 0.05;
  std::vector<double> ss(20, 0.0);
  for (int t = 0; t < kDraws; ++t) {
    const auto p = sample_color_params(rng, 500, 20, {sigma, sigma}, 1.0);
    for (std::size_t k = 0; k < 20; ++k) ss[k] += p.coefficients[k][1] * p.coefficients[k][1];
  }
  for (double s : ss) EXPECT_NEAR(s / kDraws, sigma * sigma, 3.0 * sigma * sigma * std::sqrt(2.0 / kDraws));
}

TEST(ColorApply, SingleFrequencyAnalyticValue) {
  ColorParams p;
  p.max_frequency = 1;
  p.band_width = 1;
  p.band_start = 1;
  p.strength = 0.1;
  p.coefficients = {{0.1, 0.0, 0.0}};
  Image img(1, 1, 0.5);
  const Image out = apply_color(img, p);
  EXPECT_NEAR(out.at(0, 0, 0), 0.6, 1e-15);
  EXPECT_EQ(out.at(0, 0, 1), 0.5);
  EXPECT_EQ(out.at(0, 0, 2), 0.5);
}

TEST(ColorApply, EndpointsAreFixedOnEveryPath) {
  for (int trial = 0; trial < 20; ++trial) {
    const auto small = random_params(10 + trial, 10, 11, 0, 0.05);
    const auto large = random_params(40 + trial, 500, 20, 7 * trial, 0.05);
    for (const auto& p : {small, large}) {
      for (std::size_t size : {4u, 64u}) {
        const Image img = endpoint_image(size, size, 70 + trial);
        for (const Image& out : {apply_color(img, p), apply_color_exact(img, p), apply_color_lut(img, p)}) {
          for (std::size_t i = 0; i < img.size(); ++i) {
            const double v = img.values()[i];
            if (v == 0.0 || v == 1.0) {
              ASSERT_EQ(out.values()[i], v);
            }
          }
        }
      }
    }
  }
}

TEST(ColorApply, ExactPathMatchesNaiveSum) {
  for (int trial = 0; trial < 20; ++trial) {
    const Image img = random_image(100 + trial, 8 + trial % 9, 16 - trial % 9);
    const auto p = trial % 2 ? random_params(200 + trial, 10, 11, 0, 0.02)
                             : random_params(200 + trial, 500, 20, 23 * trial, 0.01);
    EXPECT_LE(max_abs_diff(apply_color_exact(img, p), naive_color(img, p)), 1e-9) << trial;
  }
}

TEST(ColorApply, LookupTableMatchesNaiveSum) {
  for (int trial = 0; trial < 20; ++trial) {
    const Image img = random_image(300 + trial, 8 + trial % 9, 16 - trial % 9);
    const auto p = random_params(400 + trial, 10, 11, 0, 0.01);
    EXPECT_LE(max_abs_diff(apply_color_lut(img, p, 4096), naive_color(img, p)), 1e-4) << trial;
  }
}

TEST(ColorApply, AdaptiveTableStaysWithinBound) {
  // Large images take the table path; its size is chosen for 1e-5 accuracy.
  for (int trial = 0; trial < 5; ++trial) {
    const Image img = random_image(500 + trial, 224, 224);
    const auto p = random_params(600 + trial, 500, 20, 90 * trial, 0.05);
    ASSERT_LT(color_lut_size_for(p), img.size());
    EXPECT_LE(max_abs_diff(apply_color(img, p), naive_color(img, p)), 1e-5) << trial;
    const auto q = random_params(700 + trial, 10, 11, 0, 0.01);
    EXPECT_LE(max_abs_diff(apply_color(img, q), naive_color(img, q)), 1e-5) << trial;
  }
}

TEST(ColorApply, OutOfRangeInputsAreEvaluatedDirectly) {
  Image img(1, 2);
  img.values()[0] = -0.25;
  img.values()[4] = 1.25;
  const auto p = random_params(9, 10, 11, 0, 0.05);
  EXPECT_LE(max_abs_diff(apply_color_lut(img, p), naive_color(img, p)), 1e-12);
}

TEST(ColorApply, IsPointwise) {
  const Image img = random_image(800, 12, 12);
  const auto p = random_params(801, 10, 11, 0, 0.05);
  const Image base = apply_color(img, p);
  Image bumped = img;
  bumped.at(5, 7, 1) = 0.123;
  const Image out = apply_color(bumped, p);
  for (std::size_t y = 0; y < 12; ++y)
    for (std::size_t x = 0; x < 12; ++x)
      for (std::size_t c = 0; c < 3; ++c) {
        if (y == 5 && x == 7 && c == 1) continue;
        ASSERT_EQ(out.at(y, x, c), base.at(y, x, c));
      }
  EXPECT_NE(out.at(5, 7, 1), base.at(5, 7, 1));
}

TEST(ColorApply, OutputStaysInUnitRange) {
  const Image img = random_image(900, 16, 16);
  for (double v : apply_color(img, random_params(901, 10, 11, 0, 0.5)).values()) {
    EXPECT_GE(v, 0.0);
    EXPECT_LE(v, 1.0);
  }
}

TEST(ColorApply, RejectsMalformedParams) {
  auto p = random_params(1, 10, 4, 0, 0.01);
  p.coefficients.pop_back();
  EXPECT_THROW(apply_color(Image(2, 2), p), InvalidParameter);
  auto q = random_params(1, 10, 4, 8, 0.01);
  EXPECT_THROW(apply_color(Image(2, 2), q), InvalidParameter);
}

}  // namespace
}  // namespace prime
