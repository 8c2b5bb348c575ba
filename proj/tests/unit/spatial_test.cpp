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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <tuple>
#include <vector>

#include "prime/transforms/spatial.hpp"
#include "test_support.hpp"

namespace prime {
namespace {

using testing::max_abs_diff;
using testing::random_image;

std::size_t brute_force_pair_count(int cutoff) {
  std::size_t n = 0;
  for (long i = 1; i <= cutoff; ++i)
    for (long j = 1; j <= cutoff; ++j) n += i * i + j * j <= long(cutoff) * cutoff;
  return n;
}

SpatialParams random_params(std::uint64_t seed, int cutoff, double stddev) {
  SpatialParams p;
  p.cutoff = cutoff;
  p.strength = stddev;
  const std::size_t n = quarter_disc_count(cutoff);
  p.horizontal = testing::random_normals(seed, n, stddev);
  p.vertical = testing::random_normals(seed + 1, n, stddev);
  return p;
}

// Direct evaluation of sum beta_ij sin(pi i r1) sin(pi j r2) at every pixel.
std::vector<double> naive_field(const SpatialParams& p, Axis axis, std::size_t H, std::size_t W) {
  const auto& beta = p.coefficients(axis);
  std::vector<double> out(H * W, 0.0);
  for (std::size_t y = 0; y < H; ++y) {
    const double r1 = double(y) / double(H - 1);
    for (std::size_t x = 0; x < W; ++x) {
      const double r2 = double(x) / double(W - 1);
      double sum = 0.0;
      std::size_t k = 0;
      for (int i = 1; i <= p.cutoff; ++i)
        for (int j = 1; i * i + j * j <= p.cutoff * p.cutoff; ++j, ++k)
          sum += beta[k] * std::sin(std::numbers::pi * i * r1) * std::sin(std::numbers::pi * j * r2);
      out[y * W + x] = sum;
    }
  }
  return out;
}

// Gather with bilinear interpolation in normalized coordinates.
Image naive_warp(const Image& img, const std::vector<double>& dv, const std::vector<double>& dh) {
  const std::size_t H = img.height(), W = img.width();
  Image out(H, W);
  for (std::size_t y = 0; y < H; ++y) {
    for (std::size_t x = 0; x < W; ++x) {
      const double r1 = std::clamp(double(y) / double(H - 1) + dv[y * W + x], 0.0, 1.0);
      const double r2 = std::clamp(double(x) / double(W - 1) + dh[y * W + x], 0.0, 1.0);
      const double py = r1 * double(H - 1), px = r2 * double(W - 1);
      const auto y0 = static_cast<std::size_t>(std::floor(py)), x0 = static_cast<std::size_t>(std::floor(px));
      const std::size_t y1 = std::min(y0 + 1, H - 1), x1 = std::min(x0 + 1, W - 1);
      const double ty = py - double(y0), tx = px - double(x0);
      for (std::size_t c = 0; c < 3; ++c) {
        const double v = img.at(y0, x0, c) * (1 - ty) * (1 - tx) + img.at(y0, x1, c) * (1 - ty) * tx +
                         img.at(y1, x0, c) * ty * (1 - tx) + img.at(y1, x1, c) * ty * tx;
        out.at(y, x, c) = std::clamp(v, 0.0, 1.0);
      }
    }
  }
  return out;
}

TEST(QuarterDisc, CutoffTwoHasOnlyOneOne) {
  EXPECT_EQ(quarter_disc_count(2), 1u);
  EXPECT_EQ(quarter_disc_pairs(2), (std::vector<FrequencyPair>{{1, 1}}));
  EXPECT_EQ(quarter_disc_count(1), 0u);
}

TEST(QuarterDisc, CountMatchesLatticeEnumeration) {
  for (int k : {1, 2, 3, 5, 10, 16, 37, 100, 500}) EXPECT_EQ(quarter_disc_count(k), brute_force_pair_count(k)) << k;
}

TEST(QuarterDisc, PairsAreCanonicalAndInsideDisc) {
  const auto pairs = quarter_disc_pairs(20);
  ASSERT_EQ(pairs.size(), brute_force_pair_count(20));
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    EXPECT_LE(pairs[p].i * pairs[p].i + pairs[p].j * pairs[p].j, 400);
    EXPECT_GE(pairs[p].i, 1);
    EXPECT_GE(pairs[p].j, 1);
    if (p > 0) {
      const auto& a = pairs[p - 1];
      EXPECT_TRUE(a.i < pairs[p].i || (a.i == pairs[p].i && a.j < pairs[p].j));
    }
  }
}

TEST(SpatialSample, CoefficientCountPerAxis) {
  Rng rng = Rng::derive(1, {});
  const auto p = sample_spatial_params(rng, 100, {0.0, 0.018}, 1.0);
  EXPECT_EQ(p.horizontal.size(), brute_force_pair_count(100));
  EXPECT_EQ(p.vertical.size(), brute_force_pair_count(100));
  const auto q = sample_spatial_params(rng, 2, {0.0, 0.018}, 1.0);
  EXPECT_EQ(q.horizontal.size(), 1u);
}

TEST(SpatialSample, ZeroStrengthGivesZeroCoefficients) {
  Rng rng = Rng::derive(2, {});
  const auto p = sample_spatial_params(rng, 30, {0.0, 0.5}, 0.0);
  EXPECT_EQ(p.strength, 0.0);
  for (double b : p.horizontal) EXPECT_EQ(b, 0.0);
  for (double b : p.vertical) EXPECT_EQ(b, 0.0);
}

TEST(SpatialSample, RejectsInvalidArguments) {
  Rng rng = Rng::derive(3, {});
  EXPECT_THROW(sample_spatial_params(rng, 0, {0.0, 1.0}, 1.0), InvalidParameter);
  EXPECT_THROW(sample_spatial_params(rng, 10, {1.0, 0.5}, 1.0), InvalidParameter);
  EXPECT_THROW(sample_spatial_params(rng, 10, {-0.1, 0.5}, 1.0), InvalidParameter);
  EXPECT_THROW(sample_spatial_params(rng, 10, {0.0, 0.5}, -1.0), InvalidParameter);
}

TEST(SpatialSample, VarianceRatioFollowsInverseSquaredFrequency) {
  Rng rng = Rng::derive(4, {});
  const auto pairs = quarter_disc_pairs(5);
  const auto idx = [&](int i, int j) {
    return std::size_t(std::find(pairs.begin(), pairs.end(), FrequencyPair{i, j}) - pairs.begin());
  };
  const std::size_t a = idx(1, 1), b = idx(3, 4);
  ASSERT_LT(b, pairs.size());
  double sa = 0.0, sb = 0.0;
  for (int t = 0; t < 10000; ++t) {
    const auto p = sample_spatial_params(rng, 5, {0.3, 0.3}, 1.0);
    sa += p.horizontal[a] * p.horizontal[a];
    sb += p.horizontal[b] * p.horizontal[b];
  }
  EXPECT_NEAR(sa / sb, 12.5, 0.05 * 12.5);
}

TEST(SpatialSample, EachCoefficientVarianceMatchesLaw) {
  Rng rng = Rng::derive(5, {});
  constexpr int kDraws = 10000;
  const double sigma = 0.2;
  const auto pairs = quarter_disc_pairs(6);
  std::vector<double> ss(pairs.size(), 0.0);
  for (int t = 0; t < kDraws; ++t) {
    const auto p = sample_spatial_params(rng, 6, {sigma, sigma}, 1.0);
    for (std::size_t k = 0; k < pairs.size(); ++k) ss[k] += p.vertical[k] * p.vertical[k];
  }
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const double expected = sigma * sigma / (pairs[k].i * pairs[k].i + pairs[k].j * pairs[k].j);
    EXPECT_NEAR(ss[k] / kDraws, expected, 3.0 * expected * std::sqrt(2.0 / kDraws))
        << pairs[k].i << "," << pairs[k].j;
  }
}

TEST(SpatialSample, AxesAreIndependent) {
  Rng rng = Rng::derive(6, {});
  double cross = 0.0, hh = 0.0, vv = 0.0;
  for (int t = 0; t < 10000; ++t) {
    const auto p = sample_spatial_params(rng, 2, {1.0, 1.0}, 1.0);
    cross += p.horizontal[0] * p.vertical[0];
    hh += p.horizontal[0] * p.horizontal[0];
    vv += p.vertical[0] * p.vertical[0];
  }
  EXPECT_LT(std::abs(cross / std::sqrt(hh * vv)), 0.05);
}

TEST(DisplacementField, ZeroCoefficientsGiveZeroField) {
  SpatialParams p;
  p.cutoff = 10;
  p.horizontal.assign(quarter_disc_count(10), 0.0);
  p.vertical = p.horizontal;
  const auto f = displacement_field(p, 16, 16);
  for (double v : f.horizontal) EXPECT_EQ(v, 0.0);
  for (double v : f.vertical) EXPECT_EQ(v, 0.0);
}

TEST(DisplacementField, SingleLowFrequencyPeaksAtCenter) {
  SpatialParams p;
  p.cutoff = 2;
  p.horizontal = {0.37};
  p.vertical = {0.0};
  const auto f = displacement_field(p, 17, 17);
  EXPECT_NEAR(f.horizontal_at(8, 8), 0.37, 1e-15);
  EXPECT_EQ(f.vertical_at(8, 8), 0.0);
}

TEST(DisplacementField, MatchesNaiveSeries) {
  for (auto [H, W, K] : {std::tuple{16, 16, 10}, std::tuple{16, 16, 30}, std::tuple{12, 20, 7},
                         std::tuple{9, 14, 25}, std::tuple{2, 5, 4}}) {
    const auto p = random_params(H * 100 + K, K, 0.05);
    const auto f = displacement_field(p, H, W);
    const auto nh = naive_field(p, Axis::horizontal, H, W);
    const auto nv = naive_field(p, Axis::vertical, H, W);
    for (std::size_t i = 0; i < nh.size(); ++i) {
      EXPECT_NEAR(f.horizontal[i], nh[i], 1e-9) << H << "x" << W << " K=" << K;
      EXPECT_NEAR(f.vertical[i], nv[i], 1e-9) << H << "x" << W << " K=" << K;
    }
  }
}

TEST(DisplacementField, BorderIsExactlyZero) {
  for (auto [H, W, K] : {std::tuple{2, 2, 3}, std::tuple{3, 7, 5}, std::tuple{32, 32, 100},
                         std::tuple{31, 45, 60}, std::tuple{224, 224, 500}}) {
    const auto p = random_params(H + W + K, K, 0.1);
    const auto f = displacement_field(p, H, W);
    const std::size_t h = H, w = W;
    for (std::size_t y = 0; y < h; ++y) {
      for (std::size_t x = 0; x < w; ++x) {
        if (y != 0 && y != h - 1 && x != 0 && x != w - 1) continue;
        ASSERT_EQ(f.horizontal_at(y, x), 0.0) << y << "," << x;
        ASSERT_EQ(f.vertical_at(y, x), 0.0) << y << "," << x;
      }
    }
  }
}

TEST(DisplacementField, SineTransformHasNoEnergyOutsideDisc) {
  // With the disc below the grid's Nyquist index, the discrete sine transform
  // recovers the coefficients and is zero elsewhere.
  constexpr int H = 33, W = 33, K = 20;
  const auto p = random_params(77, K, 0.1);
  const auto f = displacement_field(p, H, W);
  const int n1 = H - 1, n2 = W - 1;
  double inside = 0.0, outside = 0.0, recovery = 0.0;
  std::size_t k = 0;
  for (int i = 1; i < n1; ++i) {
    for (int j = 1; j < n2; ++j) {
      double b = 0.0;
      for (int y = 0; y < H; ++y)
        for (int x = 0; x < W; ++x)
          b += f.horizontal_at(y, x) * std::sin(std::numbers::pi * i * y / n1) * std::sin(std::numbers::pi * j * x / n2);
      b *= 4.0 / (double(n1) * n2);
      if (i * i + j * j <= K * K) {
        inside += b * b;
        recovery = std::max(recovery, std::abs(b - p.horizontal[k++]));
      } else {
        outside += b * b;
      }
    }
  }
  EXPECT_LE(outside, 1e-9 * inside);
  EXPECT_LE(recovery, 1e-12);
}

TEST(DisplacementField, RejectsDegenerateGrid) {
  const auto p = random_params(1, 3, 0.1);
  EXPECT_THROW(displacement_field(p, 1, 8), InvalidParameter);
  EXPECT_THROW(apply_spatial(Image(8, 1), p), InvalidParameter);
}

TEST(Warp, ZeroFieldIsExactIdentity) {
  const Image img = random_image(1, 13, 9);
  SpatialParams p;
  p.cutoff = 100;
  p.horizontal.assign(quarter_disc_count(100), 0.0);
  p.vertical = p.horizontal;
  EXPECT_EQ(apply_spatial(img, p), img);
}

TEST(Warp, ConstantImageStaysConstant) {
  const Image img(16, 16, 0.3);
  const Image out = apply_spatial(img, random_params(2, 40, 0.05));
  for (double v : out.values()) EXPECT_NEAR(v, 0.3, 1e-15);
}

TEST(Warp, MatchesNaiveGather) {
  std::mt19937_64 gen(8);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t H = 8 + gen() % 9, W = 8 + gen() % 9;
    const Image img = random_image(300 + trial, H, W);
    const auto p = random_params(400 + trial, 12, 0.08);
    const auto dh = naive_field(p, Axis::horizontal, H, W);
    const auto dv = naive_field(p, Axis::vertical, H, W);
    EXPECT_LE(max_abs_diff(apply_spatial(img, p), naive_warp(img, dv, dh)), 1e-6) << trial;
  }
}

TEST(Warp, LargeDisplacementsClampSourceToImage) {
  const Image img = random_image(9, 10, 10);
  const auto p = random_params(10, 6, 3.0);
  const Image out = apply_spatial(img, p);
  const auto dh = naive_field(p, Axis::horizontal, 10, 10);
  const auto dv = naive_field(p, Axis::vertical, 10, 10);
  EXPECT_LE(max_abs_diff(out, naive_warp(img, dv, dh)), 1e-6);
}

TEST(Warp, BorderPixelsAreFixedPoints) {
  const Image img = random_image(11, 32, 32);
  Rng rng = Rng::derive(12, {});
  for (int t = 0; t < 10; ++t) {
    const Image out = apply_spatial(img, sample_spatial_params(rng, 100, {0.05, 0.05}, 1.0));
    for (std::size_t y = 0; y < 32; ++y)
      for (std::size_t x = 0; x < 32; ++x) {
        if (y != 0 && y != 31 && x != 0 && x != 31) continue;
        for (std::size_t c = 0; c < 3; ++c) ASSERT_EQ(out.at(y, x, c), img.at(y, x, c));
      }
  }
}

TEST(Warp, OutputStaysInUnitRange) {
  const Image img = random_image(13, 20, 20);
  for (double v : apply_spatial(img, random_params(14, 15, 0.2)).values()) {
    EXPECT_GE(v, 0.0);
    EXPECT_LE(v, 1.0);
  }
}

}  // namespace
}  // namespace prime
