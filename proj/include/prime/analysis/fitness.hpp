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
#include <cstdio>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "prime/core/errors.hpp"

namespace prime {

// Embeddings of N images: per image, C corruption vectors followed by T
// augmentation vectors, each of dimension d, stored contiguously.
class EmbeddingSet {
 public:
  EmbeddingSet(std::size_t images, std::size_t corruptions, std::size_t augmentations, std::size_t dim,
               std::vector<double> data)
      : images_(images), corruptions_(corruptions), augmentations_(augmentations), dim_(dim), data_(std::move(data)) {
    detail::require(images_ >= 1, "embedding set needs at least one image");
    detail::require(corruptions_ >= 1 && augmentations_ >= 1, "embedding set needs C >= 1 and T >= 1");
    detail::require(dim_ >= 1, "embedding dimension must be >= 1");
    detail::require(data_.size() == images_ * (corruptions_ + augmentations_) * dim_,
                    "embedding data length must equal N * (C + T) * d");
    for (std::size_t v = 0; v < data_.size() / dim_; ++v) {
      const auto vec = std::span<const double>(data_).subspan(v * dim_, dim_);
      const bool nonzero = std::any_of(vec.begin(), vec.end(), [](double x) { return x != 0.0; });
      detail::require(nonzero, "embedding vectors must be nonzero (vector " + std::to_string(v) + ")");
    }
  }

  std::size_t images() const noexcept { return images_; }
  std::size_t corruptions() const noexcept { return corruptions_; }
  std::size_t augmentations() const noexcept { return augmentations_; }
  std::size_t dim() const noexcept { return dim_; }
  std::span<const double> data() const noexcept { return data_; }

  std::span<const double> corruption(std::size_t n, std::size_t c) const noexcept { return vec(n, c); }
  std::span<const double> augmentation(std::size_t n, std::size_t t) const noexcept {
    return vec(n, corruptions_ + t);
  }

 private:
  std::span<const double> vec(std::size_t n, std::size_t slot) const noexcept {
    return std::span<const double>(data_).subspan((n * (corruptions_ + augmentations_) + slot) * dim_, dim_);
  }

  std::size_t images_, corruptions_, augmentations_, dim_;
  std::vector<double> data_;
};

inline double cosine_distance(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size()) throw InvalidParameter("cosine distance needs vectors of equal dimension");
  double dot = 0.0, uu = 0.0, vv = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    dot += u[i] * v[i];
    uu += u[i] * u[i];
    vv += v[i] * v[i];
  }
  if (uu == 0.0 || vv == 0.0) throw InvalidParameter("cosine distance is undefined for zero vectors");
  return std::clamp(1.0 - dot / (std::sqrt(uu) * std::sqrt(vv)), 0.0, 2.0);
}

// For every (image, corruption) pair, the smallest cosine distance to any of
// that image's augmentation embeddings. Ordered image-major.
inline std::vector<double> min_cosine_distances(const EmbeddingSet& set) {
  std::vector<double> out;
  out.reserve(set.images() * set.corruptions());
  for (std::size_t n = 0; n < set.images(); ++n) {
    for (std::size_t c = 0; c < set.corruptions(); ++c) {
      double best = 2.0;
      for (std::size_t t = 0; t < set.augmentations(); ++t)
        best = std::min(best, cosine_distance(set.corruption(n, c), set.augmentation(n, t)));
      out.push_back(best);
    }
  }
  return out;
}

// Mean over all N * C pairs of the minimum cosine distance.
inline double min_distance_fitness(const EmbeddingSet& set) {
  const auto d = min_cosine_distances(set);
  return std::accumulate(d.begin(), d.end(), 0.0) / static_cast<double>(d.size());
}

// Nearest-rank percentile: the ceil(p/100 * n)-th smallest value (1-based),
// at least the first.
inline double nearest_rank_percentile(std::vector<double> values, double percent) {
  detail::require(!values.empty(), "percentile of an empty sample");
  detail::require(percent >= 0.0 && percent <= 100.0, "percentile must lie in [0, 100]");
  std::sort(values.begin(), values.end());
  auto rank = static_cast<std::size_t>(std::ceil(percent / 100.0 * static_cast<double>(values.size())));
  rank = std::clamp<std::size_t>(rank, 1, values.size());
  return values[rank - 1];
}

inline constexpr std::array<double, 5> kReportedPercentiles{5.0, 10.0, 25.0, 50.0, 75.0};

struct FitnessSummary {
  std::size_t pairs = 0;
  double mean = 0.0;
  double median = 0.0;  // over all N * C pairs
  std::array<double, 5> percentiles{};  // at kReportedPercentiles
};

inline FitnessSummary summarize_fitness(const EmbeddingSet& set) {
  const auto d = min_cosine_distances(set);
  FitnessSummary s;
  s.pairs = d.size();
  s.mean = std::accumulate(d.begin(), d.end(), 0.0) / static_cast<double>(d.size());
  s.median = nearest_rank_percentile(d, 50.0);
  for (std::size_t i = 0; i < kReportedPercentiles.size(); ++i)
    s.percentiles[i] = nearest_rank_percentile(d, kReportedPercentiles[i]);
  return s;
}

// Average and median of the per-pair minima, scaled by 1e3:
//   Method            Avg.   Median
inline std::string format_fitness_table(const FitnessSummary& s, const std::string& label) {
  std::string out = "Min. cosine distance (x1e-3)\n";
  char buf[256];
  std::snprintf(buf, sizeof buf, "%-16s %8s %8s\n", "Method", "Avg.", "Median");
  out += buf;
  std::snprintf(buf, sizeof buf, "%-16s %8.2f %8.2f\n", label.c_str(), s.mean * 1e3, s.median * 1e3);
  out += buf;
  return out;
}

// Nearest-rank percentiles of the per-pair minima, scaled by 1e3:
//   Method            5%   10%   25%   50%   75%
inline std::string format_percentile_table(const FitnessSummary& s, const std::string& label) {
  std::string out = "Min. cosine distance percentiles (x1e-3)\n";
  char buf[256];
  std::snprintf(buf, sizeof buf, "%-16s", "Method");
  out += buf;
  for (double p : kReportedPercentiles) {
    std::snprintf(buf, sizeof buf, " %7g%%", p);
    out += buf;
  }
  std::snprintf(buf, sizeof buf, "\n%-16s", label.c_str());
  out += buf;
  for (double v : s.percentiles) {
    std::snprintf(buf, sizeof buf, " %8.2f", v * 1e3);
    out += buf;
  }
  return out + "\n";
}

}  // namespace prime
