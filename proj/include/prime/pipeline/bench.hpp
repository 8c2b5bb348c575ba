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
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "prime/augment/augment.hpp"
#include "prime/augment/config.hpp"
#include "prime/core/errors.hpp"
#include "prime/core/image.hpp"
#include "prime/core/rng.hpp"
#include "prime/pipeline/parallel.hpp"

namespace prime {

struct PrimitiveTiming {
  std::size_t calls = 0;
  double seconds = 0.0;
};

struct BenchReport {
  std::size_t height = 0, width = 0;
  unsigned threads = 1;
  double wall_seconds = 0.0;
  double images_per_second = 0.0;
  std::vector<double> latencies;  // seconds per prime_augment call, in image order
  double mean_latency = 0.0;
  double p50_latency = 0.0;
  double p90_latency = 0.0;
  double p99_latency = 0.0;
  double sampling_seconds = 0.0;  // total time spent in sample_recipe
  std::array<PrimitiveTiming, kStepKindCount> per_kind{};  // indexed by StepKind
};

namespace detail {

using BenchClock = std::chrono::steady_clock;

inline double seconds_since(BenchClock::time_point t0) {
  return std::chrono::duration<double>(BenchClock::now() - t0).count();
}

struct TimingRunner {
  std::array<PrimitiveTiming, kStepKindCount>* timings;
  template <typename Fn>
  Image operator()(StepKind kind, Fn&& fn) const {
    const auto t0 = BenchClock::now();
    Image out = fn();
    auto& slot = (*timings)[static_cast<std::size_t>(kind)];
    slot.seconds += seconds_since(t0);
    ++slot.calls;
    return out;
  }
};

inline double sorted_percentile(const std::vector<double>& sorted, double percent) {
  auto rank = static_cast<std::size_t>(std::ceil(percent / 100.0 * static_cast<double>(sorted.size())));
  rank = std::clamp<std::size_t>(rank, 1, sorted.size());
  return sorted[rank - 1];
}

}  // namespace detail

// Uniform-noise test image; deterministic in (seed, index).
inline Image synthetic_image(std::size_t height, std::size_t width, std::uint64_t seed, std::uint64_t index) {
  Image img(height, width);
  Rng rng = Rng::derive(seed, {index});
  for (double& v : img.values()) v = rng.uniform01();
  return img;
}

// Times `count` prime_augment calls (sample + replay) over synthetic images
// on `threads` threads. Per-primitive times are summed over all threads.
inline BenchReport bench_throughput(const PrimeConfig& cfg, std::size_t height, std::size_t width, std::size_t count,
                                    unsigned threads, std::uint64_t seed = 0) {
  if (count < 1) throw InvalidParameter("bench count must be >= 1");
  check_image_size(cfg, height, width);
  threads = std::max(1u, threads);
  const std::size_t pool_size = std::min<std::size_t>(count, 8);
  std::vector<Image> pool;
  for (std::size_t i = 0; i < pool_size; ++i) pool.push_back(synthetic_image(height, width, seed, i));

  BenchReport report;
  report.height = height;
  report.width = width;
  report.threads = threads;
  report.latencies.assign(count, 0.0);
  std::vector<std::array<PrimitiveTiming, kStepKindCount>> per_item(count);
  std::vector<double> sampling(count, 0.0);

  const auto t_start = detail::BenchClock::now();
  parallel_for(count, threads, [&](std::size_t i) {
    const auto t0 = detail::BenchClock::now();
    const Image& img = pool[i % pool_size];
    const Recipe recipe = sample_recipe(Rng::derive(seed, {0xBE7C, i}), cfg, height, width);
    sampling[i] = detail::seconds_since(t0);
    const Image out = apply_recipe(img, recipe, detail::TimingRunner{&per_item[i]});
    report.latencies[i] = detail::seconds_since(t0);
    (void)out;
  });
  report.wall_seconds = detail::seconds_since(t_start);
  report.images_per_second = static_cast<double>(count) / report.wall_seconds;

  std::vector<double> sorted = report.latencies;
  std::sort(sorted.begin(), sorted.end());
  report.mean_latency = std::accumulate(sorted.begin(), sorted.end(), 0.0) / static_cast<double>(count);
  report.p50_latency = detail::sorted_percentile(sorted, 50);
  report.p90_latency = detail::sorted_percentile(sorted, 90);
  report.p99_latency = detail::sorted_percentile(sorted, 99);
  report.sampling_seconds = std::accumulate(sampling.begin(), sampling.end(), 0.0);
  for (const auto& item : per_item) {
    for (std::size_t k = 0; k < kStepKindCount; ++k) {
      report.per_kind[k].calls += item[k].calls;
      report.per_kind[k].seconds += item[k].seconds;
    }
  }
  return report;
}

}  // namespace prime
