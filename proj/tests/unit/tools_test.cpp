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

#include <atomic>
#include <numeric>
#include <stdexcept>
#include <thread>
#include <vector>

#include "prime/augment/config.hpp"
#include "prime/pipeline/bench.hpp"
#include "prime/pipeline/parallel.hpp"

namespace prime {
namespace {

TEST(ParallelFor, VisitsEveryIndexOnce) {
  for (unsigned jobs : {1u, 2u, 5u, 64u}) {
    std::vector<std::atomic<int>> hits(1000);
    parallel_for(hits.size(), jobs, [&](std::size_t i) { hits[i]++; });
    for (const auto& h : hits) EXPECT_EQ(h.load(), 1);
  }
}

TEST(ParallelFor, EmptyRangeIsANoOp) {
  bool called = false;
  parallel_for(0, 4, [&](std::size_t) { called = true; });
  EXPECT_FALSE(called);
}

TEST(ParallelFor, RethrowsWorkerException) {
  for (unsigned jobs : {1u, 4u}) {
    EXPECT_THROW(parallel_for(100, jobs,
                              [](std::size_t i) {
                                if (i == 37) throw std::runtime_error("boom");
                              }),
                 std::runtime_error);
  }
}

TEST(Bench, ReportsOneLatencyPerImage) {
  const auto r = bench_throughput(cifar_preset(), 32, 32, 1, 1, 0);
  ASSERT_EQ(r.latencies.size(), 1u);
  EXPECT_GT(r.images_per_second, 0.0);
  EXPECT_EQ(r.mean_latency, r.latencies[0]);
  EXPECT_EQ(r.p99_latency, r.latencies[0]);
}

TEST(Bench, AccountsPrimitiveCalls) {
  const auto r = bench_throughput(cifar_preset(), 32, 32, 50, 1, 1);
  std::size_t calls = 0;
  for (const auto& k : r.per_kind) calls += k.calls;
  // Identity steps are not timed; 450 steps with p = 3/4 each.
  EXPECT_GT(calls, 280u);
  EXPECT_LT(calls, 400u);
  EXPECT_EQ(r.per_kind[static_cast<std::size_t>(StepKind::identity)].calls, 0u);
  EXPECT_LE(r.p50_latency, r.p90_latency);
  EXPECT_LE(r.p90_latency, r.p99_latency);
  EXPECT_GT(r.sampling_seconds, 0.0);
}

TEST(Bench, RejectsInvalidArguments) {
  EXPECT_THROW(bench_throughput(cifar_preset(), 32, 32, 0, 1), InvalidParameter);
  EXPECT_THROW(bench_throughput(cifar_preset(), 2, 2, 1, 1), InvalidParameter);
}

TEST(Bench, ScalesWithThreads) {
  if (std::thread::hardware_concurrency() < 4) GTEST_SKIP() << "needs at least 4 hardware threads";
  const auto single = bench_throughput(imagenet_preset(), 224, 224, 32, 1, 2);
  const auto multi = bench_throughput(imagenet_preset(), 224, 224, 32, 4, 2);
  EXPECT_GT(multi.images_per_second, 2.0 * single.images_per_second);
}

}  // namespace
}  // namespace prime
