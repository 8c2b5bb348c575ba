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

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include <boost/random/normal_distribution.hpp>

#include "prime/core/errors.hpp"
#include "prime/core/rng.hpp"

namespace prime {

// Standard normal via Boost.Random's ziggurat sampler driven by the stream.
inline double standard_normal(Rng& rng) { return boost::random::normal_distribution<double>{}(rng); }

inline double sample_gaussian(Rng& rng, double mean, double stddev) {
  if (!(stddev >= 0.0)) throw InvalidParameter("gaussian std must be >= 0, got " + std::to_string(stddev));
  if (stddev == 0.0) return mean;
  return mean + stddev * standard_normal(rng);
}

inline double sample_uniform(Rng& rng, double lo, double hi) {
  if (!(lo <= hi)) {
    throw InvalidParameter("uniform bounds must satisfy lo <= hi, got [" + std::to_string(lo) + ", " +
                           std::to_string(hi) + "]");
  }
  if (lo == hi) return lo;
  return lo + (hi - lo) * rng.uniform01();
}

// Uniform integer in [lo, hi], inclusive.
inline std::int64_t sample_uniform_int(Rng& rng, std::int64_t lo, std::int64_t hi) {
  if (lo > hi) throw InvalidParameter("integer uniform bounds must satisfy lo <= hi");
  return lo + static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(hi - lo) + 1));
}

inline double sample_unit_exponential(Rng& rng) noexcept { return -std::log1p(-rng.uniform01()); }

// Dir(1, ..., 1) over k components: k unit exponentials normalized by their sum.
inline std::vector<double> sample_dirichlet_uniform(Rng& rng, std::size_t k) {
  if (k == 0) throw InvalidParameter("dirichlet dimension must be >= 1");
  std::vector<double> out(k);
  double total = 0.0;
  do {
    for (double& v : out) v = sample_unit_exponential(rng);
    total = std::accumulate(out.begin(), out.end(), 0.0);
  } while (total == 0.0);
  for (double& v : out) v /= total;
  return out;
}

}  // namespace prime
