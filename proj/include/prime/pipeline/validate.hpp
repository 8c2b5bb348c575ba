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
#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "prime/augment/augment.hpp"
#include "prime/augment/config.hpp"
#include "prime/core/distributions.hpp"
#include "prime/core/errors.hpp"
#include "prime/core/rng.hpp"
#include "prime/transforms/color.hpp"
#include "prime/transforms/spatial.hpp"
#include "prime/transforms/spectral.hpp"

// Monte-Carlo self-checks of the sampling laws. Moment checks pass when
// |statistic - expected| <= tolerance, with tolerance at 4 standard errors
// (per-check false-alarm rate below 1e-4). Distribution-shape checks use a
// chi-square test at p = 0.001.
namespace prime {

struct ValidationCheck {
  std::string name;
  std::size_t samples = 0;
  double statistic = 0.0;
  double expected = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;

  bool passed() const noexcept {
    return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
  }

  const ValidationCheck* find(const std::string& name) const noexcept {
    for (const auto& c : checks)
      if (c.name == name) return &c;
    return nullptr;
  }

  std::string to_text() const {
    std::string out;
    char buf[512];
    for (const auto& c : checks) {
      std::snprintf(buf, sizeof buf, "%-4s %-40s n=%-9zu stat=%-14.6g expected=%-14.6g tol=%.3g\n",
                    c.passed ? "PASS" : "FAIL", c.name.c_str(), c.samples, c.statistic, c.expected, c.tolerance);
      out += buf;
    }
    out += passed() ? "overall: PASS\n" : "overall: FAIL\n";
    return out;
  }

  nlohmann::json to_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& c : checks) {
      arr.push_back({{"name", c.name},
                     {"samples", c.samples},
                     {"statistic", c.statistic},
                     {"expected", c.expected},
                     {"tolerance", c.tolerance},
                     {"passed", c.passed}});
    }
    return {{"passed", passed()}, {"checks", std::move(arr)}};
  }
};

// Fault injection for testing the checks themselves.
struct ValidationHooks {
  double spatial_variance_scale = 1.0;  // multiplies every observed beta^2
};

// Spatial probes use cutoffs up to this value; the per-coefficient variance
// law does not depend on the cutoff.
inline constexpr int kSpatialProbeCutoff = 16;

namespace detail {

inline ValidationCheck moment_check(std::string name, std::size_t n, double statistic, double expected,
                                    double standard_error) {
  const double tol = 4.0 * standard_error;
  return {std::move(name), n, statistic, expected, tol, std::abs(statistic - expected) <= tol};
}

// Chi-square goodness of fit against the uniform distribution.
inline ValidationCheck uniformity_check(std::string name, const std::vector<std::size_t>& counts) {
  std::size_t n = 0;
  for (auto c : counts) n += c;
  if (counts.size() < 2) return {std::move(name), n, 0.0, 0.0, 0.0, true};
  const double e = static_cast<double>(n) / static_cast<double>(counts.size());
  double chi2 = 0.0;
  for (auto c : counts) chi2 += (static_cast<double>(c) - e) * (static_cast<double>(c) - e) / e;
  const double dof = static_cast<double>(counts.size() - 1);
  const double critical = boost::math::quantile(boost::math::chi_squared(dof), 0.999);
  return {std::move(name), n, chi2, dof, critical - dof, chi2 <= critical};
}

inline std::string pair_name(const char* prefix, int i, int j) {
  return std::string(prefix) + "(" + std::to_string(i) + "," + std::to_string(j) + ")";
}

}  // namespace detail

inline constexpr std::array<FrequencyPair, 10> kSpatialProbePairs{
    {{1, 1}, {1, 2}, {2, 1}, {2, 2}, {1, 3}, {3, 4}, {4, 3}, {5, 5}, {2, 7}, {8, 9}}};

inline ValidationReport validate_statistics(const PrimeConfig& cfg, std::size_t trials, std::uint64_t seed = 0,
                                            const ValidationHooks& hooks = {}) {
  if (trials < 1000) throw InvalidParameter("validation needs at least 1000 trials");
  cfg.validate();
  ValidationReport report;
  const double n = static_cast<double>(trials);

  {  // Filter-norm equipartition: E||w'||^2 = K^2 sigma^2 at fixed sigma.
    const double sigma = cfg.alpha * cfg.spectral.strength.max;
    const int K = cfg.spectral.kernel_size;
    Rng rng = Rng::derive(seed, {1});
    double sum = 0.0;
    for (std::size_t t = 0; t < trials; ++t) {
      const auto p = sample_spectral_params(rng, K, {sigma, sigma}, 1.0);
      for (double w : p.taps) sum += w * w;
    }
    const double k2 = double(K) * K;
    report.checks.push_back(detail::moment_check("spectral.filter_norm_equipartition", trials, sum / n,
                                                 k2 * sigma * sigma, sigma * sigma * std::sqrt(2.0 * k2 / n)));
  }

  {  // Spatial coefficient law: Var(beta_ij) = sigma^2 / (i^2 + j^2).
    const double sigma = cfg.alpha * cfg.spatial.strength.max;
    const int K = std::min(cfg.spatial.cutoff, kSpatialProbeCutoff);
    std::vector<FrequencyPair> probes;
    std::vector<std::size_t> index;
    {
      const auto pairs = quarter_disc_pairs(K);
      for (const auto& probe : kSpatialProbePairs) {
        const auto it = std::find(pairs.begin(), pairs.end(), probe);
        if (it == pairs.end()) continue;
        probes.push_back(probe);
        index.push_back(static_cast<std::size_t>(it - pairs.begin()));
      }
    }
    std::vector<double> sumsq(probes.size(), 0.0);
    Rng rng = Rng::derive(seed, {2});
    for (std::size_t t = 0; t < trials; ++t) {
      const auto p = sample_spatial_params(rng, K, {sigma, sigma}, 1.0);
      for (std::size_t q = 0; q < probes.size(); ++q) {
        sumsq[q] += p.horizontal[index[q]] * p.horizontal[index[q]] + p.vertical[index[q]] * p.vertical[index[q]];
      }
    }
    for (std::size_t q = 0; q < probes.size(); ++q) {
      const double expected = sigma * sigma / double(probes[q].i * probes[q].i + probes[q].j * probes[q].j);
      const double samples = 2.0 * n;
      report.checks.push_back(detail::moment_check(detail::pair_name("spatial.beta_variance", probes[q].i, probes[q].j),
                                                   2 * trials, hooks.spatial_variance_scale * sumsq[q] / samples,
                                                   expected, expected * std::sqrt(2.0 / samples)));
    }
  }

  {  // Zero displacement on the image border.
    const double sigma = cfg.alpha * cfg.spatial.strength.max;
    const std::size_t fields = std::min<std::size_t>(trials, 100);
    Rng rng = Rng::derive(seed, {3});
    double worst = 0.0;
    for (std::size_t size : {std::size_t{32}, std::size_t{224}}) {
      for (std::size_t t = 0; t < fields; ++t) {
        const auto field = displacement_field(sample_spatial_params(rng, cfg.spatial.cutoff, {sigma, sigma}, 1.0), size, size);
        for (std::size_t k = 0; k < size; ++k) {
          for (auto [y, x] : {std::pair{std::size_t{0}, k}, std::pair{size - 1, k}, std::pair{k, std::size_t{0}},
                              std::pair{k, size - 1}}) {
            worst = std::max({worst, std::abs(field.horizontal_at(y, x)), std::abs(field.vertical_at(y, x))});
          }
        }
      }
    }
    report.checks.push_back({"spatial.border_displacement", 2 * fields, worst, 0.0, 1e-12, worst <= 1e-12});
  }

  {  // Color curves fix 0 and 1; coefficient variance is sigma^2 at every band position.
    const double sigma = cfg.alpha * cfg.color.strength.max;
    const int K = cfg.color.max_frequency, D = cfg.color.band_width;
    Rng rng = Rng::derive(seed, {4});
    Image endpoints(1, 2, 0.0);
    for (std::size_t c = 0; c < kChannels; ++c) endpoints.at(0, 1, c) = 1.0;
    double endpoint_error = 0.0;
    std::vector<double> sumsq(static_cast<std::size_t>(D), 0.0);
    std::vector<std::size_t> starts(static_cast<std::size_t>(K - D + 2), 0);
    for (std::size_t t = 0; t < trials; ++t) {
      const auto p = sample_color_params(rng, K, D, {sigma, sigma}, 1.0);
      const Image out = apply_color(endpoints, p);
      for (std::size_t v = 0; v < out.size(); ++v)
        endpoint_error = std::max(endpoint_error, std::abs(out.values()[v] - endpoints.values()[v]));
      for (std::size_t k = 0; k < sumsq.size(); ++k)
        for (double b : p.coefficients[k]) sumsq[k] += b * b;
      ++starts[static_cast<std::size_t>(p.band_start)];
    }
    report.checks.push_back({"color.endpoint_fixing", trials, endpoint_error, 0.0, 0.0, endpoint_error == 0.0});
    double worst = sigma * sigma;
    for (double s : sumsq) {
      const double v = s / (3.0 * n);
      if (std::abs(v - sigma * sigma) > std::abs(worst - sigma * sigma)) worst = v;
    }
    report.checks.push_back(detail::moment_check("color.beta_variance_worst_band_position", 3 * trials, worst,
                                                 sigma * sigma, sigma * sigma * std::sqrt(2.0 / (3.0 * n))));
    report.checks.push_back(detail::uniformity_check("color.band_start_uniformity", starts));
  }

  {  // Mixing draws: uniform primitive choice, identity-only chains, Dir(1) moments.
    const std::size_t choices = cfg.enabled.size() + 1;
    const auto width = static_cast<std::size_t>(cfg.width), depth = static_cast<std::size_t>(cfg.depth);
    std::vector<std::size_t> kind_counts(kStepKindCount, 0);
    std::size_t identity_chains = 0;
    const std::size_t k = width + 1;
    std::vector<double> weight_sums(k, 0.0);
    for (std::size_t t = 0; t < trials; ++t) {
      const Rng root = Rng::derive(seed, {5, t});
      for (std::size_t i = 0; i < width; ++i) {
        bool all_identity = true;
        for (std::size_t j = 0; j < depth; ++j) {
          Rng stream = step_stream(root, i, j);
          const StepKind kind = sample_step_kind(stream, cfg);
          ++kind_counts[static_cast<std::size_t>(kind)];
          all_identity = all_identity && kind == StepKind::identity;
        }
        identity_chains += all_identity ? 1 : 0;
      }
      Rng weights = root.child({kWeightsLabel});
      const auto w = sample_dirichlet_uniform(weights, k);
      for (std::size_t c = 0; c < k; ++c) weight_sums[c] += w[c];
    }
    const double steps = n * double(width * depth);
    const double p = 1.0 / double(choices);
    std::vector<StepKind> kinds{StepKind::identity};
    for (Primitive prim : cfg.enabled) kinds.push_back(step_kind_of(prim));
    for (StepKind kind : kinds) {
      report.checks.push_back(detail::moment_check(std::string("mixing.choice_frequency.") + step_kind_name(kind),
                                                   trials * width * depth,
                                                   double(kind_counts[static_cast<std::size_t>(kind)]) / steps, p,
                                                   std::sqrt(p * (1 - p) / steps)));
    }
    const double chains = n * double(width);
    const double q = std::pow(p, double(depth));
    report.checks.push_back(detail::moment_check("mixing.identity_chain_frequency", trials * width,
                                                 double(identity_chains) / chains, q, std::sqrt(q * (1 - q) / chains)));
    const double kk = double(k);
    const double var = (kk - 1) / (kk * kk * (kk + 1));
    for (std::size_t c = 0; c < k; ++c) {
      report.checks.push_back(detail::moment_check("mixing.dirichlet_mean[" + std::to_string(c) + "]", trials,
                                                   weight_sums[c] / n, 1.0 / kk, std::sqrt(var / n)));
    }
  }
  return report;
}

}  // namespace prime
