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

// prime: offline augmentation, preview grids, statistical self-validation,
// throughput benchmarking and embedding-space fitness.
//
// Exit codes: 0 success, 1 usage/config error, 2 data error, 3 validation
// failure (failed self-check or replay mismatch).

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "prime/prime.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitValidation = 3;

// Flags shared by every subcommand that needs a PrimeConfig. Precedence:
// preset < config file < individual flags.
struct ConfigFlags {
  std::string preset = "cifar";
  std::string config_path;
  std::optional<double> alpha;
  std::optional<int> width;
  std::optional<int> depth;
  std::vector<std::string> enable;

  void attach(CLI::App* app) {
    app->add_option("--preset", preset, "Parameter preset: cifar or imagenet")
        ->check(CLI::IsMember({"cifar", "imagenet"}))
        ->capture_default_str();
    app->add_option("--config", config_path, "JSON config overlaid on the preset")->check(CLI::ExistingFile);
    app->add_option("--alpha", alpha, "Global strength scale (sigma -> alpha * sigma)")->check(CLI::NonNegativeNumber);
    app->add_option("--mix-width", width, "Number of mixed chains n")->check(CLI::PositiveNumber);
    app->add_option("--mix-depth", depth, "Steps per chain m")->check(CLI::PositiveNumber);
    app->add_option("--enable", enable, "Enabled primitives (spectral, spatial, color, additive)")
        ->check(CLI::IsMember({"spectral", "spatial", "color", "additive"}));
  }

  prime::PrimeConfig resolve() const {
    prime::PrimeConfig cfg = *prime::preset(preset);
    if (!config_path.empty()) {
      nlohmann::json j;
      try {
        j = nlohmann::json::parse(prime::read_text(config_path));
      } catch (const nlohmann::json::exception& e) {
        throw prime::ConfigError(config_path + ": " + e.what());
      }
      cfg = prime::config_from_json(j, cfg);
    }
    if (alpha) cfg.alpha = *alpha;
    if (width) cfg.width = *width;
    if (depth) cfg.depth = *depth;
    if (!enable.empty()) {
      cfg.enabled.clear();
      for (const auto& name : enable) cfg.enabled.push_back(*prime::parse_primitive(name));
    }
    cfg.validate();
    return cfg;
  }
};

void print_bench(const prime::BenchReport& r) {
  std::printf("size %zux%zu  threads %u  images %zu\n", r.height, r.width, r.threads, r.latencies.size());
  std::printf("throughput   %.1f images/s (wall %.3f s)\n", r.images_per_second, r.wall_seconds);
  std::printf("latency      mean %.3f ms  p50 %.3f ms  p90 %.3f ms  p99 %.3f ms\n", r.mean_latency * 1e3,
              r.p50_latency * 1e3, r.p90_latency * 1e3, r.p99_latency * 1e3);
  std::printf("sampling     %.3f s total\n", r.sampling_seconds);
  for (std::size_t k = 1; k < prime::kStepKindCount; ++k) {
    const auto& t = r.per_kind[k];
    if (t.calls == 0) continue;
    std::printf("%-12s %zu calls, %.3f s total, %.3f ms/call\n",
                prime::step_kind_name(static_cast<prime::StepKind>(k)), t.calls, t.seconds,
                t.seconds * 1e3 / static_cast<double>(t.calls));
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"PRIME max-entropy image augmentation"};
  app.require_subcommand(1);

  std::uint64_t seed = 0;
  unsigned jobs = 1;

  // augment
  auto* augment = app.add_subcommand("augment", "Write k augmented copies of every image in a directory");
  ConfigFlags augment_cfg;
  augment_cfg.attach(augment);
  std::string input_dir, output_dir;
  int copies = 1;
  augment->add_option("--input", input_dir, "Directory of PNG/JPEG images")->required()->check(CLI::ExistingDirectory);
  augment->add_option("--output", output_dir, "Output directory (created if missing)")->required();
  augment->add_option("--copies,-k", copies, "Augmented copies per image")->check(CLI::PositiveNumber);
  augment->add_option("--seed", seed, "Master seed");
  augment->add_option("--jobs,-j", jobs, "Worker threads")->check(CLI::PositiveNumber);

  // replay
  auto* replay = app.add_subcommand("replay", "Replay a manifest and verify every output checksum");
  std::string manifest_path, replay_input;
  replay->add_option("--manifest", manifest_path, "manifest.json written by augment")->required()->check(CLI::ExistingFile);
  replay->add_option("--input", replay_input, "Source directory (defaults to the one recorded in the manifest)");
  replay->add_option("--jobs,-j", jobs, "Worker threads")->check(CLI::PositiveNumber);

  // preview
  auto* preview = app.add_subcommand("preview", "Render a grid of augmentations of one image");
  ConfigFlags preview_cfg;
  preview_cfg.attach(preview);
  std::string image_path, preview_out;
  int rows = 3, cols = 3;
  std::size_t separator = 2;
  preview->add_option("--image", image_path, "Source image")->required()->check(CLI::ExistingFile);
  preview->add_option("--output,-o", preview_out, "Output PNG")->required();
  preview->add_option("--rows", rows, "Grid rows")->capture_default_str();
  preview->add_option("--cols", cols, "Grid columns")->capture_default_str();
  preview->add_option("--separator", separator, "Separator width in pixels")->capture_default_str();
  preview->add_option("--seed", seed, "Seed");

  // validate
  auto* validate = app.add_subcommand("validate", "Monte-Carlo checks of the sampling laws");
  ConfigFlags validate_cfg;
  validate_cfg.attach(validate);
  std::size_t trials = 10000;
  bool validate_json = false;
  validate->add_option("--trials", trials, "Samples per check (>= 1000)")->capture_default_str();
  validate->add_option("--seed", seed, "Seed");
  validate->add_flag("--json", validate_json, "Print the report as JSON");

  // bench
  auto* bench = app.add_subcommand("bench", "Measure augmentation throughput");
  ConfigFlags bench_cfg;
  bench_cfg.attach(bench);
  std::size_t height = 32, width = 32, count = 1000;
  bench->add_option("--height", height, "Image height")->capture_default_str();
  bench->add_option("--width", width, "Image width")->capture_default_str();
  bench->add_option("--count", count, "Augmentations to time")->capture_default_str();
  bench->add_option("--jobs,-j", jobs, "Threads; with more than one, a single-thread run is timed too")
      ->check(CLI::PositiveNumber);
  bench->add_option("--seed", seed, "Seed");

  // fitness
  auto* fitness = app.add_subcommand("fitness", "Min cosine distance between corruption and augmentation embeddings");
  std::string embeddings_path, label = "augmentation";
  bool fitness_json = false;
  fitness->add_option("--embeddings", embeddings_path, "Binary embedding file or directory of text files")
      ->required()
      ->check(CLI::ExistingPath);
  fitness->add_option("--label", label, "Row label in the table");
  fitness->add_flag("--json", fitness_json, "Print JSON instead of a table");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*augment) {
      prime::DatasetJob job;
      job.input_dir = input_dir;
      job.output_dir = output_dir;
      job.copies = copies;
      job.config = augment_cfg.resolve();
      job.master_seed = seed;
      job.jobs = jobs;
      const auto manifest = prime::augment_dataset(job);
      std::printf("wrote %zu images (%zu skipped) and %s\n", manifest.entries.size(), manifest.skipped.size(),
                  (std::filesystem::path(output_dir) / prime::kManifestFileName).string().c_str());
      for (const auto& s : manifest.skipped) std::fprintf(stderr, "skipped %s: %s\n", s.source.c_str(), s.reason.c_str());
    } else if (*replay) {
      std::optional<std::filesystem::path> in;
      if (!replay_input.empty()) in = replay_input;
      const auto report = prime::replay_manifest(manifest_path, in, jobs);
      std::printf("reproduced %zu/%zu outputs\n", report.reproduced, report.checked);
      for (const auto& m : report.mismatches) std::fprintf(stderr, "mismatch %s: %s\n", m.output.c_str(), m.reason.c_str());
      if (!report.ok()) return kExitValidation;
    } else if (*preview) {
      const auto cfg = preview_cfg.resolve();
      const auto img = prime::read_image(image_path);
      prime::write_png(preview_out, prime::preview_grid(img, cfg, seed, rows, cols, separator));
      std::printf("wrote %s\n", preview_out.c_str());
    } else if (*validate) {
      const auto report = prime::validate_statistics(validate_cfg.resolve(), trials, seed);
      if (validate_json) std::cout << report.to_json().dump(2) << "\n";
      else std::cout << report.to_text();
      if (!report.passed()) return kExitValidation;
    } else if (*bench) {
      const auto cfg = bench_cfg.resolve();
      const auto report = prime::bench_throughput(cfg, height, width, count, jobs, seed);
      print_bench(report);
      if (jobs > 1) {
        const auto single = prime::bench_throughput(cfg, height, width, count, 1, seed);
        std::printf("scaling      %.2fx vs 1 thread (%.1f images/s)\n",
                    report.images_per_second / single.images_per_second, single.images_per_second);
      }
    } else if (*fitness) {
      const auto set = prime::read_embeddings(embeddings_path);
      const auto summary = prime::summarize_fitness(set);
      if (fitness_json) {
        nlohmann::json pct;
        for (std::size_t i = 0; i < prime::kReportedPercentiles.size(); ++i)
          pct[std::to_string(static_cast<int>(prime::kReportedPercentiles[i])) + "%"] = summary.percentiles[i];
        std::cout << nlohmann::json{{"pairs", summary.pairs}, {"mean", summary.mean}, {"median", summary.median},
                                    {"percentiles", pct}}
                         .dump(2)
                  << "\n";
      } else {
        std::printf("N=%zu C=%zu T=%zu d=%zu\n", set.images(), set.corruptions(), set.augmentations(), set.dim());
        std::cout << prime::format_fitness_table(summary, label) << "\n"
                  << prime::format_percentile_table(summary, label);
      }
    }
  } catch (const prime::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitUsage;
  } catch (const prime::InvalidParameter& e) {
    std::fprintf(stderr, "invalid parameter: %s\n", e.what());
    return kExitUsage;
  } catch (const prime::RecipeError& e) {
    std::fprintf(stderr, "recipe error: %s\n", e.what());
    return kExitData;
  } catch (const prime::DataError& e) {
    std::fprintf(stderr, "data error: %s\n", e.what());
    return kExitData;
  } catch (const std::filesystem::filesystem_error& e) {
    std::fprintf(stderr, "I/O error: %s\n", e.what());
    return kExitData;
  }
  return kExitOk;
}
