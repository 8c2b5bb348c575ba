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
#include <cctype>
#include <cstdint>
#include <filesystem>
#include <map>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "prime/augment/augment.hpp"
#include "prime/augment/config.hpp"
#include "prime/augment/serialization.hpp"
#include "prime/core/errors.hpp"
#include "prime/core/rng.hpp"
#include "prime/pipeline/checksum.hpp"
#include "prime/pipeline/image_io.hpp"
#include "prime/pipeline/parallel.hpp"

// Offline dataset augmentation.
//
// manifest.json (schema_version 1), written to the output directory:
//   {
//     "schema_version": 1,
//     "master_seed": S,
//     "copies": k,
//     "input_dir": "<as given>",
//     "complete": true,                 // false if an I/O failure aborted the run
//     "config": {...},                  // PrimeConfig JSON
//     "entries": [{"source": "cat.png", "image_index": 0, "copy": 1,
//                  "output": "cat_k1.png", "recipe": "cat_k1.recipe.json",
//                  "sha256": "<hex of output PNG bytes>"}, ...],
//     "skipped": [{"source": "broken.png", "reason": "..."}]
//   }
// Sources are relative to input_dir; outputs and recipe files are relative to
// the manifest's directory. Entries follow input order (sorted filenames),
// then copy index, independent of thread count.
namespace prime {

inline constexpr int kManifestSchemaVersion = 1;
inline constexpr const char* kManifestFileName = "manifest.json";

struct ManifestEntry {
  std::string source;
  std::size_t image_index = 0;
  int copy = 0;
  std::string output;
  std::string recipe;
  std::string sha256;
  friend bool operator==(const ManifestEntry&, const ManifestEntry&) = default;
};

struct SkippedSource {
  std::string source;
  std::string reason;
  friend bool operator==(const SkippedSource&, const SkippedSource&) = default;
};

struct Manifest {
  std::uint64_t master_seed = 0;
  int copies = 1;
  std::string input_dir;
  bool complete = true;
  PrimeConfig config;
  std::vector<ManifestEntry> entries;
  std::vector<SkippedSource> skipped;
  friend bool operator==(const Manifest&, const Manifest&) = default;
};

inline nlohmann::json manifest_to_json(const Manifest& m) {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& e : m.entries) {
    entries.push_back({{"source", e.source},
                       {"image_index", e.image_index},
                       {"copy", e.copy},
                       {"output", e.output},
                       {"recipe", e.recipe},
                       {"sha256", e.sha256}});
  }
  nlohmann::json skipped = nlohmann::json::array();
  for (const auto& s : m.skipped) skipped.push_back({{"source", s.source}, {"reason", s.reason}});
  return {{"schema_version", kManifestSchemaVersion},
          {"master_seed", m.master_seed},
          {"copies", m.copies},
          {"input_dir", m.input_dir},
          {"complete", m.complete},
          {"config", config_to_json(m.config)},
          {"entries", std::move(entries)},
          {"skipped", std::move(skipped)}};
}

inline Manifest manifest_from_json(const nlohmann::json& j) {
  try {
    if (j.at("schema_version").get<int>() != kManifestSchemaVersion) throw DataError("unsupported manifest schema");
    Manifest m;
    m.master_seed = j.at("master_seed").get<std::uint64_t>();
    m.copies = j.at("copies").get<int>();
    m.input_dir = j.at("input_dir").get<std::string>();
    m.complete = j.at("complete").get<bool>();
    m.config = config_from_json(j.at("config"), PrimeConfig{});
    for (const auto& e : j.at("entries")) {
      m.entries.push_back({e.at("source").get<std::string>(), e.at("image_index").get<std::size_t>(),
                           e.at("copy").get<int>(), e.at("output").get<std::string>(),
                           e.at("recipe").get<std::string>(), e.at("sha256").get<std::string>()});
    }
    for (const auto& s : j.at("skipped"))
      m.skipped.push_back({s.at("source").get<std::string>(), s.at("reason").get<std::string>()});
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("malformed manifest: ") + e.what());
  }
}

inline Manifest read_manifest(const std::filesystem::path& path) {
  const Bytes bytes = read_file(path);
  try {
    return manifest_from_json(nlohmann::json::parse(bytes.begin(), bytes.end()));
  } catch (const nlohmann::json::exception& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

inline void write_text(const std::filesystem::path& path, const std::string& text) {
  write_file(path, std::span<const std::uint8_t>(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

inline std::string read_text(const std::filesystem::path& path) {
  const Bytes bytes = read_file(path);
  return std::string(bytes.begin(), bytes.end());
}

struct DatasetJob {
  std::filesystem::path input_dir;
  std::filesystem::path output_dir;
  int copies = 1;
  PrimeConfig config;
  std::uint64_t master_seed = 0;
  unsigned jobs = 1;
};

namespace detail {

inline bool has_image_extension(const std::filesystem::path& p) {
  std::string ext = p.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  return ext == ".png" || ext == ".jpg" || ext == ".jpeg";
}

inline std::vector<std::string> list_image_sources(const std::filesystem::path& dir) {
  std::vector<std::string> names;
  for (const auto& entry : std::filesystem::directory_iterator(dir))
    if (entry.is_regular_file() && has_image_extension(entry.path())) names.push_back(entry.path().filename().string());
  std::sort(names.begin(), names.end());
  return names;
}

// Output stems: the filename stem, or the full filename with dots replaced
// when two sources share a stem.
inline std::vector<std::string> output_stems(const std::vector<std::string>& sources) {
  std::map<std::string, int> counts;
  for (const auto& s : sources) ++counts[std::filesystem::path(s).stem().string()];
  std::vector<std::string> stems;
  for (const auto& s : sources) {
    std::string stem = std::filesystem::path(s).stem().string();
    if (counts[stem] > 1) {
      stem = s;
      std::replace(stem.begin(), stem.end(), '.', '_');
    }
    stems.push_back(stem);
  }
  return stems;
}

}  // namespace detail

// Root stream for copy `copy` (1-based) of image `image_index`.
inline Rng dataset_stream(std::uint64_t master_seed, std::size_t image_index, int copy) {
  return Rng::derive(master_seed, {static_cast<std::uint64_t>(image_index), static_cast<std::uint64_t>(copy)});
}

// Writes `copies` augmented PNGs per decodable source image plus one recipe
// file per output and manifest.json. Undecodable sources are listed as
// skipped. On an output I/O failure the manifest is written with
// complete = false and DataError is thrown.
inline Manifest augment_dataset(const DatasetJob& job) {
  if (job.copies < 1) throw InvalidParameter("copies must be >= 1");
  job.config.validate();
  if (!std::filesystem::is_directory(job.input_dir)) throw DataError("input directory not found: " + job.input_dir.string());
  const auto sources = detail::list_image_sources(job.input_dir);
  if (sources.empty()) throw DataError("no PNG or JPEG files in " + job.input_dir.string());
  std::filesystem::create_directories(job.output_dir);
  const auto stems = detail::output_stems(sources);

  struct PerImage {
    std::vector<ManifestEntry> entries;
    std::optional<std::string> skip_reason;
    std::optional<std::string> io_error;
  };
  std::vector<PerImage> results(sources.size());

  parallel_for(sources.size(), job.jobs, [&](std::size_t idx) {
    PerImage& r = results[idx];
    Image clean;
    try {
      clean = read_image(job.input_dir / sources[idx]);
      check_image_size(job.config, clean.height(), clean.width());
    } catch (const std::exception& e) {
      r.skip_reason = e.what();
      return;
    }
    for (int k = 1; k <= job.copies; ++k) {
      const auto aug = prime_augment(clean, job.config, dataset_stream(job.master_seed, idx, k));
      ManifestEntry e;
      e.source = sources[idx];
      e.image_index = idx;
      e.copy = k;
      e.output = stems[idx] + "_k" + std::to_string(k) + ".png";
      e.recipe = stems[idx] + "_k" + std::to_string(k) + ".recipe.json";
      const Bytes png = encode_png(aug.image);
      e.sha256 = sha256_hex(png);
      try {
        write_file(job.output_dir / e.output, png);
        write_text(job.output_dir / e.recipe, serialize_recipe(aug.recipe));
      } catch (const std::exception& ex) {
        r.io_error = ex.what();
        return;
      }
      r.entries.push_back(std::move(e));
    }
  });

  Manifest manifest;
  manifest.master_seed = job.master_seed;
  manifest.copies = job.copies;
  manifest.input_dir = job.input_dir.string();
  manifest.config = job.config;
  std::optional<std::string> first_io_error;
  for (std::size_t i = 0; i < results.size(); ++i) {
    auto& r = results[i];
    if (r.skip_reason) manifest.skipped.push_back({sources[i], *r.skip_reason});
    for (auto& e : r.entries) manifest.entries.push_back(std::move(e));
    if (r.io_error && !first_io_error) first_io_error = r.io_error;
  }
  manifest.complete = !first_io_error;
  write_text(job.output_dir / kManifestFileName, manifest_to_json(manifest).dump(2) + "\n");
  if (first_io_error) throw DataError("augmentation aborted, partial manifest written: " + *first_io_error);
  if (manifest.entries.empty()) throw DataError("no decodable images in " + job.input_dir.string());
  return manifest;
}

struct ReplayMismatch {
  std::string output;
  std::string reason;
};

struct ReplayReport {
  std::size_t checked = 0;
  std::size_t reproduced = 0;
  std::vector<ReplayMismatch> mismatches;
  bool ok() const noexcept { return checked == reproduced && mismatches.empty(); }
};

// Re-decodes every source, replays its stored recipe, re-encodes and compares
// the SHA-256 with the manifest and with the output file on disk.
inline ReplayReport replay_manifest(const std::filesystem::path& manifest_path,
                                    std::optional<std::filesystem::path> input_dir = std::nullopt,
                                    unsigned jobs = 1) {
  const Manifest m = read_manifest(manifest_path);
  const auto out_dir = manifest_path.parent_path();
  const std::filesystem::path in_dir = input_dir.value_or(std::filesystem::path(m.input_dir));
  std::vector<std::optional<std::string>> failures(m.entries.size());
  parallel_for(m.entries.size(), jobs, [&](std::size_t i) {
    const auto& e = m.entries[i];
    try {
      const Image clean = read_image(in_dir / e.source);
      const Recipe recipe = parse_recipe(read_text(out_dir / e.recipe));
      const std::string replayed = sha256_hex(encode_png(apply_recipe(clean, recipe)));
      if (replayed != e.sha256) failures[i] = "replayed checksum differs from manifest";
      else if (sha256_hex(read_file(out_dir / e.output)) != e.sha256) failures[i] = "output file differs from manifest";
    } catch (const std::exception& ex) {
      failures[i] = ex.what();
    }
  });
  ReplayReport report;
  report.checked = m.entries.size();
  for (std::size_t i = 0; i < failures.size(); ++i) {
    if (failures[i]) report.mismatches.push_back({m.entries[i].output, *failures[i]});
    else ++report.reproduced;
  }
  return report;
}

}  // namespace prime
