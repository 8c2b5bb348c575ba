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
#include <bit>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "prime/analysis/fitness.hpp"
#include "prime/core/errors.hpp"

// Embedding file format, all integers and reals little-endian:
//
//   offset  size  field
//        0     8  magic "PRIMEEMB"
//        8     4  u32 version (1)
//       12     4  u32 bytes per value: 4 (float32) or 8 (float64)
//       16     8  u64 N  images
//       24     8  u64 C  corruption embeddings per image
//       32     8  u64 T  augmentation embeddings per image
//       40     8  u64 d  embedding dimension
//       48   ...  N * (C + T) * d values, ordered (image, group, index, component)
//                 where group 0 holds the C corruption vectors, group 1 the T
//                 augmentation vectors
//
// Text alternative: a directory with one *.txt file per image, taken in
// lexicographic filename order. Each file has a "C T" line, then C + T lines
// of d whitespace-separated numbers (corruptions first). Blank lines and lines
// starting with '#' are ignored.
namespace prime {

inline constexpr char kEmbeddingMagic[8] = {'P', 'R', 'I', 'M', 'E', 'E', 'M', 'B'};
inline constexpr std::uint32_t kEmbeddingVersion = 1;

namespace detail {

template <typename T>
void put_le(std::string& out, T v) {
  using U = std::conditional_t<sizeof(T) == 4, std::uint32_t, std::uint64_t>;
  U bits = std::bit_cast<U>(v);
  for (std::size_t i = 0; i < sizeof(T); ++i) out.push_back(static_cast<char>((bits >> (8 * i)) & 0xFF));
}

template <typename T>
T get_le(const unsigned char* p) {
  using U = std::conditional_t<sizeof(T) == 4, std::uint32_t, std::uint64_t>;
  U bits = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) bits |= static_cast<U>(p[i]) << (8 * i);
  return std::bit_cast<T>(bits);
}

}  // namespace detail

inline std::string encode_embeddings(const EmbeddingSet& set, bool float32 = false) {
  std::string out(kEmbeddingMagic, sizeof kEmbeddingMagic);
  detail::put_le<std::uint32_t>(out, kEmbeddingVersion);
  detail::put_le<std::uint32_t>(out, float32 ? 4u : 8u);
  detail::put_le<std::uint64_t>(out, set.images());
  detail::put_le<std::uint64_t>(out, set.corruptions());
  detail::put_le<std::uint64_t>(out, set.augmentations());
  detail::put_le<std::uint64_t>(out, set.dim());
  for (double v : set.data()) {
    if (float32) detail::put_le<float>(out, static_cast<float>(v));
    else detail::put_le<double>(out, v);
  }
  return out;
}

inline EmbeddingSet decode_embeddings(const std::string& bytes) {
  constexpr std::size_t kHeader = 48;
  if (bytes.size() < kHeader || std::memcmp(bytes.data(), kEmbeddingMagic, sizeof kEmbeddingMagic) != 0)
    throw DataError("not an embedding file (bad magic)");
  const auto* p = reinterpret_cast<const unsigned char*>(bytes.data());
  const auto version = detail::get_le<std::uint32_t>(p + 8);
  const auto width = detail::get_le<std::uint32_t>(p + 12);
  if (version != kEmbeddingVersion) throw DataError("unsupported embedding file version " + std::to_string(version));
  if (width != 4 && width != 8) throw DataError("embedding value width must be 4 or 8 bytes");
  const auto n = detail::get_le<std::uint64_t>(p + 16);
  const auto c = detail::get_le<std::uint64_t>(p + 24);
  const auto t = detail::get_le<std::uint64_t>(p + 32);
  const auto d = detail::get_le<std::uint64_t>(p + 40);
  const std::uint64_t limit = (bytes.size() - kHeader) / width;
  if (d == 0 || (c + t) == 0 || n > limit / d / (c + t) || n * (c + t) * d != limit || (bytes.size() - kHeader) % width)
    throw DataError("embedding payload size does not match header");
  std::vector<double> data(limit);
  for (std::size_t i = 0; i < data.size(); ++i) {
    const unsigned char* q = p + kHeader + i * width;
    data[i] = width == 4 ? static_cast<double>(detail::get_le<float>(q)) : detail::get_le<double>(q);
  }
  try {
    return EmbeddingSet(n, c, t, d, std::move(data));
  } catch (const InvalidParameter& e) {
    throw DataError(std::string("invalid embedding file: ") + e.what());
  }
}

inline void write_embeddings(const std::filesystem::path& path, const EmbeddingSet& set, bool float32 = false) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw DataError("cannot open " + path.string() + " for writing");
  const std::string bytes = encode_embeddings(set, float32);
  f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!f) throw DataError("failed writing " + path.string());
}

inline EmbeddingSet read_embedding_text_dir(const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".txt") files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  if (files.empty()) throw DataError("no *.txt embedding files in " + dir.string());

  std::size_t C = 0, T = 0, D = 0;
  std::vector<double> data;
  for (const auto& file : files) {
    std::ifstream in(file);
    if (!in) throw DataError("cannot read " + file.string());
    std::vector<std::vector<double>> rows;
    std::size_t c = 0, t = 0;
    bool have_header = false;
    std::string line;
    while (std::getline(in, line)) {
      const auto first = line.find_first_not_of(" \t\r");
      if (first == std::string::npos || line[first] == '#') continue;
      std::istringstream ss(line);
      if (!have_header) {
        if (!(ss >> c >> t)) throw DataError(file.string() + ": expected 'C T' header line");
        have_header = true;
        continue;
      }
      std::vector<double> row;
      double v;
      while (ss >> v) row.push_back(v);
      if (!ss.eof()) throw DataError(file.string() + ": non-numeric token in embedding row");
      rows.push_back(std::move(row));
    }
    if (!have_header) throw DataError(file.string() + ": missing 'C T' header line");
    if (rows.size() != c + t) throw DataError(file.string() + ": expected C + T embedding rows");
    if (C == 0) {
      C = c;
      T = t;
      D = rows.empty() ? 0 : rows.front().size();
    }
    if (c != C || t != T) throw DataError(file.string() + ": C and T must match across files");
    for (auto& row : rows) {
      if (row.size() != D) throw DataError(file.string() + ": embedding dimension mismatch");
      data.insert(data.end(), row.begin(), row.end());
    }
  }
  try {
    return EmbeddingSet(files.size(), C, T, D, std::move(data));
  } catch (const InvalidParameter& e) {
    throw DataError(std::string("invalid embedding directory: ") + e.what());
  }
}

// Binary file, or a directory of per-image text files.
inline EmbeddingSet read_embeddings(const std::filesystem::path& path) {
  if (std::filesystem::is_directory(path)) return read_embedding_text_dir(path);
  std::ifstream f(path, std::ios::binary);
  if (!f) throw DataError("cannot open " + path.string());
  std::ostringstream ss;
  ss << f.rdbuf();
  return decode_embeddings(ss.str());
}

}  // namespace prime
