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

#include <array>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>

namespace prime {

// Philox4x64-10 block function (Salmon et al., "Parallel Random Numbers: As
// Easy as 1, 2, 3", SC'11). Counter-based: output depends only on (key,
// counter), so streams can be split and jumped without shared state.
struct Philox4x64 {
  using Counter = std::array<std::uint64_t, 4>;
  using Key = std::array<std::uint64_t, 2>;

  static constexpr std::uint64_t kMul0 = 0xD2E7470EE14C6C93ULL;
  static constexpr std::uint64_t kMul1 = 0xCA5A826395121157ULL;
  static constexpr std::uint64_t kWeyl0 = 0x9E3779B97F4A7C15ULL;
  static constexpr std::uint64_t kWeyl1 = 0xBB67AE8584CAA73BULL;
  static constexpr int kRounds = 10;

  static constexpr Counter block(Counter ctr, Key key) noexcept {
    for (int round = 0; round < kRounds; ++round) {
      if (round > 0) {
        key[0] += kWeyl0;
        key[1] += kWeyl1;
      }
      const unsigned __int128 p0 = static_cast<unsigned __int128>(kMul0) * ctr[0];
      const unsigned __int128 p1 = static_cast<unsigned __int128>(kMul1) * ctr[2];
      const auto hi0 = static_cast<std::uint64_t>(p0 >> 64);
      const auto lo0 = static_cast<std::uint64_t>(p0);
      const auto hi1 = static_cast<std::uint64_t>(p1 >> 64);
      const auto lo1 = static_cast<std::uint64_t>(p1);
      ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    }
    return ctr;
  }

  // Blocks for counters base, base+1, ..., base+B-1 under one key, with the
  // rounds interleaved across blocks. Output is the concatenation of
  // block({base+b, c1, c2, c3}, key) for b = 0..B-1.
  template <std::size_t B>
  static std::array<std::uint64_t, 4 * B> blocks(std::uint64_t base, std::uint64_t c1, std::uint64_t c2,
                                                  std::uint64_t c3, Key key) noexcept {
    std::uint64_t x0[B], x1[B], x2[B], x3[B];
    for (std::size_t b = 0; b < B; ++b) {
      x0[b] = base + b;
      x1[b] = c1;
      x2[b] = c2;
      x3[b] = c3;
    }
    for (int round = 0; round < kRounds; ++round) {
      if (round > 0) {
        key[0] += kWeyl0;
        key[1] += kWeyl1;
      }
      for (std::size_t b = 0; b < B; ++b) {
        const unsigned __int128 p0 = static_cast<unsigned __int128>(kMul0) * x0[b];
        const unsigned __int128 p1 = static_cast<unsigned __int128>(kMul1) * x2[b];
        const std::uint64_t n0 = static_cast<std::uint64_t>(p1 >> 64) ^ x1[b] ^ key[0];
        const std::uint64_t n2 = static_cast<std::uint64_t>(p0 >> 64) ^ x3[b] ^ key[1];
        x1[b] = static_cast<std::uint64_t>(p1);
        x3[b] = static_cast<std::uint64_t>(p0);
        x0[b] = n0;
        x2[b] = n2;
      }
    }
    std::array<std::uint64_t, 4 * B> out;
    for (std::size_t b = 0; b < B; ++b) {
      out[4 * b] = x0[b];
      out[4 * b + 1] = x1[b];
      out[4 * b + 2] = x2[b];
      out[4 * b + 3] = x3[b];
    }
    return out;
  }
};

// 256 bits identifying one random stream.
struct SeedMaterial {
  std::array<std::uint64_t, 4> words{};
  friend bool operator==(const SeedMaterial&, const SeedMaterial&) = default;
};

// A random stream keyed by (master seed, label path).
//
// Key derivation absorbs each label through the Philox block function, so the
// stream for labels {3, 1} is unrelated to the one for {3, 2} or {3}. Draws
// walk a 64-bit block counter under that key; two key words feed the Philox
// key and the other two occupy the upper counter lanes.
class Rng {
 public:
  using result_type = std::uint64_t;
  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return ~result_type{0}; }

  static Rng derive(std::uint64_t master_seed, std::span<const std::uint64_t> labels) {
    std::uint64_t sm = master_seed;
    SeedMaterial material;
    for (auto& w : material.words) w = splitmix64(sm);
    return Rng(absorb(material, labels));
  }
  static Rng derive(std::uint64_t master_seed, std::initializer_list<std::uint64_t> labels) {
    return derive(master_seed, std::span<const std::uint64_t>(labels.begin(), labels.size()));
  }

  static Rng from_key(const SeedMaterial& key) { return Rng(key); }

  // Stream for this stream's label path extended by `labels`. Independent of
  // how many values have been drawn from *this.
  Rng child(std::span<const std::uint64_t> labels) const { return Rng(absorb(key_, labels)); }
  Rng child(std::initializer_list<std::uint64_t> labels) const {
    return child(std::span<const std::uint64_t>(labels.begin(), labels.size()));
  }

  const SeedMaterial& key() const noexcept { return key_; }

  result_type operator()() noexcept { return next_u64(); }

  std::uint64_t next_u64() noexcept {
    if (lane_ == kBuffered) refill();
    return buffer_[lane_++];
  }

  // Uniform on [0, 1) with 53 random bits.
  double uniform01() noexcept { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, bound). Lemire's multiply-and-reject.
  std::uint64_t below(std::uint64_t bound) noexcept {
    if (bound <= 1) return 0;
    unsigned __int128 m = static_cast<unsigned __int128>(next_u64()) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
      const std::uint64_t threshold = (0 - bound) % bound;
      while (low < threshold) {
        m = static_cast<unsigned __int128>(next_u64()) * bound;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

 private:
  explicit Rng(const SeedMaterial& key) : key_(key) {}

  static constexpr std::uint64_t splitmix64(std::uint64_t& x) noexcept {
    std::uint64_t z = (x += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  static SeedMaterial absorb(SeedMaterial material, std::span<const std::uint64_t> labels) {
    // Domain-separated from the draw counter by the 0xA5... tag in lane 1.
    for (std::uint64_t label : labels) {
      const auto out = Philox4x64::block({label, 0xA5A5A5A5A5A5A5A5ULL, material.words[2], material.words[3]},
                                         {material.words[0], material.words[1]});
      for (std::size_t i = 0; i < 4; ++i) material.words[i] ^= out[i];
      material.words[0] += 1;  // never collapse to the all-zero key
    }
    return material;
  }

  static constexpr std::size_t kBlocksPerRefill = 4;
  static constexpr std::size_t kBuffered = 4 * kBlocksPerRefill;

  void refill() noexcept {
    buffer_ = Philox4x64::blocks<kBlocksPerRefill>(counter_, 0, key_.words[2], key_.words[3],
                                                   {key_.words[0], key_.words[1]});
    counter_ += kBlocksPerRefill;
    lane_ = 0;
  }

  SeedMaterial key_;
  std::uint64_t counter_ = 0;
  std::array<std::uint64_t, kBuffered> buffer_{};
  std::size_t lane_ = kBuffered;
};

}  // namespace prime
