// Copyright 2026 The lrpsim Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace lrp {

/// Philox4x32-10 counter-based generator: a pure function of (counter, key).
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key) noexcept;

/// SplitMix64 finalizer; used to derive trial keys from user seeds.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Combine words into one 64-bit key (order-sensitive).
std::uint64_t hash_combine(std::uint64_t seed, std::uint64_t value) noexcept;

/// Purpose tags that separate the sub-streams of a single trial.
enum class StreamTag : std::uint32_t {
  kPoissonPoints = 1,
  kPairUniform = 2,
  kCellBlock = 3,
  kMonteCarlo = 4,
};

/// Key of one trial's randomness. Streams derived from the same key with
/// different tags are independent.
struct StreamKey {
  std::uint64_t value = 0;
  friend bool operator==(StreamKey, StreamKey) = default;
};

/// Key for trial `trial_index` of a run at box side `box_side`.
StreamKey trial_key(std::uint64_t seed, std::uint64_t box_side,
                    std::uint64_t trial_index) noexcept;

/// Map 53 random bits to [0, 1).
inline double to_unit_interval(std::uint64_t bits) noexcept {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

/// Uniform in [0, 1) addressed by (key, i, j, tag). Two calls with the same
/// arguments return the same value.
double keyed_uniform(StreamKey key, std::uint32_t i, std::uint32_t j,
                     StreamTag tag = StreamTag::kPairUniform) noexcept;

/// Sequential view over the counter space (a, b, *, tag) of a key. Satisfies
/// UniformRandomBitGenerator so it can drive <random> distributions.
class CounterStream {
 public:
  using result_type = std::uint64_t;

  CounterStream(StreamKey key, StreamTag tag, std::uint32_t a = 0,
                std::uint32_t b = 0) noexcept;

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() noexcept;

  /// Uniform in [0, 1).
  double uniform() noexcept { return to_unit_interval((*this)()); }
  /// Uniform in (0, 1], safe as a logarithm argument.
  double uniform_pos() noexcept { return 1.0 - uniform(); }

 private:
  void refill() noexcept;

  std::array<std::uint32_t, 2> key_;
  std::array<std::uint32_t, 4> counter_;
  std::array<std::uint32_t, 4> block_{};
  int next_ = 2;  // 64-bit words consumed from block_
};

}  // namespace lrp
