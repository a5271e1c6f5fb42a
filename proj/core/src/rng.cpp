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

#include "lrp/rng.hpp"

namespace lrp {
namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi,
                    std::uint32_t& lo) noexcept {
  const std::uint64_t product = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(product >> 32);
  lo = static_cast<std::uint32_t>(product);
}

}  // namespace

std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr,
                                        std::array<std::uint32_t, 2> key) noexcept {
  for (int round = 0; round < 10; ++round) {
    if (round > 0) {
      key[0] += kWeyl0;
      key[1] += kWeyl1;
    }
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kMul0, ctr[0], hi0, lo0);
    mulhilo(kMul1, ctr[2], hi1, lo1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
  }
  return ctr;
}

std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

std::uint64_t hash_combine(std::uint64_t seed, std::uint64_t value) noexcept {
  return mix64(mix64(seed) ^ value);
}

StreamKey trial_key(std::uint64_t seed, std::uint64_t box_side,
                    std::uint64_t trial_index) noexcept {
  return StreamKey{hash_combine(hash_combine(mix64(seed), box_side), trial_index)};
}

namespace {
inline std::array<std::uint32_t, 2> split_key(StreamKey key) noexcept {
  return {static_cast<std::uint32_t>(key.value),
          static_cast<std::uint32_t>(key.value >> 32)};
}
}  // namespace

double keyed_uniform(StreamKey key, std::uint32_t i, std::uint32_t j,
                     StreamTag tag) noexcept {
  const auto out = philox4x32({i, j, 0u, static_cast<std::uint32_t>(tag)},
                              split_key(key));
  const std::uint64_t bits = (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
  return to_unit_interval(bits);
}

CounterStream::CounterStream(StreamKey key, StreamTag tag, std::uint32_t a,
                             std::uint32_t b) noexcept
    : key_(split_key(key)), counter_{a, b, 0u, static_cast<std::uint32_t>(tag)} {}

void CounterStream::refill() noexcept {
  block_ = philox4x32(counter_, key_);
  ++counter_[2];
  next_ = 0;
}

CounterStream::result_type CounterStream::operator()() noexcept {
  if (next_ == 2) refill();
  const int w = 2 * next_++;
  return (static_cast<std::uint64_t>(block_[w]) << 32) | block_[w + 1];
}

}  // namespace lrp
