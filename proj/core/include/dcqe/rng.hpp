// Copyright 2026 The dcqe Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace dcqe {

/// SplitMix64 finalizer.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Counter-based random stream: draw k of stream s under seed is a pure
/// function of (seed, s, k), so trials can run in any order or in parallel
/// and still reproduce bit for bit.
class CounterStream {
 public:
  CounterStream(std::uint64_t seed, std::uint64_t stream)
      : key_(splitmix64(seed ^ splitmix64(stream + 0x632be59bd9b4e019ULL))) {}

  std::uint64_t key() const { return key_; }

  /// 64 random bits for counter value `k`.
  std::uint64_t bits_at(std::uint64_t k) const { return splitmix64(key_ + k * 0xd1b54a32d192ed03ULL); }

  /// Uniform double in [0, 1) with 53 random bits, for counter value `k`.
  double uniform_at(std::uint64_t k) const {
    return static_cast<double>(bits_at(k) >> 11) * 0x1.0p-53;
  }

  double next_uniform() { return uniform_at(counter_++); }

  /// Standard normal draw (Box-Muller, consumes two uniforms).
  double next_gaussian() {
    const double u1 = 1.0 - next_uniform();  // (0, 1]
    const double u2 = next_uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace dcqe
