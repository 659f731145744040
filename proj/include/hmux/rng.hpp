// Copyright 2026 The hmux Authors
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

#ifndef HMUX_RNG_HPP
#define HMUX_RNG_HPP

#include <cstdint>
#include <random>
#include <string_view>

namespace hmux {

/// Recorded in every output that depends on random numbers.
inline constexpr std::string_view kRngAlgorithm =
    "mt19937_64; partition seed = std::seed_seq{seed & 0xffffffff, seed >> "
    "32, partition}; uniform = (x >> 11) * 2^-53";

/// One independent random stream. Only the engine's raw output is used,
/// and every distribution is sampled here, so a stream is reproducible
/// across standard-library implementations.
class RandomStream {
 public:
  RandomStream(std::uint64_t seed, std::uint64_t partition);

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return uniform() < p; }

  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n) {
    return static_cast<std::uint64_t>(uniform() * static_cast<double>(n));
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace hmux

#endif  // HMUX_RNG_HPP
