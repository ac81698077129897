// Copyright 2026 The paulishape developers
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

#include <cstdint>
#include <initializer_list>
#include <vector>

namespace ps {

/// SplitMix64 finalizer. Full-avalanche mix of a 64-bit word.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Counter-based random stream. A stream is keyed by a seed plus a path of
/// integers (e.g. depth index, circuit index, shot index), so any stream can
/// be reconstructed independently of execution order. Draws advance a
/// SplitMix64 counter.
class RngStream {
 public:
  explicit RngStream(std::uint64_t key) : state_(key) {}

  std::uint64_t next_u64() { return mix64(state_++); }

  /// Uniform double in [0, 1).
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform double in [lo, hi).
  double uniform(double lo, double hi) {
    return lo + (hi - lo) * next_double();
  }

  /// Uniform integer in [0, bound). Bound must be small relative to 2^64;
  /// modulo bias is negligible for the bounds used here.
  std::uint64_t next_below(std::uint64_t bound) { return next_u64() % bound; }

  /// +1 with probability (1 + mean)/2, else -1.
  int pm_one(double mean) { return next_double() < 0.5 * (1.0 + mean) ? 1 : -1; }

  /// Standard normal via Box-Muller (single value; discards the pair).
  double next_gaussian();

  /// Index drawn from the distribution whose cumulative sums are `cdf`
  /// (nondecreasing, last entry ~1).
  std::size_t categorical(const std::vector<double>& cdf);

 private:
  std::uint64_t state_;
};

/// Derive an independent stream from a seed and a path of indices.
RngStream derive_rng(std::uint64_t seed, std::initializer_list<std::uint64_t> path);

}  // namespace ps
