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

#include "paulishape/rng.hpp"

#include <algorithm>
#include <cmath>

namespace ps {

double RngStream::next_gaussian() {
  double u1 = next_double();
  double u2 = next_double();
  // avoid log(0)
  if (u1 <= 0.0) u1 = 0x1.0p-53;
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
}

std::size_t RngStream::categorical(const std::vector<double>& cdf) {
  const double u = next_double();
  auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
  if (it == cdf.end()) return cdf.size() - 1;
  return static_cast<std::size_t>(it - cdf.begin());
}

RngStream derive_rng(std::uint64_t seed, std::initializer_list<std::uint64_t> path) {
  std::uint64_t key = mix64(seed ^ 0x5eed5eed5eed5eedULL);
  for (std::uint64_t p : path) key = mix64(key ^ mix64(p));
  return RngStream(key);
}

}  // namespace ps
