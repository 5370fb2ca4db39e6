// Copyright 2026 The knotjones developers
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

#include <cmath>
#include <cstdint>
#include <initializer_list>

namespace knotjones {

// SplitMix64. Small, fast, and fully specified, so streams are identical
// across platforms and runs. That makes every seeded result reproducible
// bit-for-bit, which the whole pipeline relies on.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // uniform in [0, 1), 53 bits of mantissa
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + uniform() * (hi - lo); }

  bool bernoulli(double p) { return uniform() < p; }

  // unbiased integer in [0, n) via rejection
  std::uint64_t below(std::uint64_t n) {
    std::uint64_t threshold = -n % n;
    for (;;) {
      std::uint64_t r = next();
      if (r >= threshold) return r % n;
    }
  }

  double gaussian() {
    // Box-Muller; one value per call keeps the draw count predictable
    double u1 = uniform();
    double u2 = uniform();
    if (u1 < 1e-300) u1 = 1e-300;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
  }

 private:
  std::uint64_t state_;
};

// Hash-combine a master seed with a chain of tags. Child streams derived
// this way are independent of evaluation order, so shots, runs and
// bootstrap resamples can be computed in parallel or out of order.
inline std::uint64_t derive_seed(std::uint64_t seed,
                                 std::initializer_list<std::uint64_t> tags) {
  std::uint64_t h = seed;
  for (std::uint64_t t : tags) {
    SplitMix64 g(h ^ (t + 0x9e3779b97f4a7c15ull));
    h = g.next();
  }
  return h;
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag) {
  return derive_seed(seed, {tag});
}

}  // namespace knotjones
