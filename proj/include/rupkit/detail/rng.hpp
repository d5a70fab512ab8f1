// Copyright 2026 The rupkit Authors
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
//
// Deterministic randomness helpers.  Everything that feeds a published
// artifact (splits, mock embeddings) must reproduce bit-for-bit across
// platforms and standard library versions, so shuffling and uniform mapping
// are written out by hand on top of std::mt19937_64, whose output sequence
// is fixed by the standard.  std::shuffle and the distribution classes are
// implementation-defined and deliberately avoided here.

#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace rupkit::detail {

inline std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

// splitmix64 finalizer; decorrelates seed material before it reaches the
// generator.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// Uniform double in [0, 1) with 53 bits of entropy.
inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Uniform double in [-1, 1).
inline double uniform_sym(std::mt19937_64& rng) {
  return uniform01(rng) * 2.0 - 1.0;
}

// Unbiased integer in [0, n) by rejection; n must be nonzero.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
  const std::uint64_t limit = std::uint64_t(-1) - std::uint64_t(-1) % n;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % n;
}

// In-place Fisher-Yates.
template <typename T>
void shuffle(std::vector<T>& v, std::mt19937_64& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    const std::size_t j =
        static_cast<std::size_t>(uniform_below(rng, static_cast<std::uint64_t>(i)));
    std::swap(v[i - 1], v[j]);
  }
}

}  // namespace rupkit::detail
