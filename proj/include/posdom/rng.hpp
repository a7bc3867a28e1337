// Copyright 2026 The posdom Authors.
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

#ifndef POSDOM_RNG_HPP_
#define POSDOM_RNG_HPP_

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <string_view>

namespace posdom {

// SplitMix64 output function.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Counter-based stream: draw k is mix64(seed + (k + 1) * golden), which is
// the k-th output of a SplitMix64 generator started at `seed`. Any draw can
// be computed independently, so parallel consumers stay reproducible.
class CounterRng {
 public:
  static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

  explicit constexpr CounterRng(std::uint64_t seed) noexcept : seed_(seed) {}

  constexpr std::uint64_t bits(std::uint64_t k) const noexcept {
    return mix64(seed_ + (k + 1) * kGolden);
  }
  // Uniform on the open interval (0, 1), 53-bit resolution.
  constexpr double uniform(std::uint64_t k) const noexcept {
    return (static_cast<double>(bits(k) >> 11) + 0.5) * 0x1.0p-53;
  }
  // Standard normal by inversion: -sqrt(2) * erfc_inv(2u).
  double normal(std::uint64_t k) const;

  std::uint64_t seed() const noexcept { return seed_; }

 private:
  std::uint64_t seed_;
};

// FNV-1a, used to fold text identifiers into seeds.
constexpr std::uint64_t hash_text(std::string_view s) noexcept {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001B3ULL;
  }
  return h;
}

inline std::uint64_t seed_part(double x) noexcept {
  return std::bit_cast<std::uint64_t>(x == 0.0 ? 0.0 : x);
}

// Folds the parts into `master` one at a time through mix64.
inline std::uint64_t derive_seed(std::uint64_t master,
                                 std::initializer_list<std::uint64_t> parts) {
  std::uint64_t h = mix64(master ^ 0x6A09E667F3BCC909ULL);
  for (std::uint64_t p : parts) h = mix64(h ^ mix64(p + CounterRng::kGolden));
  return h;
}

}  // namespace posdom

#endif  // POSDOM_RNG_HPP_
