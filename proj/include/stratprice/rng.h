// Copyright 2026 The stratprice Authors
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

#ifndef STRATPRICE_RNG_H_
#define STRATPRICE_RNG_H_

#include <cstdint>

namespace stratprice {

// SplitMix64 output function. Every seed derivation in the project goes
// through this mixer so streams can be reproduced in any language:
//
//   z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//   z =  z ^ (z >> 31)
constexpr uint64_t SplitMix64Finalize(uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

inline constexpr uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;

// Derives the seed of stream `index` from `base`:
//   mix64(base, index) = SplitMix64Finalize(base + kGoldenGamma * (index + 1)).
constexpr uint64_t Mix64(uint64_t base, uint64_t index) {
  return SplitMix64Finalize(base + kGoldenGamma * (index + 1));
}

// Stream indices used by RunEpisode.
inline constexpr uint64_t kSellerStream = 0;
inline constexpr uint64_t kValueStream = 1;

// SplitMix64 generator. Small, value-semantic and fully specified, so a
// transcript only depends on the seed.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t Next() {
    state_ += kGoldenGamma;
    return SplitMix64Finalize(state_);
  }

  // Uniform in [0, 1) with 53 random bits.
  double Uniform() { return static_cast<double>(Next() >> 11) * 0x1.0p-53; }

  uint64_t state() const { return state_; }

 private:
  uint64_t state_;
};

}  // namespace stratprice

#endif  // STRATPRICE_RNG_H_
