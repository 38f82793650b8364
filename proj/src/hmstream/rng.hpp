// Copyright 2026 The hmstream Authors
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

#ifndef HMSTREAM_RNG_HPP
#define HMSTREAM_RNG_HPP

#include <cstdint>
#include <random>

namespace hmstream {

/// SplitMix64 finalizer. Used to decorrelate user seeds before they reach
/// the Mersenne Twister.
constexpr uint64_t splitmix64(uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Seed for shot `index` of a run seeded with `seed`. Shots seeded this way
/// are independent and can run in any order or in parallel.
constexpr uint64_t derive_seed(uint64_t seed, uint64_t index) {
    return splitmix64(seed ^ splitmix64(index + 0x5851F42D4C957F2DULL));
}

/// Deterministic 64-bit generator. Every draw goes through raw engine output
/// so results are identical across standard library implementations.
class Rng {
   public:
    explicit Rng(uint64_t seed) : engine_(splitmix64(seed)) {}

    uint64_t bits() { return engine_(); }

    /// Uniform double in [0, 1) from the top 53 bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, bound). Rejection sampling, no modulo bias.
    uint64_t below(uint64_t bound) {
        if (bound <= 1) {
            return 0;
        }
        const uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        uint64_t r;
        do {
            r = engine_();
        } while (r >= limit);
        return r % bound;
    }

    bool coin() { return (engine_() >> 63) != 0; }

   private:
    std::mt19937_64 engine_;
};

}  // namespace hmstream

#endif
