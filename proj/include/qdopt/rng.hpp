/*
Copyright 2026 qdopt developers

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <cstdint>

namespace qdopt {

// splitmix64 generator. Every random draw in the library goes through this
// class rather than <random> distributions, whose outputs are not pinned by
// the standard; this keeps seeded runs bit-identical across compilers.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    // Finalizer used both by next_u64 and for stream derivation.
    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Independent stream for (seed, stream): solver restarts, sampler chains,
    // fit splits. Two mixes keep distinct (seed, stream) pairs uncorrelated.
    static Rng derive(std::uint64_t seed, std::uint64_t stream) {
        std::uint64_t a = mix(seed + 0x9e3779b97f4a7c15ULL);
        std::uint64_t b = mix(stream * 0xd1342543de82ef95ULL + 0x632be59bd9b4e019ULL);
        return Rng(a ^ b);
    }

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ULL;
        return mix(state_);
    }

    // Uniform in [0, 1) with 53-bit resolution.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Uniform integer in [0, n), n >= 1. Multiply-shift; bias is below any
    // observable threshold for the ranges used here.
    std::uint64_t below(std::uint64_t n) {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
    }

    bool bernoulli(double p) { return uniform() < p; }

    int bit() { return static_cast<int>(next_u64() >> 63); }

    int spin() { return bit() ? +1 : -1; }

  private:
    std::uint64_t state_;
};

}  // namespace qdopt
