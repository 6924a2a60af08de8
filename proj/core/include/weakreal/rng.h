// Copyright 2026 The weakreal Authors
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

#ifndef WEAKREAL_RNG_H
#define WEAKREAL_RNG_H

#include <cstdint>
#include <initializer_list>
#include <limits>

namespace weakreal {

inline constexpr std::uint64_t splitmix64_mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// SplitMix64 stream. Substreams are keyed by a master seed and a path of
/// counters, e.g. (seed, job, repetition, setting), so each task draws from an
/// independent sequence regardless of scheduling.
class StreamRng {
   public:
    using result_type = std::uint64_t;

    explicit StreamRng(std::uint64_t seed) : state_(splitmix64_mix(seed ^ 0x9e3779b97f4a7c15ULL)) {
    }
    StreamRng(std::uint64_t seed, std::initializer_list<std::uint64_t> path) : StreamRng(seed) {
        for (auto k : path) {
            state_ = splitmix64_mix(state_ ^ splitmix64_mix(k + 0x632be59bd9b4e019ULL));
        }
    }

    static constexpr result_type min() {
        return 0;
    }
    static constexpr result_type max() {
        return std::numeric_limits<result_type>::max();
    }

    result_type operator()() {
        state_ += 0x9e3779b97f4a7c15ULL;
        return splitmix64_mix(state_);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() {
        return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
    }

   private:
    std::uint64_t state_;
};

}  // namespace weakreal

#endif
