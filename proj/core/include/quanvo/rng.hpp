// Copyright 2026 The Quanvo Authors
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

#pragma once

#include <cmath>
#include <cstdint>

namespace quanvo {

/// Portable deterministic RNG used everywhere a seed appears in a file
/// format or a golden test: xoshiro256** with its state expanded from a
/// 64-bit seed by SplitMix64. The exact draw procedures are documented in
/// the README so other implementations can reproduce identical streams.
///
/// Stream contract (given the same seed, any implementation of the steps
/// below produces identical values):
///   next()          -> raw 64-bit draw (xoshiro256**)
///   below(n)        -> uniform integer in [0, n) by rejection sampling
///   real()          -> (next() >> 11) * 2^-53, uniform in [0, 1)
///   normal()        -> Box-Muller pair from two real() draws, cos first
class Rng {
  public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t x = seed;
        for (auto& word : state_) {
            word = split_mix64(x);
        }
    }

    /// One SplitMix64 step; also usable standalone for deriving sub-seeds.
    static std::uint64_t split_mix64(std::uint64_t& x) {
        x += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = x;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Mix extra words into a seed, for deriving independent per-job streams.
    static std::uint64_t mix(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) {
        std::uint64_t x = seed;
        (void)split_mix64(x);
        x ^= a;
        (void)split_mix64(x);
        x ^= b;
        return split_mix64(x);
    }

    std::uint64_t next() {
        const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    /// Uniform integer in [0, n); unbiased via rejection below the largest
    /// multiple of n that fits in 64 bits.
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t threshold = (0 - n) % n;
        for (;;) {
            const std::uint64_t v = next();
            if (v >= threshold) {
                return v % n;
            }
        }
    }

    /// Uniform double in [0, 1), 53 significant bits.
    double real() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Uniform double in [lo, hi).
    double real(double lo, double hi) { return lo + (hi - lo) * real(); }

    /// Standard normal via Box-Muller; second member of each pair is cached.
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        // u1 in (0, 1] so the log is finite.
        const double u1 = static_cast<double>((next() >> 11) + 1) * 0x1.0p-53;
        const double u2 = real();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * 3.14159265358979323846 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

  private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    std::uint64_t state_[4]{};
    double spare_ = 0.0;
    bool have_spare_ = false;
};

} // namespace quanvo
