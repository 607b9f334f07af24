/*
 * Copyright 2026 The sliceopt Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef SLICEOPT_RANDOM_HPP
#define SLICEOPT_RANDOM_HPP

#include <cstdint>
#include <random>
#include <string_view>

namespace sliceopt {

/// Identifier written into every output manifest. Bump the suffix whenever
/// the mapping from (seed, stream, index) to draws changes.
inline constexpr std::string_view rng_algorithm_id = "mt19937_64+splitmix64-streams/v2";

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Seed of Monte Carlo run `run` under base seed `seed`.
constexpr std::uint64_t run_seed(std::uint64_t seed, std::uint64_t run) noexcept
{
    return splitmix64(splitmix64(seed) ^ run);
}

/// Independent random stream keyed by (seed, tag, index).
///
/// Only the raw mt19937_64 output is used; the standard distributions are
/// implementation-defined and would break cross-platform reproducibility.
class RandomStream
{
public:
    RandomStream(std::uint64_t seed, std::uint64_t tag, std::uint64_t index)
        : engine_(splitmix64(splitmix64(seed) ^ splitmix64(tag * 0x100000001b3ULL + index)))
    {
    }

    /// Uniform in [0, 1) with 53 random bits.
    double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform in [lo, hi]; returns lo exactly when lo == hi.
    double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

    /// Uniform integer in [0, bound), bound > 0, without modulo bias.
    std::uint64_t below(std::uint64_t bound)
    {
        const std::uint64_t limit = std::uint64_t(-1) - std::uint64_t(-1) % bound;
        std::uint64_t x;
        do
        {
            x = engine_();
        } while (x >= limit);
        return x % bound;
    }

private:
    std::mt19937_64 engine_;
};

// Stream tags.
inline constexpr std::uint64_t stream_wd = 1;
inline constexpr std::uint64_t stream_link = 2;
inline constexpr std::uint64_t stream_ap = 3;
inline constexpr std::uint64_t stream_node = 4;
inline constexpr std::uint64_t stream_best_response = 5;

} // namespace sliceopt

#endif // SLICEOPT_RANDOM_HPP
