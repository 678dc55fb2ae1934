// SPDX-License-Identifier: Apache-2.0
//
// lsa — large-system analysis of the LMMSE SINR for channels with a variance profile
// Copyright (C) 2026 The lsa authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef LSA_RNG_HPP
#define LSA_RNG_HPP

#include <cstdint>
#include <random>

namespace lsa {

// Purpose tags for derived streams. Every consumer of randomness draws from
// its own stream keyed by (master seed, tag, index), so results do not
// depend on execution order or worker count.
inline constexpr std::uint64_t kStreamTrial = 0x1;
inline constexpr std::uint64_t kStreamTaps = 0x2;
inline constexpr std::uint64_t kStreamPowerShuffle = 0x3;

namespace detail {
// splitmix64 finalizer
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}
} // namespace detail

/// Independent generator for stream (seed, tag, index).
inline std::mt19937_64 derive_stream(std::uint64_t seed, std::uint64_t tag, std::uint64_t index) {
    std::uint64_t s = detail::mix64(seed);
    s = detail::mix64(s ^ (tag * 0xD6E8FEB86659FD93ULL));
    s = detail::mix64(s ^ index);
    return std::mt19937_64(s);
}

} // namespace lsa

#endif
