// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>

namespace comerge {

/// Key type used by the generator, file formats and benchmarks. The core
/// algorithms stay generic over element type and ordering.
using key_t = std::uint64_t;

namespace detail {

// splitmix64: tiny, seedable, identical output on every platform, which
// the generator's reproducibility contract depends on.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

struct splitmix64 {
    std::uint64_t state = 0;

    std::uint64_t next() {
        state += 0x9e3779b97f4a7c15ULL;
        std::uint64_t x = state;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

    // Unbiased draw from [0, bound) via rejection.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t limit = bound * (UINT64_MAX / bound);
        std::uint64_t x = next();
        while (x >= limit)
            x = next();
        return x % bound;
    }
};

}  // namespace detail

/// Order-independent digest of a key multiset: equal multisets hash equal
/// regardless of arrangement, and the digest of a concatenation is the
/// wrapping sum of the parts' digests.
inline std::uint64_t multiset_checksum(std::span<const key_t> keys) {
    std::uint64_t sum = 0;
    for (const key_t k : keys)
        sum += detail::mix64(k);
    return sum;
}

}  // namespace comerge
