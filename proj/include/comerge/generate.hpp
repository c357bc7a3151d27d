// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "comerge/corank.hpp"
#include "comerge/keys.hpp"

namespace comerge {

/// Input shapes for stress and benchmark runs.
enum class dist_kind {
    uniform_random,      // independent uniform 64-bit keys
    all_equal,           // every key identical in both arrays
    few_distinct,        // uniform over a small alphabet (param = alphabet size)
    disjoint_ab,         // every key of a below every key of b
    interleaved_strict,  // a gets the even keys, b the odd ones, no ties
    organ_pipe,          // duplication rises toward the middle values
    runs_of_equal,       // consecutive runs of equal keys (param = run length)
};

struct distribution {
    dist_kind kind = dist_kind::uniform_random;
    std::uint64_t seed = 0;
    std::uint64_t param = 0;  // alphabet size / run length, 0 = kind default

    friend bool operator==(const distribution&, const distribution&) = default;
};

/// Produces two sorted key arrays of lengths m and n. The same
/// (kind, param, seed, m, n) always reproduces the identical arrays.
std::pair<std::vector<key_t>, std::vector<key_t>> generate(const distribution& dist,
                                                           std::size_t m, std::size_t n);

/// Parses a distribution token: "uniform", "all-equal", "few-distinct[:d]",
/// "disjoint", "interleaved", "organ-pipe", "runs[:len]". Throws
/// std::invalid_argument on anything else. The seed is not part of the token.
distribution parse_distribution(std::string_view token);

/// Canonical token for a distribution, round-trips through parse_distribution.
std::string to_string(const distribution& dist);

/// True iff the range is nondecreasing under `less`.
template <std::ranges::forward_range R, typename Compare = std::less<>>
bool validate_sorted(const R& view, Compare less = {}) {
    return std::ranges::is_sorted(view, less);
}

}  // namespace comerge
