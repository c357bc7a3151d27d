// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <ranges>
#include <span>
#include <stdexcept>

// Rank-based selection into a pair of sorted sequences.
//
// For two sorted arrays a (length m) and b (length n), every index i into
// their stable merge (the "rank") splits uniquely into prefix lengths
// (j, k) with j + k = i such that stably merging a[0..j) and b[0..k)
// yields exactly the first i merged elements. co_rank() finds that split
// without merging, by a two-sided interval-halving search over candidate
// prefix lengths.
//
// The split is characterized by two guards over the boundary elements:
//   j == 0 || a[j-1] <= b[k]     (nothing taken from a is beaten by b[k])
//   k == 0 || b[k-1] <  a[j]     (strict: equal keys resolve a-before-b)
// Out-of-range boundary reads never happen; they are fenced by index
// tests evaluated before the key comparison (short-circuit).
//
// Cost: at most ceil(log2(max(1, min(m, n, i, m+n-i)))) + 1 halving
// iterations and at most two key comparisons per loop pass.

namespace comerge {

using rank_t = std::size_t;

/// Prefix lengths into the two inputs for one output rank.
struct co_ranks {
    std::size_t a = 0;
    std::size_t b = 0;

    friend bool operator==(const co_ranks&, const co_ranks&) = default;
};

/// Per-call search cost. `iterations` counts interval-halving steps; the
/// final pass that only confirms both guards is not an iteration.
struct co_rank_stats {
    std::uint32_t iterations = 0;
    std::uint32_t comparisons = 0;
};

/// Accumulates key comparisons across calls that take it.
struct comparison_counter {
    std::uint64_t count = 0;
};

namespace detail {

template <typename R>
auto as_span(const R& r) {
    return std::span<const std::ranges::range_value_t<R>>(std::ranges::data(r),
                                                          std::ranges::size(r));
}

// A sorted view in this library is any sized, contiguous, read-only range;
// sortedness itself is a precondition, not a type property.
template <typename R>
concept key_range = std::ranges::contiguous_range<R> && std::ranges::sized_range<R>;

inline void check_total_length(std::size_t m, std::size_t n) {
    if (m > std::numeric_limits<std::size_t>::max() - n)
        throw std::length_error("comerge: combined input length exceeds index range");
}

template <typename T, typename Compare>
co_ranks co_rank_impl(rank_t target, std::span<const T> a, std::span<const T> b,
                      Compare less, co_rank_stats* stats) {
    const std::size_t m = a.size();
    const std::size_t n = b.size();
    check_total_length(m, n);
    if (target > m + n)
        throw std::out_of_range("co_rank: rank out of range (exceeds m+n)");

    // Start from the extreme split that takes as much as possible from a,
    // then walk back. take_a + take_b == target throughout.
    std::size_t take_a = std::min(target, m);
    std::size_t take_b = target - take_a;
    // Analytic floors: no valid split can take less than these.
    std::size_t floor_a = target > n ? target - n : 0;
    std::size_t floor_b = target > m ? target - m : 0;

    std::uint32_t iterations = 0;
    std::uint32_t comparisons = 0;

    for (;;) {
        if (take_a > 0 && take_b < n &&
            (++comparisons, less(b[take_b], a[take_a - 1]))) {
            // a[take_a-1] > b[take_b]: too much taken from a. Halve the
            // interval [floor_a, take_a]; the mirror amount moves to b, so
            // take_b becomes a proven floor for b.
            const std::size_t step = (take_a - floor_a + 1) / 2;
            floor_b = take_b;
            take_a -= step;
            take_b += step;
            ++iterations;
        } else if (take_b > 0 && take_a < m &&
                   (++comparisons, !less(b[take_b - 1], a[take_a]))) {
            // b[take_b-1] >= a[take_a]: an equal or larger b element sits
            // before a pending a element, which the a-before-b tie rule
            // forbids. Halve [floor_b, take_b] in the other direction.
            const std::size_t step = (take_b - floor_b + 1) / 2;
            floor_a = take_a;
            take_a += step;
            take_b -= step;
            ++iterations;
        } else {
            break;  // both guards hold: unique split found
        }
    }

    if (stats != nullptr)
        *stats = {iterations, comparisons};
    return {take_a, take_b};
}

}  // namespace detail

/// Finds the unique prefix split (j, k), j + k = target, of the stable
/// merge of `a` and `b`. Inputs must be nondecreasing under `less`; this
/// is not checked here. Throws std::out_of_range if target > m+n.
template <detail::key_range A, detail::key_range B, typename Compare = std::less<>>
    requires std::same_as<std::ranges::range_value_t<A>, std::ranges::range_value_t<B>>
co_ranks co_rank(rank_t target, const A& a, const B& b, Compare less = {},
                 co_rank_stats* stats = nullptr) {
    return detail::co_rank_impl(target, detail::as_span(a), detail::as_span(b), less, stats);
}

/// Same as co_rank, adding the number of key comparisons performed to
/// `counter`. The count never exceeds
/// 2 * (ceil(log2(max(1, min(m, n, target, m+n-target)))) + 1).
template <detail::key_range A, detail::key_range B, typename Compare = std::less<>>
    requires std::same_as<std::ranges::range_value_t<A>, std::ranges::range_value_t<B>>
co_ranks co_rank_counted(rank_t target, const A& a, const B& b, Compare less,
                         comparison_counter& counter) {
    co_rank_stats stats;
    const co_ranks result =
        detail::co_rank_impl(target, detail::as_span(a), detail::as_span(b), less, &stats);
    counter.count += stats.comparisons;
    return result;
}

}  // namespace comerge
