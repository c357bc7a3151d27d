// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "comerge/corank.hpp"

// Deliberately naive reference merges. These are the ground truth the
// production kernel and the parallel paths are checked against, so they
// stay as plain as possible and validate their inputs (they are allowed
// to be slow).

namespace comerge {

enum class origin : std::uint8_t { from_a, from_b };

/// Element with provenance, for checking that equal keys keep their
/// input order. Ordering looks at the key only, never at the tag.
template <typename K>
struct tagged {
    K key{};
    origin from = origin::from_a;
    std::uint32_t index = 0;  // position in the source array

    friend bool operator==(const tagged&, const tagged&) = default;
};

/// Key-only ordering for tagged elements.
struct tagged_key_less {
    template <typename K>
    bool operator()(const tagged<K>& x, const tagged<K>& y) const {
        return x.key < y.key;
    }
};

/// Attaches provenance tags to a key range.
template <detail::key_range R>
auto tag_range(const R& keys, origin from) {
    using K = std::ranges::range_value_t<R>;
    std::vector<tagged<K>> out;
    out.reserve(std::ranges::size(keys));
    std::uint32_t index = 0;
    for (const K& key : keys)
        out.push_back(tagged<K>{key, from, index++});
    return out;
}

namespace detail {

template <typename R>
void require_sorted(const R& r, const char* what) {
    if (!std::ranges::is_sorted(r))
        throw std::invalid_argument(std::string("oracle merge: ") + what +
                                    " input is not nondecreasing");
}

}  // namespace detail

/// The unique stable merge of `a` and `b` with provenance tags: on equal
/// keys everything from `a` goes first. Validates that both inputs are
/// sorted. Two-finger walk, no shortcuts.
template <detail::key_range A, detail::key_range B>
    requires std::same_as<std::ranges::range_value_t<A>, std::ranges::range_value_t<B>>
auto oracle_merge_tagged(const A& a, const B& b) {
    using K = std::ranges::range_value_t<A>;
    detail::require_sorted(a, "first");
    detail::require_sorted(b, "second");
    const auto av = detail::as_span(a);
    const auto bv = detail::as_span(b);
    detail::check_total_length(av.size(), bv.size());

    std::vector<tagged<K>> out;
    out.reserve(av.size() + bv.size());
    std::size_t x = 0;
    std::size_t y = 0;
    while (x < av.size() && y < bv.size()) {
        if (av[x] <= bv[y]) {
            out.push_back(tagged<K>{av[x], origin::from_a, static_cast<std::uint32_t>(x)});
            ++x;
        } else {
            out.push_back(tagged<K>{bv[y], origin::from_b, static_cast<std::uint32_t>(y)});
            ++y;
        }
    }
    for (; x < av.size(); ++x)
        out.push_back(tagged<K>{av[x], origin::from_a, static_cast<std::uint32_t>(x)});
    for (; y < bv.size(); ++y)
        out.push_back(tagged<K>{bv[y], origin::from_b, static_cast<std::uint32_t>(y)});
    return out;
}

/// Key sequence of the stable merge, without tags. Same walk as
/// oracle_merge_tagged; used where provenance is not needed (e.g. file
/// verification) to avoid doubling memory.
template <detail::key_range A, detail::key_range B>
    requires std::same_as<std::ranges::range_value_t<A>, std::ranges::range_value_t<B>>
auto oracle_merge_keys(const A& a, const B& b) {
    using K = std::ranges::range_value_t<A>;
    detail::require_sorted(a, "first");
    detail::require_sorted(b, "second");
    const auto av = detail::as_span(a);
    const auto bv = detail::as_span(b);
    detail::check_total_length(av.size(), bv.size());

    std::vector<K> out;
    out.reserve(av.size() + bv.size());
    std::size_t x = 0;
    std::size_t y = 0;
    while (x < av.size() && y < bv.size())
        out.push_back(av[x] <= bv[y] ? av[x++] : bv[y++]);
    for (; x < av.size(); ++x)
        out.push_back(av[x]);
    for (; y < bv.size(); ++y)
        out.push_back(bv[y]);
    return out;
}

}  // namespace comerge
