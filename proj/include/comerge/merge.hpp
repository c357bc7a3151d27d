// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <span>
#include <stdexcept>

#include "comerge/corank.hpp"

namespace comerge {

namespace detail {

// Two-finger merge kernel. Takes from b only when b's head is strictly
// smaller, so equal keys come out a-before-b and each side keeps its
// internal order.
// TODO: try a galloping variant for strongly skewed block length ratios.
template <typename T, typename OutIt, typename Compare>
OutIt merge_into(std::span<const T> a, std::span<const T> b, OutIt out, Compare less) {
    std::size_t x = 0;
    std::size_t y = 0;
    while (x < a.size() && y < b.size()) {
        if (less(b[y], a[x]))
            *out++ = b[y++];
        else
            *out++ = a[x++];
    }
    for (; x < a.size(); ++x)
        *out++ = a[x];
    for (; y < b.size(); ++y)
        *out++ = b[y];
    return out;
}

template <typename T>
bool ranges_overlap(std::span<const T> x, std::span<const T> y) {
    if (x.empty() || y.empty())
        return false;
    const std::less<const void*> lt;
    const void* xb = x.data();
    const void* xe = x.data() + x.size();
    const void* yb = y.data();
    const void* ye = y.data() + y.size();
    return lt(xb, ye) && lt(yb, xe);
}

}  // namespace detail

/// Stable two-way merge of sorted ranges `a` and `b` into `out`.
/// `out` must have length |a| + |b| and must not alias either input;
/// violations throw std::invalid_argument.
template <detail::key_range A, detail::key_range B, std::ranges::contiguous_range Out,
          typename Compare = std::less<>>
    requires std::same_as<std::ranges::range_value_t<A>, std::ranges::range_value_t<Out>> &&
             std::same_as<std::ranges::range_value_t<B>, std::ranges::range_value_t<Out>>
void stable_merge(const A& a, const B& b, Out&& out, Compare less = {}) {
    using T = std::ranges::range_value_t<Out>;
    const auto av = detail::as_span(a);
    const auto bv = detail::as_span(b);
    const std::span<T> ov(std::ranges::data(out), std::ranges::size(out));
    detail::check_total_length(av.size(), bv.size());
    if (ov.size() != av.size() + bv.size())
        throw std::invalid_argument("stable_merge: output length must equal |a| + |b|");
    const std::span<const T> oc(ov.data(), ov.size());
    if (detail::ranges_overlap(av, oc) || detail::ranges_overlap(bv, oc))
        throw std::invalid_argument("stable_merge: output must not alias an input");
    detail::merge_into(av, bv, ov.data(), less);
}

}  // namespace comerge
