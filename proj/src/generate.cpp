// SPDX-License-Identifier: Apache-2.0
#include "comerge/generate.hpp"

#include <algorithm>
#include <charconv>
#include <stdexcept>

namespace comerge {

namespace {

constexpr key_t k_all_equal_key = 42;
constexpr std::uint64_t k_default_alphabet = 16;
constexpr std::uint64_t k_default_run_length = 32;

// Separate deterministic streams for the two arrays.
detail::splitmix64 stream(std::uint64_t seed, std::uint64_t lane) {
    return detail::splitmix64{detail::mix64(seed) ^ detail::mix64(lane + 1)};
}

std::vector<key_t> sorted_uniform(std::uint64_t seed, std::uint64_t lane, std::size_t len,
                                  key_t base, std::uint64_t width) {
    detail::splitmix64 rng = stream(seed, lane);
    std::vector<key_t> keys(len);
    for (key_t& k : keys)
        k = base + (width == 0 ? rng.next() : rng.below(width));
    std::sort(keys.begin(), keys.end());
    return keys;
}

std::vector<key_t> interleaved(std::size_t len, key_t first) {
    std::vector<key_t> keys(len);
    for (std::size_t t = 0; t < len; ++t)
        keys[t] = first + 2 * static_cast<key_t>(t);
    return keys;
}

// Triangle-shaped multiplicity over a small alphabet: values at both ends
// are rare, middle values heavily duplicated. Deterministic, needs no seed.
std::vector<key_t> organ_pipe(std::size_t len) {
    std::vector<key_t> keys;
    keys.reserve(len);
    const std::uint64_t values = std::max<std::uint64_t>(
        1, std::min<std::uint64_t>(static_cast<std::uint64_t>(len), 63));
    std::uint64_t weight_sum = 0;
    for (std::uint64_t v = 0; v < values; ++v)
        weight_sum += std::min(v + 1, values - v);
    std::uint64_t acc = 0;
    std::size_t written = 0;
    for (std::uint64_t v = 0; v < values; ++v) {
        acc += std::min(v + 1, values - v);
        const std::size_t upto = static_cast<std::size_t>(
            static_cast<unsigned __int128>(len) * acc / weight_sum);
        for (; written < upto; ++written)
            keys.push_back(v);
    }
    return keys;
}

std::vector<key_t> runs(std::size_t len, std::uint64_t run_length) {
    std::vector<key_t> keys(len);
    for (std::size_t t = 0; t < len; ++t)
        keys[t] = static_cast<key_t>(t) / run_length;
    return keys;
}

}  // namespace

std::pair<std::vector<key_t>, std::vector<key_t>> generate(const distribution& dist,
                                                           std::size_t m, std::size_t n) {
    switch (dist.kind) {
    case dist_kind::uniform_random:
        return {sorted_uniform(dist.seed, 0, m, 0, 0), sorted_uniform(dist.seed, 1, n, 0, 0)};
    case dist_kind::all_equal:
        return {std::vector<key_t>(m, k_all_equal_key), std::vector<key_t>(n, k_all_equal_key)};
    case dist_kind::few_distinct: {
        const std::uint64_t alphabet = dist.param == 0 ? k_default_alphabet : dist.param;
        return {sorted_uniform(dist.seed, 0, m, 0, alphabet),
                sorted_uniform(dist.seed, 1, n, 0, alphabet)};
    }
    case dist_kind::disjoint_ab: {
        // a strictly below b: disjoint half-open key windows
        const std::uint64_t width = std::uint64_t{1} << 32;
        return {sorted_uniform(dist.seed, 0, m, 0, width),
                sorted_uniform(dist.seed, 1, n, width, width)};
    }
    case dist_kind::interleaved_strict:
        return {interleaved(m, 0), interleaved(n, 1)};
    case dist_kind::organ_pipe:
        return {organ_pipe(m), organ_pipe(n)};
    case dist_kind::runs_of_equal: {
        const std::uint64_t run_length = dist.param == 0 ? k_default_run_length : dist.param;
        return {runs(m, run_length), runs(n, run_length)};
    }
    }
    throw std::invalid_argument("generate: unknown distribution kind");
}

distribution parse_distribution(std::string_view token) {
    distribution dist;
    std::string_view name = token;
    std::uint64_t param = 0;
    bool has_param = false;
    if (const auto colon = token.find(':'); colon != std::string_view::npos) {
        name = token.substr(0, colon);
        const std::string_view tail = token.substr(colon + 1);
        const auto [end, ec] = std::from_chars(tail.data(), tail.data() + tail.size(), param);
        if (ec != std::errc{} || end != tail.data() + tail.size() || param == 0)
            throw std::invalid_argument("distribution: bad parameter in '" + std::string(token) +
                                        "'");
        has_param = true;
    }

    if (name == "uniform")
        dist.kind = dist_kind::uniform_random;
    else if (name == "all-equal")
        dist.kind = dist_kind::all_equal;
    else if (name == "few-distinct")
        dist.kind = dist_kind::few_distinct;
    else if (name == "disjoint")
        dist.kind = dist_kind::disjoint_ab;
    else if (name == "interleaved")
        dist.kind = dist_kind::interleaved_strict;
    else if (name == "organ-pipe")
        dist.kind = dist_kind::organ_pipe;
    else if (name == "runs")
        dist.kind = dist_kind::runs_of_equal;
    else
        throw std::invalid_argument("distribution: unknown kind '" + std::string(token) + "'");

    const bool takes_param =
        dist.kind == dist_kind::few_distinct || dist.kind == dist_kind::runs_of_equal;
    if (has_param && !takes_param)
        throw std::invalid_argument("distribution: '" + std::string(name) +
                                    "' takes no parameter");
    if (takes_param)
        dist.param = has_param ? param
                               : (dist.kind == dist_kind::few_distinct ? k_default_alphabet
                                                                       : k_default_run_length);
    return dist;
}

std::string to_string(const distribution& dist) {
    switch (dist.kind) {
    case dist_kind::uniform_random:
        return "uniform";
    case dist_kind::all_equal:
        return "all-equal";
    case dist_kind::few_distinct:
        return "few-distinct:" +
               std::to_string(dist.param == 0 ? k_default_alphabet : dist.param);
    case dist_kind::disjoint_ab:
        return "disjoint";
    case dist_kind::interleaved_strict:
        return "interleaved";
    case dist_kind::organ_pipe:
        return "organ-pipe";
    case dist_kind::runs_of_equal:
        return "runs:" + std::to_string(dist.param == 0 ? k_default_run_length : dist.param);
    }
    throw std::invalid_argument("to_string: unknown distribution kind");
}

}  // namespace comerge
