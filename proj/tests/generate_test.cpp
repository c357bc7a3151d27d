// SPDX-License-Identifier: Apache-2.0
#include <algorithm>

#include "comerge/generate.hpp"
#include "doctest.h"

using comerge::dist_kind;
using comerge::distribution;
using comerge::generate;

using comerge::parse_distribution;
using comerge::validate_sorted;

namespace {

const dist_kind all_kinds[] = {
    dist_kind::uniform_random,      dist_kind::all_equal,  dist_kind::few_distinct,
    dist_kind::disjoint_ab,         dist_kind::organ_pipe, dist_kind::runs_of_equal,
    dist_kind::interleaved_strict,
};

}  // namespace

TEST_CASE("every distribution yields sorted arrays of the requested lengths") {
    using size_pair = std::pair<std::size_t, std::size_t>;
    for (const dist_kind kind : all_kinds) {
        for (const auto& [m, n] : {size_pair{0, 0}, size_pair{1, 0}, size_pair{0, 7},
                                   size_pair{100, 57}, size_pair{1000, 1000}}) {
            const auto [a, b] = generate({kind, 9, 0}, m, n);
            CHECK(a.size() == m);
            CHECK(b.size() == n);
            CHECK(validate_sorted(a));
            CHECK(validate_sorted(b));
        }
    }
}

TEST_CASE("generation is reproducible and seed-sensitive") {
    const distribution dist{dist_kind::uniform_random, 424242, 0};
    const auto first = generate(dist, 500, 300);
    const auto second = generate(dist, 500, 300);
    CHECK(first == second);

    const auto reseeded = generate({dist_kind::uniform_random, 424243, 0}, 500, 300);
    CHECK(first != reseeded);
}

TEST_CASE("distribution shapes") {
    SUBCASE("all-equal is one constant everywhere") {
        const auto [a, b] = generate({dist_kind::all_equal, 1, 0}, 3, 2);
        REQUIRE(a.size() == 3);
        REQUIRE(b.size() == 2);
        CHECK(std::ranges::count(a, a[0]) == 3);
        CHECK(std::ranges::count(b, a[0]) == 2);
    }
    SUBCASE("disjoint keeps every a key below every b key") {
        const auto [a, b] = generate({dist_kind::disjoint_ab, 77, 0}, 400, 400);
        CHECK(a.back() < b.front());
    }
    SUBCASE("interleaved never produces a tie") {
        const auto [a, b] = generate({dist_kind::interleaved_strict, 0, 0}, 64, 80);
        for (const comerge::key_t k : a)
            CHECK(k % 2 == 0);
        for (const comerge::key_t k : b)
            CHECK(k % 2 == 1);
    }
    SUBCASE("few-distinct stays inside its alphabet") {
        const auto [a, b] = generate({dist_kind::few_distinct, 5, 3}, 200, 200);
        CHECK(a.back() < 3);
        CHECK(b.back() < 3);
    }
    SUBCASE("runs-of-equal repeats each key param times") {
        const auto [a, b] = generate({dist_kind::runs_of_equal, 0, 4}, 10, 6);
        CHECK(a == std::vector<comerge::key_t>{0, 0, 0, 0, 1, 1, 1, 1, 2, 2});
        CHECK(b == std::vector<comerge::key_t>{0, 0, 0, 0, 1, 1});
    }
    SUBCASE("organ-pipe duplicates the middle heavily") {
        const auto [a, b] = generate({dist_kind::organ_pipe, 0, 0}, 1000, 10);
        REQUIRE(b.size() == 10);
        const comerge::key_t mid = a[a.size() / 2];
        CHECK(std::ranges::count(a, mid) > std::ranges::count(a, a.front()));
        CHECK(std::ranges::count(a, mid) > std::ranges::count(a, a.back()));
    }
}

TEST_CASE("validate_sorted") {
    CHECK(validate_sorted(std::vector<comerge::key_t>{}));
    CHECK(validate_sorted(std::vector<comerge::key_t>{1, 2, 2, 3}));
    CHECK(!validate_sorted(std::vector<comerge::key_t>{2, 1}));
    CHECK(validate_sorted(std::vector<int>{3, 2, 1}, std::greater<>{}));
}

TEST_CASE("distribution tokens parse and round-trip") {
    for (const char* token : {"uniform", "all-equal", "few-distinct:8", "disjoint",
                              "interleaved", "organ-pipe", "runs:16"}) {
        const distribution dist = parse_distribution(token);
        CHECK(comerge::to_string(dist) == token);
        CHECK(parse_distribution(comerge::to_string(dist)) == dist);
    }
    // defaults are filled in for parameterized kinds
    CHECK(parse_distribution("few-distinct").param == 16);
    CHECK(parse_distribution("runs").param == 32);

    CHECK_THROWS_AS(parse_distribution("zipf"), std::invalid_argument);
    CHECK_THROWS_AS(parse_distribution("runs:"), std::invalid_argument);
    CHECK_THROWS_AS(parse_distribution("runs:0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_distribution("runs:x"), std::invalid_argument);
    CHECK_THROWS_AS(parse_distribution("uniform:3"), std::invalid_argument);
}
