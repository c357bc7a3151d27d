// SPDX-License-Identifier: Apache-2.0
#include <cstring>
#include <ostream>
#include <vector>

#include "comerge/corank.hpp"
#include "comerge/oracle.hpp"
#include "doctest.h"
#include "oracles.hpp"

namespace comerge {
static std::ostream& operator<<(std::ostream& os, const co_ranks& cr) {
    return os << "(" << cr.a << ", " << cr.b << ")";
}
}  // namespace comerge

using comerge::co_rank;
using comerge::co_rank_stats;
using comerge::co_ranks;
using keys = std::vector<std::uint64_t>;

TEST_CASE("co_rank boundary ranks need no comparisons") {
    const keys a{1, 3, 5, 7};
    const keys b{2, 4, 6, 8};
    co_rank_stats stats;

    CHECK(co_rank(0, a, b, std::less<>{}, &stats) == co_ranks{0, 0});
    CHECK(stats.iterations == 0);
    CHECK(stats.comparisons == 0);

    CHECK(co_rank(8, a, b, std::less<>{}, &stats) == co_ranks{4, 4});
    CHECK(stats.iterations == 0);
    CHECK(stats.comparisons == 0);

    CHECK(co_rank(0, keys{}, keys{}) == co_ranks{0, 0});
}

TEST_CASE("co_rank splits known instances") {
    CHECK(co_rank(4, keys{1, 3, 5, 7}, keys{2, 4, 6, 8}) == co_ranks{2, 2});
    // equal keys: everything from a precedes anything from b
    CHECK(co_rank(2, keys{2, 2}, keys{2, 2}) == co_ranks{2, 0});
    CHECK(co_rank(3, keys{10, 20}, keys{1, 2, 3, 4, 5}) == co_ranks{0, 3});
    CHECK(co_rank(1, keys{1}, keys{2}) == co_ranks{1, 0});
}

TEST_CASE("co_rank handles one-sided inputs without comparisons") {
    const keys some{5, 6, 7};
    const keys none;
    co_rank_stats stats;
    for (std::size_t i = 0; i <= 3; ++i) {
        CHECK(co_rank(i, some, none, std::less<>{}, &stats) == co_ranks{i, 0});
        CHECK(stats.comparisons == 0);
        CHECK(co_rank(i, none, some, std::less<>{}, &stats) == co_ranks{0, i});
        CHECK(stats.comparisons == 0);
    }
}

TEST_CASE("co_rank rejects ranks beyond m+n") {
    const keys a{1, 2};
    const keys b{3};
    CHECK_THROWS_AS(co_rank(4, a, b), std::out_of_range);
    CHECK_THROWS_WITH(co_rank(100, a, b), doctest::Contains("rank out of range"));
}

TEST_CASE("co_rank matches the exhaustive unique pair on dense-duplicate instances") {
    testutil::rng_t rng{2024};
    for (int round = 0; round < 400; ++round) {
        const std::size_t m = rng.below(65);
        const std::size_t n = rng.below(65);
        const keys a = testutil::sorted_keys(rng, m, 3);
        const keys b = testutil::sorted_keys(rng, n, 3);
        for (std::size_t i = 0; i <= m + n; ++i) {
            const auto satisfying = testutil::brute_force_co_ranks(i, a, b);
            REQUIRE(satisfying.size() == 1);
            const co_ranks got = co_rank(i, a, b);
            CHECK(got == satisfying.front());
            CHECK(got == testutil::merge_count_co_ranks(i, a, b));
        }
    }
}

TEST_CASE("prefix property: co-ranked prefixes merge to the output prefix") {
    testutil::rng_t rng{7};
    for (int round = 0; round < 200; ++round) {
        const std::size_t m = rng.below(33);
        const std::size_t n = rng.below(33);
        const keys a = testutil::sorted_keys(rng, m, 4);
        const keys b = testutil::sorted_keys(rng, n, 4);
        const auto whole = comerge::oracle_merge_tagged(a, b);
        for (std::size_t i = 0; i <= m + n; ++i) {
            const co_ranks split = co_rank(i, a, b);
            const keys a_prefix(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(split.a));
            const keys b_prefix(b.begin(), b.begin() + static_cast<std::ptrdiff_t>(split.b));
            const auto merged_prefix = comerge::oracle_merge_tagged(a_prefix, b_prefix);
            REQUIRE(merged_prefix.size() == i);
            for (std::size_t t = 0; t < i; ++t)
                CHECK(merged_prefix[t] == whole[t]);
        }
    }
}

TEST_CASE("co-ranks grow monotonically with the rank") {
    testutil::rng_t rng{99};
    for (int round = 0; round < 100; ++round) {
        const keys a = testutil::sorted_keys(rng, rng.below(50), 5);
        const keys b = testutil::sorted_keys(rng, rng.below(50), 5);
        co_ranks previous{0, 0};
        for (std::size_t i = 0; i <= a.size() + b.size(); ++i) {
            const co_ranks split = co_rank(i, a, b);
            CHECK(split.a >= previous.a);
            CHECK(split.b >= previous.b);
            previous = split;
        }
    }
}

TEST_CASE("iteration and comparison bounds hold on every call") {
    testutil::rng_t rng{31337};
    co_rank_stats stats;

    SUBCASE("dense duplicates, every rank") {
        for (std::size_t m = 0; m <= 12; ++m) {
            for (std::size_t n = 0; n <= 12; ++n) {
                for (int fill = 0; fill < 12; ++fill) {
                    const keys a = testutil::sorted_keys(rng, m, 3);
                    const keys b = testutil::sorted_keys(rng, n, 3);
                    for (std::size_t i = 0; i <= m + n; ++i) {
                        co_rank(i, a, b, std::less<>{}, &stats);
                        const auto bound = testutil::iteration_bound(m, n, i);
                        CHECK(stats.iterations <= bound);
                        CHECK(stats.comparisons <= 2 * bound);
                    }
                }
            }
        }
    }

    SUBCASE("larger random instances") {
        for (int round = 0; round < 2000; ++round) {
            const std::size_t m = rng.below(4096);
            const std::size_t n = rng.below(4096);
            const keys a = testutil::sorted_keys(rng, m, rng.below(2) ? 0 : 64);
            const keys b = testutil::sorted_keys(rng, n, rng.below(2) ? 0 : 64);
            const std::size_t i = rng.below(m + n + 1);
            co_rank(i, a, b, std::less<>{}, &stats);
            const auto bound = testutil::iteration_bound(m, n, i);
            CHECK(stats.iterations <= bound);
            CHECK(stats.comparisons <= 2 * bound);
        }
    }
}

TEST_CASE("co_rank is pure: inputs untouched, results repeatable") {
    testutil::rng_t rng{4242};
    const keys a = testutil::sorted_keys(rng, 100, 6);
    const keys b = testutil::sorted_keys(rng, 80, 6);
    const keys a_copy = a;
    const keys b_copy = b;
    for (std::size_t i = 0; i <= 180; i += 7)
        CHECK(co_rank(i, a, b) == co_rank(i, a, b));
    CHECK(std::memcmp(a.data(), a_copy.data(), a.size() * sizeof(a[0])) == 0);
    CHECK(std::memcmp(b.data(), b_copy.data(), b.size() * sizeof(b[0])) == 0);
}

TEST_CASE("co_rank_counted accumulates exactly the comparisons performed") {
    comerge::comparison_counter counter;

    CHECK(comerge::co_rank_counted(0, keys{1, 2}, keys{3}, std::less<>{}, counter) ==
          co_ranks{0, 0});
    CHECK(counter.count == 0);

    CHECK(comerge::co_rank_counted(1, keys{1}, keys{2}, std::less<>{}, counter) ==
          co_ranks{1, 0});
    CHECK(counter.count <= 2);

    SUBCASE("counter additivity and the closed-form cap") {
        testutil::rng_t rng{555};
        const keys a = testutil::sorted_keys(rng, 1024, 0);
        const keys b = testutil::sorted_keys(rng, 1024, 0);
        std::uint64_t running = 0;
        comerge::comparison_counter sum;
        for (int round = 0; round < 500; ++round) {
            const std::size_t i = rng.below(2049);
            comerge::comparison_counter one;
            const co_ranks split = comerge::co_rank_counted(i, a, b, std::less<>{}, one);
            CHECK(split == comerge::co_rank(i, a, b));
            CHECK(one.count <= 2 * testutil::iteration_bound(1024, 1024, i));
            comerge::co_rank_counted(i, a, b, std::less<>{}, sum);
            running += one.count;
            CHECK(sum.count == running);
        }
    }
}

TEST_CASE("co_rank works under a caller-supplied ordering") {
    // descending arrays ordered by greater-than
    const keys a{9, 7, 5, 1};
    const keys b{8, 6, 2};
    const auto desc = std::greater<>{};
    for (std::size_t i = 0; i <= 7; ++i) {
        const auto satisfying = testutil::brute_force_co_ranks(i, a, b, desc);
        REQUIRE(satisfying.size() == 1);
        CHECK(co_rank(i, a, b, desc) == satisfying.front());
    }

    // ordering on the first component only: ties must stay a-before-b
    using pr = std::pair<int, char>;
    const std::vector<pr> pa{{1, 'x'}, {2, 'y'}};
    const std::vector<pr> pb{{1, 'z'}, {2, 'w'}};
    const auto first_less = [](const pr& x, const pr& y) { return x.first < y.first; };
    CHECK(co_rank(1, pa, pb, first_less) == co_ranks{1, 0});
    CHECK(co_rank(2, pa, pb, first_less) == co_ranks{1, 1});
    CHECK(co_rank(3, pa, pb, first_less) == co_ranks{2, 1});
}
