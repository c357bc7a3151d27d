// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <atomic>
#include <barrier>
#include <chrono>
#include <cstdint>
#include <mutex>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "comerge/corank.hpp"
#include "comerge/merge.hpp"

// Parallel stable merge with perfect load balance.
//
// The output array is cut into p blocks whose sizes differ by at most
// one. Each worker r independently computes the co-ranks of its block's
// start and end rank and then merges the resulting input blocks into its
// private output block. Workers share the inputs read-only and never
// write the same output index, so the whole run needs no locks, atomics
// or inter-worker messages.
//
// merge_parallel_synced trades half of the co-ranking for one barrier:
// every worker computes only its start co-ranks, then reads its end
// co-ranks from the next worker after the barrier.

namespace comerge {

enum class run_mode {
    threads,    // one std::thread per worker
    simulated,  // workers run one after another on the calling thread
};

struct merge_options {
    run_mode mode = run_mode::threads;
    bool count_comparisons = false;  // adds a tally to every kernel comparison
};

struct merge_report {
    std::size_t m = 0;
    std::size_t n = 0;
    std::size_t workers = 0;
    std::uint64_t wall_ns = 0;                     // parallel region only
    std::vector<std::size_t> block_sizes;          // output elements per worker
    std::vector<std::uint32_t> corank_iterations;  // one entry per co_rank call
    std::optional<std::uint64_t> comparisons;      // set when counting was requested
    std::optional<bool> verified;                  // set by verification layers
    std::optional<double> speedup_vs_p1;           // set by experiment batches
    std::string note;                              // diagnostic when unverified
};

/// Output block boundary for worker r of `workers`: floor(r * total / workers).
/// Monotone in r, 0 at r = 0, total at r = workers. Intermediate products
/// are widened so the result is exact for any total the platform admits.
inline rank_t partition_output(std::size_t total, std::size_t workers, std::size_t r) {
    if (workers == 0)
        throw std::invalid_argument("partition_output: worker count must be positive");
    if (r > workers)
        throw std::invalid_argument("partition_output: worker id out of range");
    using wide = unsigned __int128;
    return static_cast<rank_t>(static_cast<wide>(r) * total / workers);
}

/// One worker's share: an output block plus the input blocks that produce it.
struct block_assignment {
    std::size_t worker = 0;
    std::size_t out_begin = 0;
    std::size_t out_end = 0;
    std::size_t a_begin = 0;
    std::size_t a_end = 0;
    std::size_t b_begin = 0;
    std::size_t b_end = 0;

    std::size_t out_size() const { return out_end - out_begin; }
    std::size_t a_size() const { return a_end - a_begin; }
    std::size_t b_size() const { return b_end - b_begin; }

    friend bool operator==(const block_assignment&, const block_assignment&) = default;
};

struct merge_plan {
    std::size_t workers = 0;
    std::vector<block_assignment> blocks;
};

/// Computes all worker assignments centrally. Each block's co-ranks come
/// from two independent co_rank calls, matching what the workers do
/// themselves in merge_parallel.
template <detail::key_range A, detail::key_range B, typename Compare = std::less<>>
    requires std::same_as<std::ranges::range_value_t<A>, std::ranges::range_value_t<B>>
merge_plan plan(const A& a, const B& b, std::size_t workers, Compare less = {}) {
    const auto av = detail::as_span(a);
    const auto bv = detail::as_span(b);
    detail::check_total_length(av.size(), bv.size());
    if (workers == 0)
        throw std::invalid_argument("plan: worker count must be positive");
    const std::size_t total = av.size() + bv.size();

    merge_plan result;
    result.workers = workers;
    result.blocks.reserve(workers);
    for (std::size_t r = 0; r < workers; ++r) {
        const rank_t lo = partition_output(total, workers, r);
        const rank_t hi = partition_output(total, workers, r + 1);
        const co_ranks begin = detail::co_rank_impl(lo, av, bv, less, nullptr);
        const co_ranks end = detail::co_rank_impl(hi, av, bv, less, nullptr);
        result.blocks.push_back({r, lo, hi, begin.a, end.a, begin.b, end.b});
    }
    return result;
}

namespace detail {

template <typename Compare>
struct counting_compare {
    Compare less;
    std::uint64_t* tally;

    template <typename X, typename Y>
    bool operator()(const X& x, const Y& y) const {
        ++*tally;
        return less(x, y);
    }
};

struct worker_slot {
    std::size_t block_size = 0;
    co_rank_stats begin_stats;
    co_rank_stats end_stats;
    std::uint64_t kernel_comparisons = 0;
};

// Runs fn(r) for every worker id, either inline or on one thread per
// worker (worker 0 stays on the calling thread). The first exception
// thrown by any worker is rethrown after the join.
template <typename Fn>
void run_workers(std::size_t workers, run_mode mode, Fn&& fn) {
    if (mode == run_mode::simulated || workers == 1) {
        for (std::size_t r = 0; r < workers; ++r)
            fn(r);
        return;
    }
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto guarded = [&](std::size_t r) noexcept {
        try {
            fn(r);
        } catch (...) {
            const std::scoped_lock lock(error_mutex);
            if (!first_error)
                first_error = std::current_exception();
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers - 1);
    try {
        for (std::size_t r = 1; r < workers; ++r)
            pool.emplace_back(guarded, r);
        guarded(0);
    } catch (...) {
        for (std::thread& t : pool)
            t.join();
        throw;
    }
    for (std::thread& t : pool)
        t.join();
    if (first_error)
        std::rethrow_exception(first_error);
}

// Shared implementation of both parallel merges. `writer_for(r, lo, hi)`
// yields the output iterator worker r writes its block [lo, hi) through;
// the default factory hands out raw pointers into the output array, tests
// may substitute a recording writer.
template <typename T, typename Compare, typename WriterFactory>
merge_report parallel_merge_engine(std::span<const T> a, std::span<const T> b,
                                   std::size_t workers, Compare less, merge_options opts,
                                   bool synced, WriterFactory writer_for) {
    check_total_length(a.size(), b.size());
    if (workers == 0)
        throw std::invalid_argument("merge_parallel: worker count must be positive");
    const std::size_t total = a.size() + b.size();

    std::vector<worker_slot> slots(workers);
    std::vector<co_ranks> start_ranks;  // synced mode: filled before the barrier
    if (synced)
        start_ranks.resize(workers);

    auto merge_block = [&](std::size_t r, co_ranks begin, co_ranks end, rank_t lo, rank_t hi,
                           auto kernel_less) {
        slots[r].block_size = hi - lo;
        merge_into(a.subspan(begin.a, end.a - begin.a), b.subspan(begin.b, end.b - begin.b),
                   writer_for(r, lo, hi), kernel_less);
    };

    auto both_ends_worker = [&](std::size_t r, auto kernel_less) {
        const rank_t lo = partition_output(total, workers, r);
        const rank_t hi = partition_output(total, workers, r + 1);
        const co_ranks begin = co_rank_impl(lo, a, b, less, &slots[r].begin_stats);
        const co_ranks end = co_rank_impl(hi, a, b, less, &slots[r].end_stats);
        merge_block(r, begin, end, lo, hi, kernel_less);
    };

    auto synced_phase1 = [&](std::size_t r) {
        const rank_t lo = partition_output(total, workers, r);
        start_ranks[r] = co_rank_impl(lo, a, b, less, &slots[r].begin_stats);
    };
    auto synced_phase2 = [&](std::size_t r, auto kernel_less) {
        const rank_t lo = partition_output(total, workers, r);
        const rank_t hi = partition_output(total, workers, r + 1);
        const co_ranks end =
            r + 1 < workers ? start_ranks[r + 1] : co_ranks{a.size(), b.size()};
        merge_block(r, start_ranks[r], end, lo, hi, kernel_less);
    };

    auto run = [&](auto kernel_less_for) {
        if (!synced) {
            run_workers(workers, opts.mode,
                        [&](std::size_t r) { both_ends_worker(r, kernel_less_for(r)); });
        } else if (opts.mode == run_mode::simulated || workers == 1) {
            for (std::size_t r = 0; r < workers; ++r)
                synced_phase1(r);
            for (std::size_t r = 0; r < workers; ++r)
                synced_phase2(r, kernel_less_for(r));
        } else {
            std::barrier gate(static_cast<std::ptrdiff_t>(workers));
            std::atomic<bool> poisoned{false};
            run_workers(workers, opts.mode, [&](std::size_t r) {
                // every worker must reach the barrier exactly once, and
                // nobody may merge against a neighbor's co-ranks that were
                // never computed
                try {
                    synced_phase1(r);
                } catch (...) {
                    poisoned.store(true, std::memory_order_relaxed);
                    gate.arrive_and_wait();
                    throw;
                }
                gate.arrive_and_wait();
                if (poisoned.load(std::memory_order_relaxed))
                    return;
                synced_phase2(r, kernel_less_for(r));
            });
        }
    };

    const auto t0 = std::chrono::steady_clock::now();
    if (opts.count_comparisons) {
        run([&](std::size_t r) {
            return counting_compare<Compare>{less, &slots[r].kernel_comparisons};
        });
    } else {
        run([&](std::size_t) { return less; });
    }
    const auto t1 = std::chrono::steady_clock::now();

    merge_report report;
    report.m = a.size();
    report.n = b.size();
    report.workers = workers;
    report.wall_ns = static_cast<std::uint64_t>(
        std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count());
    report.block_sizes.reserve(workers);
    report.corank_iterations.reserve(synced ? workers : 2 * workers);
    std::uint64_t total_comparisons = 0;
    for (const worker_slot& slot : slots) {
        report.block_sizes.push_back(slot.block_size);
        report.corank_iterations.push_back(slot.begin_stats.iterations);
        if (!synced)
            report.corank_iterations.push_back(slot.end_stats.iterations);
        total_comparisons += slot.begin_stats.comparisons + slot.end_stats.comparisons +
                             slot.kernel_comparisons;
    }
    if (opts.count_comparisons)
        report.comparisons = total_comparisons;
    return report;
}

template <typename T, typename Out>
std::span<T> checked_output(std::span<const T> a, std::span<const T> b, Out& out,
                            const char* who) {
    const std::span<T> ov(std::ranges::data(out), std::ranges::size(out));
    check_total_length(a.size(), b.size());
    if (ov.size() != a.size() + b.size())
        throw std::invalid_argument(std::string(who) + ": output length must equal |a| + |b|");
    const std::span<const T> oc(ov.data(), ov.size());
    if (ranges_overlap(a, oc) || ranges_overlap(b, oc))
        throw std::invalid_argument(std::string(who) + ": output must not alias an input");
    return ov;
}

}  // namespace detail

/// Merges sorted `a` and `b` stably into `out` using `workers` independent
/// workers, each of which co-ranks both of its block boundaries itself.
/// The result is identical to stable_merge(a, b, out) for every worker
/// count. Throws std::invalid_argument on length mismatch, aliasing or
/// workers == 0.
template <detail::key_range A, detail::key_range B, std::ranges::contiguous_range Out,
          typename Compare = std::less<>>
    requires std::same_as<std::ranges::range_value_t<A>, std::ranges::range_value_t<Out>> &&
             std::same_as<std::ranges::range_value_t<B>, std::ranges::range_value_t<Out>>
merge_report merge_parallel(const A& a, const B& b, Out&& out, std::size_t workers,
                            Compare less = {}, merge_options opts = {}) {
    using T = std::ranges::range_value_t<Out>;
    const auto av = detail::as_span(a);
    const auto bv = detail::as_span(b);
    const std::span<T> ov = detail::checked_output<T>(av, bv, out, "merge_parallel");
    return detail::parallel_merge_engine(
        av, bv, workers, less, opts, /*synced=*/false,
        [ov](std::size_t, rank_t lo, rank_t) { return ov.data() + lo; });
}

/// Variant with one co_rank call per worker: workers compute their start
/// co-ranks, pass one barrier, and read their end co-ranks from the next
/// worker (the last worker ends at (m, n)). Output is identical to
/// merge_parallel.
template <detail::key_range A, detail::key_range B, std::ranges::contiguous_range Out,
          typename Compare = std::less<>>
    requires std::same_as<std::ranges::range_value_t<A>, std::ranges::range_value_t<Out>> &&
             std::same_as<std::ranges::range_value_t<B>, std::ranges::range_value_t<Out>>
merge_report merge_parallel_synced(const A& a, const B& b, Out&& out, std::size_t workers,
                                   Compare less = {}, merge_options opts = {}) {
    using T = std::ranges::range_value_t<Out>;
    const auto av = detail::as_span(a);
    const auto bv = detail::as_span(b);
    const std::span<T> ov = detail::checked_output<T>(av, bv, out, "merge_parallel_synced");
    return detail::parallel_merge_engine(
        av, bv, workers, less, opts, /*synced=*/true,
        [ov](std::size_t, rank_t lo, rank_t) { return ov.data() + lo; });
}

}  // namespace comerge
