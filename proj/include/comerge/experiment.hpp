// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "comerge/generate.hpp"
#include "comerge/parallel.hpp"

namespace comerge {

struct experiment_config {
    distribution dist;
    std::size_t m = 0;
    std::size_t n = 0;
    std::vector<std::size_t> p_list;
    std::size_t repetitions = 1;
    // Full oracle verification (key sequence plus provenance-tagged run)
    // up to this m+n; above it only sortedness and the multiset checksum
    // are checked.
    std::size_t verify_cap = std::size_t{1} << 20;
    run_mode mode = run_mode::threads;
};

/// Checks a merge output against its inputs: exact oracle comparison up
/// to `verify_cap` total elements, sortedness + multiset checksum above.
/// On failure returns false and, when given, fills `diagnostic`.
bool verify_merge_output(std::span<const key_t> a, std::span<const key_t> b,
                         std::span<const key_t> out, std::size_t verify_cap,
                         std::string* diagnostic = nullptr);

/// Generates inputs once, then for every p in p_list runs merge_parallel
/// `repetitions` times. Every run is verified; one extra instrumented run
/// per p supplies the comparison count (deterministic for fixed inputs,
/// so it is not re-measured per repetition). Under the verification cap a
/// provenance-tagged parallel run is also compared against the tagged
/// oracle. Reports come back p-major, repetition-minor; if p_list
/// contains 1, each report carries median-based speedup_vs_p1.
std::vector<merge_report> run_experiment(const experiment_config& config);

/// CSV schema: one row per (p, repetition) in report order.
std::string csv_header();
void write_csv(std::ostream& out, const experiment_config& config,
               std::span<const merge_report> reports);

}  // namespace comerge
