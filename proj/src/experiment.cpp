// SPDX-License-Identifier: Apache-2.0
#include "comerge/experiment.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "comerge/oracle.hpp"

namespace comerge {

namespace {

double median_ns(std::vector<std::uint64_t> samples) {
    std::sort(samples.begin(), samples.end());
    const std::size_t h = samples.size() / 2;
    if (samples.size() % 2 == 1)
        return static_cast<double>(samples[h]);
    return (static_cast<double>(samples[h - 1]) + static_cast<double>(samples[h])) / 2.0;
}

}  // namespace

bool verify_merge_output(std::span<const key_t> a, std::span<const key_t> b,
                         std::span<const key_t> out, std::size_t verify_cap,
                         std::string* diagnostic) {
    auto fail = [&](const std::string& why) {
        if (diagnostic != nullptr)
            *diagnostic = why;
        return false;
    };
    if (out.size() != a.size() + b.size())
        return fail("length mismatch: expected " + std::to_string(a.size() + b.size()) +
                    " keys, found " + std::to_string(out.size()));
    if (out.size() <= verify_cap) {
        const std::vector<key_t> expect = oracle_merge_keys(a, b);
        for (std::size_t t = 0; t < out.size(); ++t)
            if (out[t] != expect[t])
                return fail("key mismatch at index " + std::to_string(t));
        return true;
    }
    if (!std::ranges::is_sorted(out))
        return fail("output is not nondecreasing");
    if (multiset_checksum(out) != multiset_checksum(a) + multiset_checksum(b))
        return fail("multiset checksum mismatch");
    return true;
}

std::vector<merge_report> run_experiment(const experiment_config& config) {
    if (config.repetitions < 1)
        throw std::invalid_argument("run_experiment: repetitions must be at least 1");
    if (config.p_list.empty())
        throw std::invalid_argument("run_experiment: p_list must not be empty");

    const auto [a, b] = generate(config.dist, config.m, config.n);
    const std::size_t total = a.size() + b.size();
    const bool full_check = total <= config.verify_cap;

    // Tagged ground truth, shared by all runs of this experiment.
    std::vector<tagged<key_t>> oracle_tagged;
    std::vector<tagged<key_t>> tagged_a;
    std::vector<tagged<key_t>> tagged_b;
    if (full_check) {
        oracle_tagged = oracle_merge_tagged(a, b);
        tagged_a = tag_range(a, origin::from_a);
        tagged_b = tag_range(b, origin::from_b);
    }

    std::vector<merge_report> reports;
    reports.reserve(config.p_list.size() * config.repetitions);
    std::vector<key_t> out(total);
    std::vector<tagged<key_t>> tagged_out(full_check ? total : 0);

    for (const std::size_t p : config.p_list) {
        // One instrumented, untimed run per p: comparison counts are
        // deterministic for fixed inputs, so they are not re-measured.
        merge_options counted{config.mode, true};
        const merge_report instrumented = merge_parallel(a, b, out, p, std::less<>{}, counted);

        bool stable_ok = true;
        std::string stability_note;
        if (full_check) {
            merge_parallel(tagged_a, tagged_b, tagged_out, p, tagged_key_less{},
                           merge_options{config.mode, false});
            if (tagged_out != oracle_tagged) {
                stable_ok = false;
                stability_note = "tagged run deviates from the stable-merge oracle";
            }
        }

        for (std::size_t rep = 0; rep < config.repetitions; ++rep) {
            merge_report report =
                merge_parallel(a, b, out, p, std::less<>{}, merge_options{config.mode, false});
            report.comparisons = instrumented.comparisons;
            std::string why;
            const bool ok =
                verify_merge_output(a, b, out, config.verify_cap, &why) && stable_ok;
            report.verified = ok;
            if (!ok)
                report.note = why.empty() ? stability_note : why;
            reports.push_back(std::move(report));
        }
    }

    // Speedups from median wall times, relative to the p = 1 batch.
    const auto p1 = std::find(config.p_list.begin(), config.p_list.end(), std::size_t{1});
    if (p1 != config.p_list.end()) {
        const std::size_t reps = config.repetitions;
        auto batch_median = [&](std::size_t batch) {
            std::vector<std::uint64_t> walls;
            walls.reserve(reps);
            for (std::size_t rep = 0; rep < reps; ++rep)
                walls.push_back(reports[batch * reps + rep].wall_ns);
            return median_ns(std::move(walls));
        };
        const double base = batch_median(static_cast<std::size_t>(p1 - config.p_list.begin()));
        for (std::size_t batch = 0; batch < config.p_list.size(); ++batch) {
            const double own = batch_median(batch);
            const double speedup =
                config.p_list[batch] == 1 ? 1.0 : (own > 0.0 ? base / own : 0.0);
            for (std::size_t rep = 0; rep < reps; ++rep)
                reports[batch * reps + rep].speedup_vs_p1 = speedup;
        }
    }
    return reports;
}

std::string csv_header() {
    return "dist,seed,m,n,p,rep,wall_ns,comparisons,max_block,min_block,verified,speedup";
}

void write_csv(std::ostream& out, const experiment_config& config,
               std::span<const merge_report> reports) {
    out << csv_header() << '\n';
    const std::string dist = to_string(config.dist);
    std::size_t row = 0;
    for (const merge_report& report : reports) {
        const std::size_t rep = row % config.repetitions;
        const auto [min_block, max_block] =
            std::ranges::minmax_element(report.block_sizes);
        out << dist << ',' << config.dist.seed << ',' << report.m << ',' << report.n << ','
            << report.workers << ',' << rep << ',' << report.wall_ns << ','
            << (report.comparisons ? std::to_string(*report.comparisons) : std::string()) << ','
            << *max_block << ',' << *min_block << ','
            << (report.verified.value_or(false) ? 1 : 0) << ',';
        if (report.speedup_vs_p1) {
            std::ostringstream ratio;
            ratio << *report.speedup_vs_p1;
            out << ratio.str();
        }
        out << '\n';
        ++row;
    }
}

}  // namespace comerge
