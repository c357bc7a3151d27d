// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <limits>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "comerge/experiment.hpp"
#include "comerge/io.hpp"
#include "comerge/oracle.hpp"
#include "comerge/parallel.hpp"

// Exit codes: 0 success, 1 verification failure, 2 usage or contract
// error, 3 I/O error.

namespace {

constexpr int k_exit_ok = 0;
constexpr int k_exit_verify = 1;
constexpr int k_exit_usage = 2;
constexpr int k_exit_io = 3;

std::vector<std::size_t> parse_p_list(const std::string& text) {
    std::vector<std::size_t> list;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t comma = text.find(',', pos);
        if (comma == std::string::npos)
            comma = text.size();
        std::size_t value = 0;
        const char* first = text.data() + pos;
        const char* last = text.data() + comma;
        const auto [end, ec] = std::from_chars(first, last, value);
        if (ec != std::errc{} || end != last || value == 0)
            throw std::invalid_argument("--p-list: expected comma-separated positive integers");
        list.push_back(value);
        pos = comma + 1;
    }
    return list;
}

std::size_t default_threads() {
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

struct corank_args {
    std::string file_a;
    std::string file_b;
    std::uint64_t rank = 0;
    bool no_validate = false;
};

struct merge_args {
    std::string file_a;
    std::string file_b;
    std::string file_out;
    std::size_t threads = 0;
    bool no_validate = false;
    std::string format = "auto";
};

struct bench_args {
    std::string dist = "uniform";
    std::size_t m = 1'000'000;
    std::size_t n = 1'000'000;
    std::string p_list = "1,2,4,8";
    std::size_t reps = 3;
    std::uint64_t seed = 1;
    std::string csv = "-";
    std::size_t verify_cap = std::size_t{1} << 20;
    bool simulated = false;
};

struct verify_args {
    std::string file_a;
    std::string file_b;
    std::string merged;
    bool no_validate = false;
};

int cmd_corank(const corank_args& args) {
    const comerge::key_file a = comerge::read_key_file(args.file_a, !args.no_validate);
    const comerge::key_file b = comerge::read_key_file(args.file_b, !args.no_validate);
    comerge::co_rank_stats stats;
    const comerge::co_ranks split =
        comerge::co_rank(args.rank, a.keys, b.keys, std::less<>{}, &stats);
    std::cout << split.a << ' ' << split.b << ' ' << stats.iterations << ' '
              << stats.comparisons << '\n';
    return k_exit_ok;
}

int cmd_merge(const merge_args& args) {
    const comerge::key_file a = comerge::read_key_file(args.file_a, !args.no_validate);
    const comerge::key_file b = comerge::read_key_file(args.file_b, !args.no_validate);
    const std::size_t workers = args.threads == 0 ? default_threads() : args.threads;

    std::vector<comerge::key_t> out(a.keys.size() + b.keys.size());
    const comerge::merge_report report =
        comerge::merge_parallel(a.keys, b.keys, out, workers);

    comerge::file_format format = a.format;
    if (args.format == "text")
        format = comerge::file_format::text;
    else if (args.format == "binary")
        format = comerge::file_format::binary;
    else if (args.format != "auto")
        throw std::invalid_argument("--format: expected text, binary or auto");
    comerge::write_key_file(args.file_out, out, format);

    const auto [min_block, max_block] = std::ranges::minmax_element(report.block_sizes);
    std::uint32_t max_iterations = 0;
    for (const std::uint32_t it : report.corank_iterations)
        max_iterations = std::max(max_iterations, it);
    std::cout << "merged " << report.m << " + " << report.n << " keys with " << report.workers
              << " workers in " << static_cast<double>(report.wall_ns) / 1e6 << " ms\n"
              << "block sizes " << *min_block << ".." << *max_block
              << ", co-rank iterations max " << max_iterations << '\n';
    return k_exit_ok;
}

int cmd_bench(const bench_args& args) {
    comerge::experiment_config config;
    config.dist = comerge::parse_distribution(args.dist);
    config.dist.seed = args.seed;
    config.m = args.m;
    config.n = args.n;
    config.p_list = parse_p_list(args.p_list);
    config.repetitions = args.reps;
    config.verify_cap = args.verify_cap;
    config.mode = args.simulated ? comerge::run_mode::simulated : comerge::run_mode::threads;

    const std::vector<comerge::merge_report> reports = comerge::run_experiment(config);
    if (args.csv == "-") {
        comerge::write_csv(std::cout, config, reports);
    } else {
        std::ofstream file(args.csv, std::ios::trunc);
        if (!file)
            throw comerge::io_error(args.csv + ": cannot open for writing");
        comerge::write_csv(file, config, reports);
        if (!file.flush())
            throw comerge::io_error(args.csv + ": write failed");
    }

    // One summary line per worker count: median primary, min secondary.
    for (std::size_t batch = 0; batch < config.p_list.size(); ++batch) {
        std::vector<std::uint64_t> walls;
        for (std::size_t rep = 0; rep < config.repetitions; ++rep)
            walls.push_back(reports[batch * config.repetitions + rep].wall_ns);
        std::sort(walls.begin(), walls.end());
        const std::uint64_t median = walls[walls.size() / 2];
        std::cerr << "p=" << config.p_list[batch] << ": median "
                  << static_cast<double>(median) / 1e6 << " ms, min "
                  << static_cast<double>(walls.front()) / 1e6 << " ms";
        if (const auto& speedup = reports[batch * config.repetitions].speedup_vs_p1)
            std::cerr << ", speedup " << *speedup;
        std::cerr << '\n';
    }

    bool all_verified = true;
    for (const comerge::merge_report& report : reports) {
        if (!report.verified.value_or(false)) {
            all_verified = false;
            std::cerr << "unverified run at p=" << report.workers << ": " << report.note
                      << '\n';
        }
    }
    return all_verified ? k_exit_ok : k_exit_verify;
}

int cmd_verify(const verify_args& args) {
    const comerge::key_file a = comerge::read_key_file(args.file_a, !args.no_validate);
    const comerge::key_file b = comerge::read_key_file(args.file_b, !args.no_validate);
    // The merged file's content is what is being judged, so it is never
    // pre-validated here.
    const comerge::key_file merged = comerge::read_key_file(args.merged, false);

    std::string why;
    const bool ok = comerge::verify_merge_output(a.keys, b.keys, merged.keys,
                                                 std::numeric_limits<std::size_t>::max(), &why);
    if (!ok) {
        std::cerr << "verification failed: " << why << '\n';
        return k_exit_verify;
    }
    std::cout << "ok: " << merged.keys.size() << " keys are the stable merge\n";
    return k_exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"co-ranked stable parallel merge toolkit"};
    app.require_subcommand(1);

    corank_args corank;
    CLI::App* corank_cmd =
        app.add_subcommand("corank", "split an output rank into input prefix lengths");
    corank_cmd->add_option("fileA", corank.file_a, "sorted key file A")->required();
    corank_cmd->add_option("fileB", corank.file_b, "sorted key file B")->required();
    corank_cmd->add_option("i", corank.rank, "output rank, 0..m+n")->required();
    corank_cmd->add_flag("--no-validate", corank.no_validate, "skip input sortedness check");

    merge_args merge;
    CLI::App* merge_cmd = app.add_subcommand("merge", "merge two sorted key files stably");
    merge_cmd->add_option("fileA", merge.file_a, "sorted key file A")->required();
    merge_cmd->add_option("fileB", merge.file_b, "sorted key file B")->required();
    merge_cmd->add_option("out", merge.file_out, "output key file")->required();
    merge_cmd->add_option("--threads", merge.threads, "worker count (default: hardware)");
    merge_cmd->add_flag("--no-validate", merge.no_validate, "skip input sortedness check");
    merge_cmd->add_option("--format", merge.format, "output format: text|binary|auto");

    bench_args bench;
    CLI::App* bench_cmd = app.add_subcommand("bench", "generate inputs, merge, verify, time");
    bench_cmd->add_option("--dist", bench.dist,
                          "input shape: uniform|all-equal|few-distinct[:d]|disjoint|"
                          "interleaved|organ-pipe|runs[:len]");
    bench_cmd->add_option("--m", bench.m, "length of array A");
    bench_cmd->add_option("--n", bench.n, "length of array B");
    bench_cmd->add_option("--p-list", bench.p_list, "worker counts, comma separated");
    bench_cmd->add_option("--reps", bench.reps, "timed repetitions per worker count");
    bench_cmd->add_option("--seed", bench.seed, "generator seed");
    bench_cmd->add_option("--csv", bench.csv, "CSV output path, '-' for stdout");
    bench_cmd->add_option("--verify-cap", bench.verify_cap,
                          "full oracle verification up to this m+n");
    bench_cmd->add_flag("--simulated", bench.simulated,
                        "run workers sequentially on one thread");

    verify_args verify;
    CLI::App* verify_cmd =
        app.add_subcommand("verify", "check that a file is the stable merge of two inputs");
    verify_cmd->add_option("fileA", verify.file_a, "sorted key file A")->required();
    verify_cmd->add_option("fileB", verify.file_b, "sorted key file B")->required();
    verify_cmd->add_option("merged", verify.merged, "candidate merged file")->required();
    verify_cmd->add_flag("--no-validate", verify.no_validate, "skip input sortedness check");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? k_exit_ok : k_exit_usage;
    }

    try {
        if (corank_cmd->parsed())
            return cmd_corank(corank);
        if (merge_cmd->parsed())
            return cmd_merge(merge);
        if (bench_cmd->parsed())
            return cmd_bench(bench);
        if (verify_cmd->parsed())
            return cmd_verify(verify);
    } catch (const comerge::io_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return k_exit_io;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return k_exit_usage;
    }
    return k_exit_usage;
}
