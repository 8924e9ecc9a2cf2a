#include "treekernel/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <functional>
#include <ostream>
#include <thread>

#include "treekernel/checked.hpp"
#include "treekernel/errors.hpp"
#include "treekernel/series.hpp"
#include "treekernel/st_automaton.hpp"

namespace treekernel {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

struct PairOutcome {
    std::uint64_t value = 0;
    std::uint64_t product_states = 0;
};

void run_pairs(std::size_t pair_count, int threads,
               const std::function<PairOutcome(std::size_t)>& one_pair,
               std::vector<PairOutcome>& results) {
    results.resize(pair_count);
    if (threads <= 1) {
        for (std::size_t p = 0; p < pair_count; ++p) results[p] = one_pair(p);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int w = 0; w < threads; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                std::size_t p = next.fetch_add(1);
                if (p >= pair_count) return;
                results[p] = one_pair(p);
            }
        });
    }
    for (auto& t : pool) t.join();
}

std::uint64_t fnv1a_checksum(const std::vector<PairOutcome>& results) {
    std::uint64_t h = 1469598103934665603ull;
    for (const PairOutcome& r : results) {
        std::uint64_t v = r.value;
        for (int byte = 0; byte < 8; ++byte) {
            h ^= (v >> (8 * byte)) & 0xFF;
            h *= 1099511628211ull;
        }
    }
    return h;
}

}  // namespace

const char* const kBenchCsvHeader =
    "config_id,algorithm,pair_count,avg_time_s,avg_product_states,avg_automaton_states,"
    "avg_tree_size,reduction_ratio,checksum";

void append_bench_csv(std::ostream& out, const BenchRecord& r) {
    out << r.config_id << "," << r.algorithm << "," << r.pair_count << "," << r.avg_time_s
        << "," << r.avg_product_states << "," << r.avg_automaton_states << ","
        << r.avg_tree_size << "," << r.reduction_ratio << "," << std::hex << r.checksum
        << std::dec << "\n";
}

std::vector<BenchRecord> bench_language(const std::string& config_id,
                                        const TreeLanguage& language,
                                        const BenchOptions& options) {
    const auto trees = language.trees();
    const std::size_t n = trees.size();
    if (n < 2) throw Error("bench needs at least two trees per config");

    std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
    pairs.reserve(n * (n - 1) / 2);
    for (std::uint32_t i = 0; i < n; ++i) {
        for (std::uint32_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
    }

    double avg_tree_size = 0.0;
    for (const Tree& t : trees) avg_tree_size += static_cast<double>(t.size());
    avg_tree_size /= static_cast<double>(n);

    // Build every per-tree automaton once; all algorithms reuse them or
    // their series counterparts across the 4950 pairs.
    std::vector<StAutomaton> automata;
    automata.reserve(n);
    for (const Tree& t : trees) automata.push_back(StAutomaton::from_tree(t, language.mode()));
    double avg_automaton_states = 0.0;
    for (const StAutomaton& a : automata) {
        avg_automaton_states += static_cast<double>(a.state_count());
    }
    avg_automaton_states /= static_cast<double>(n);

    bool needs_series = false;
    for (Algorithm alg : options.algorithms) needs_series |= alg == Algorithm::Oracle;
    std::vector<TreeSeries> series;
    if (needs_series) {
        series.reserve(n);
        for (const Tree& t : trees) series.push_back(subtree_series(t));
    }

    std::vector<BenchRecord> records;
    for (Algorithm alg : options.algorithms) {
        std::function<PairOutcome(std::size_t)> one_pair;
        switch (alg) {
            case Algorithm::Automata:
                one_pair = [&](std::size_t p) {
                    auto [i, j] = pairs[p];
                    ProductResult pr = hadamard_accessible(automata[i], automata[j]);
                    return PairOutcome{pr.kernel_value, pr.matched.size()};
                };
                break;
            case Algorithm::Oracle:
                one_pair = [&](std::size_t p) {
                    auto [i, j] = pairs[p];
                    SeriesKernel k = series_kernel(series[i], series[j]);
                    return PairOutcome{k.value, k.common_support};
                };
                break;
            case Algorithm::Moschitti:
                one_pair = [&](std::size_t p) {
                    auto [i, j] = pairs[p];
                    return PairOutcome{moschitti_kernel(trees[i], trees[j]), 0};
                };
                break;
        }

        std::vector<PairOutcome> results;
        for (int w = 0; w < options.warmup; ++w) {
            run_pairs(pairs.size(), options.threads, one_pair, results);
        }
        std::vector<double> batch_times;
        for (int r = 0; r < std::max(1, options.repeats); ++r) {
            auto start = Clock::now();
            run_pairs(pairs.size(), options.threads, one_pair, results);
            batch_times.push_back(seconds_since(start));
        }
        std::sort(batch_times.begin(), batch_times.end());
        double median = batch_times[batch_times.size() / 2];

        BenchRecord rec;
        rec.config_id = config_id;
        rec.algorithm = std::string(algorithm_name(alg));
        rec.pair_count = pairs.size();
        rec.avg_time_s = median / static_cast<double>(pairs.size());
        double product_states = 0.0;
        for (const PairOutcome& r : results) {
            product_states += static_cast<double>(r.product_states);
        }
        rec.avg_product_states = product_states / static_cast<double>(pairs.size());
        rec.avg_automaton_states = avg_automaton_states;
        rec.avg_tree_size = avg_tree_size;
        rec.reduction_ratio = avg_automaton_states / avg_tree_size;
        rec.checksum = fnv1a_checksum(results);
        records.push_back(std::move(rec));
    }
    return records;
}

Tree self_similar_tree(std::uint32_t levels) {
    Tree t = Tree::leaf("a");
    for (std::uint32_t k = 0; k < levels; ++k) t = Tree::make("f", {t, t});
    return t;
}

std::vector<ScalingPoint> scaling_series(std::uint32_t min_exp, std::uint32_t max_exp,
                                         double min_sample_seconds) {
    std::vector<ScalingPoint> points;
    for (std::uint32_t e = min_exp; e <= max_exp; ++e) {
        Tree t = self_similar_tree(e - 1);  // size 2^e - 1
        // Warm the caches once, then repeat until the sample is long enough.
        {
            StAutomaton a = StAutomaton::from_tree(t);
            (void)subtree_kernel(a, a);
        }
        std::uint64_t reps = 0;
        auto start = Clock::now();
        double elapsed = 0.0;
        do {
            StAutomaton a = StAutomaton::from_tree(t);
            volatile std::uint64_t sink = subtree_kernel(a, a);
            (void)sink;
            ++reps;
            elapsed = seconds_since(start);
        } while (elapsed < min_sample_seconds);
        points.push_back(ScalingPoint{t.size(), elapsed / static_cast<double>(reps)});
    }
    return points;
}

double log_log_slope(const std::vector<ScalingPoint>& points) {
    if (points.size() < 2) throw Error("slope needs at least two points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(points.size());
    for (const ScalingPoint& p : points) {
        double x = std::log(static_cast<double>(p.tree_size));
        double y = std::log(p.seconds);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

void write_scaling_csv(std::ostream& out, const std::vector<ScalingPoint>& points) {
    out << "tree_size,build_plus_kernel_s\n";
    for (const ScalingPoint& p : points) out << p.tree_size << "," << p.seconds << "\n";
}

}  // namespace treekernel
