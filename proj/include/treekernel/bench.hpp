#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "treekernel/datagen.hpp"
#include "treekernel/kernel.hpp"
#include "treekernel/language.hpp"

namespace treekernel {

/// One CSV row: a (config, algorithm) pair measured over all tree pairs.
struct BenchRecord {
    std::string config_id;
    std::string algorithm;
    std::uint64_t pair_count = 0;
    double avg_time_s = 0.0;
    double avg_product_states = 0.0;
    double avg_automaton_states = 0.0;
    double avg_tree_size = 0.0;
    double reduction_ratio = 0.0;  // avg_automaton_states / avg_tree_size
    std::uint64_t checksum = 0;    // FNV-1a over the kernel values in pair order
};

struct BenchOptions {
    std::vector<Algorithm> algorithms{Algorithm::Automata, Algorithm::Oracle};
    int threads = 1;
    int repeats = 3;  // timed batches; the median is reported
    int warmup = 1;   // untimed batches
};

/// All-pairs kernel evaluation over the members of one language (each member
/// treated as a singleton language). Automata and series are built once and
/// reused across pairs.
std::vector<BenchRecord> bench_language(const std::string& config_id,
                                        const TreeLanguage& language,
                                        const BenchOptions& options);

extern const char* const kBenchCsvHeader;
void append_bench_csv(std::ostream& out, const BenchRecord& record);

/// Self-similar binary tree of the given level count: level 0 is a leaf,
/// level k doubles level k-1 under a binary root. Size is 2^(k+1) - 1.
Tree self_similar_tree(std::uint32_t levels);

struct ScalingPoint {
    std::uint64_t tree_size = 0;
    double seconds = 0.0;  // one automaton build plus one self-kernel
};

/// Build+kernel timings over self-similar trees with sizes 2^min_exp-1 up
/// to 2^max_exp-1; each point is averaged over enough repetitions to
/// accumulate min_sample_seconds.
std::vector<ScalingPoint> scaling_series(std::uint32_t min_exp, std::uint32_t max_exp,
                                         double min_sample_seconds = 0.02);

/// Least-squares slope of log(seconds) against log(size).
double log_log_slope(const std::vector<ScalingPoint>& points);

void write_scaling_csv(std::ostream& out, const std::vector<ScalingPoint>& points);

}  // namespace treekernel
