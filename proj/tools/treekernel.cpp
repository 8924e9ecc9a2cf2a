#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "treekernel/bench.hpp"
#include "treekernel/datagen.hpp"
#include "treekernel/errors.hpp"
#include "treekernel/kernel.hpp"
#include "treekernel/language.hpp"
#include "treekernel/series.hpp"
#include "treekernel/st_automaton.hpp"

namespace fs = std::filesystem;
using namespace treekernel;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;

struct Options {
    std::string grid;
    std::string data_dir;
    std::string out;
    std::string scaling_out;
    std::string mode = "ordered";
    std::string algorithm = "automata";
    std::string algorithms = "automata,oracle";
    std::vector<std::string> files;
    std::string items = "trees";
    std::uint64_t seed = 42;
    std::uint32_t cardinal = 100;
    std::uint64_t max_nodes = 20'000;
    int threads = 1;
    int repeats = 3;
    int warmup = 1;
    bool verify = false;
};

std::vector<std::string> split_list(const std::string& csv) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= csv.size()) {
        std::size_t comma = csv.find(',', start);
        if (comma == std::string::npos) comma = csv.size();
        if (comma > start) out.push_back(csv.substr(start, comma - start));
        start = comma + 1;
    }
    return out;
}

std::vector<fs::path> dataset_files(const std::string& dir) {
    std::vector<fs::path> files;
    if (!fs::is_directory(dir)) throw IoError("'" + dir + "' is not a directory");
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".trees") {
            files.push_back(entry.path());
        }
    }
    std::sort(files.begin(), files.end());
    if (files.empty()) throw IoError("no .trees files in '" + dir + "'");
    return files;
}

int cmd_generate(const Options& opt) {
    Mode mode = mode_from_name(opt.mode);
    auto configs = expand_grid(opt.grid, opt.seed, mode);
    fs::create_directories(opt.out);
    for (DatasetConfig cfg : configs) {
        cfg.set_cardinal = opt.cardinal;
        cfg.max_nodes_per_tree = opt.max_nodes;
        TreeLanguage lang = generate_language(cfg);
        fs::path path = fs::path(opt.out) / (cfg.id + ".trees");
        std::vector<std::string> header = cfg.metadata();
        save_language(path.string(), lang, header);
        std::cerr << "wrote " << path.string() << " (" << lang.size() << " trees, total size "
                  << lang.total_size() << ")\n";
    }
    return kExitOk;
}

int cmd_kernel(const Options& opt) {
    Mode mode = mode_from_name(opt.mode);
    if (opt.files.size() != 2) throw Error("kernel expects exactly two dataset files");
    TreeLanguage x = load_language(opt.files[0], mode);
    TreeLanguage y = load_language(opt.files[1], mode);

    if (!opt.verify) {
        std::uint64_t value = 0;
        switch (algorithm_from_name(opt.algorithm)) {
            case Algorithm::Automata: value = subtree_kernel(x, y); break;
            case Algorithm::Oracle: value = brute_force_kernel(x, y); break;
            case Algorithm::Moschitti:
                if (x.size() != 1 || y.size() != 1) {
                    throw AlgorithmUnsupportedError(
                        "the moschitti baseline requires single-tree files");
                }
                value = moschitti_kernel(x.trees()[0], y.trees()[0]);
                break;
        }
        std::cout << value << "\n";
        return kExitOk;
    }

    std::map<std::string, std::uint64_t> values;
    values["automata"] = subtree_kernel(x, y);
    values["oracle"] = brute_force_kernel(x, y);
    if (x.size() == 1 && y.size() == 1) {
        values["moschitti"] = moschitti_kernel(x.trees()[0], y.trees()[0]);
    }
    bool agree = true;
    for (const auto& [name, v] : values) agree &= v == values.begin()->second;
    if (!agree) {
        std::cerr << "verification failed:\n";
        for (const auto& [name, v] : values) std::cerr << "  " << name << " = " << v << "\n";
        return kExitVerifyFailed;
    }
    std::cout << values.begin()->second << "\n";
    return kExitOk;
}

int cmd_bench(const Options& opt) {
    Mode mode = mode_from_name(opt.mode);
    BenchOptions bench;
    bench.algorithms.clear();
    for (const std::string& name : split_list(opt.algorithms)) {
        bench.algorithms.push_back(algorithm_from_name(name));
    }
    if (bench.algorithms.empty()) throw Error("no algorithms requested");
    bench.threads = opt.threads;
    bench.repeats = opt.repeats;
    bench.warmup = opt.warmup;

    if (!opt.scaling_out.empty()) {
        auto points = scaling_series(6, 14);
        std::ofstream scaling(opt.scaling_out);
        if (!scaling) throw IoError("cannot write '" + opt.scaling_out + "'");
        write_scaling_csv(scaling, points);
        std::cerr << "scaling series slope " << log_log_slope(points) << "\n";
        if (opt.grid.empty() && opt.data_dir.empty()) return kExitOk;
    }
    if (opt.grid.empty() == opt.data_dir.empty()) {
        throw Error("bench needs exactly one of --grid or --data");
    }

    std::ofstream file_out;
    std::ostream* out = &std::cout;
    if (!opt.out.empty()) {
        file_out.open(opt.out);
        if (!file_out) throw IoError("cannot write '" + opt.out + "'");
        out = &file_out;
    }
    *out << kBenchCsvHeader << "\n";
    out->flush();

    auto run_one = [&](const std::string& config_id, const TreeLanguage& lang) {
        std::cerr << "bench " << config_id << " (" << lang.size() << " trees, total size "
                  << lang.total_size() << ")\n";
        auto records = bench_language(config_id, lang, bench);
        bool agree = true;
        for (const BenchRecord& r : records) {
            append_bench_csv(*out, r);
            agree &= r.checksum == records.front().checksum;
        }
        out->flush();
        return agree;
    };

    bool all_agree = true;
    if (!opt.grid.empty()) {
        for (DatasetConfig cfg : expand_grid(opt.grid, opt.seed, mode)) {
            cfg.set_cardinal = opt.cardinal;
            cfg.max_nodes_per_tree = opt.max_nodes;
            all_agree &= run_one(cfg.id, generate_language(cfg));
        }
    } else {
        for (const fs::path& path : dataset_files(opt.data_dir)) {
            all_agree &= run_one(path.stem().string(), load_language(path.string(), mode));
        }
    }
    if (!all_agree) {
        std::cerr << "checksum mismatch across algorithms\n";
        return kExitVerifyFailed;
    }
    return kExitOk;
}

int cmd_gram(const Options& opt) {
    Mode mode = mode_from_name(opt.mode);
    if (opt.files.empty()) throw Error("gram expects at least one dataset file");

    std::vector<TreeLanguage> items;
    std::vector<std::string> labels;
    if (opt.files.size() == 1 && opt.items == "trees") {
        TreeLanguage lang = load_language(opt.files[0], mode);
        for (std::size_t i = 0; i < lang.size(); ++i) {
            items.push_back(TreeLanguage::from_trees({lang.trees()[i]}, mode));
            labels.push_back("t" + std::to_string(i));
        }
    } else {
        for (const std::string& file : opt.files) {
            items.push_back(load_language(file, mode));
            labels.push_back(fs::path(file).stem().string());
        }
    }
    GramMatrix gram = gram_matrix(items, algorithm_from_name(opt.algorithm), labels);

    std::ofstream file_out;
    std::ostream* out = &std::cout;
    if (!opt.out.empty()) {
        file_out.open(opt.out);
        if (!file_out) throw IoError("cannot write '" + opt.out + "'");
        out = &file_out;
    }
    write_gram_csv(*out, gram);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"SubTree kernels over finite tree languages via root-weighted tree automata"};
    app.require_subcommand(1);
    Options opt;

    auto add_mode = [&opt](CLI::App* cmd) {
        cmd->add_option("--mode", opt.mode, "Tree comparison mode")
            ->check(CLI::IsMember({"ordered", "unordered"}));
    };

    CLI::App* generate = app.add_subcommand("generate", "Write benchmark dataset files");
    generate->add_option("--grid", opt.grid, "Grid name: DS1, DS2 or DS3")->required();
    generate->add_option("--seed", opt.seed, "Base RNG seed");
    generate->add_option("--out", opt.out, "Output directory")->required();
    generate->add_option("--cardinal", opt.cardinal, "Trees per config");
    generate->add_option("--max-nodes", opt.max_nodes, "Per-tree node cap");
    add_mode(generate);

    CLI::App* kernel = app.add_subcommand("kernel", "Kernel value of two tree files");
    kernel->add_option("files", opt.files, "Two dataset files")->expected(2);
    kernel->add_option("--algorithm", opt.algorithm, "automata, oracle or moschitti")
        ->check(CLI::IsMember({"automata", "oracle", "moschitti"}));
    kernel->add_flag("--verify", opt.verify, "Run all applicable algorithms and compare");
    add_mode(kernel);

    CLI::App* bench = app.add_subcommand("bench", "All-pairs benchmark over a grid or directory");
    bench->add_option("--grid", opt.grid, "Grid name: DS1, DS2 or DS3");
    bench->add_option("--data", opt.data_dir, "Directory of .trees files");
    bench->add_option("--out", opt.out, "CSV output file (default stdout)");
    bench->add_option("--algorithms", opt.algorithms, "Comma-separated algorithm list");
    bench->add_option("--seed", opt.seed, "Base RNG seed for --grid");
    bench->add_option("--cardinal", opt.cardinal, "Trees per config for --grid");
    bench->add_option("--max-nodes", opt.max_nodes, "Per-tree node cap for --grid");
    bench->add_option("--threads", opt.threads, "Worker threads for pair evaluation");
    bench->add_option("--repeats", opt.repeats, "Timed batches per algorithm");
    bench->add_option("--warmup", opt.warmup, "Untimed batches per algorithm");
    bench->add_option("--scaling", opt.scaling_out, "Also write a size/time scaling CSV");
    add_mode(bench);

    CLI::App* gram = app.add_subcommand("gram", "Gram matrix CSV");
    gram->add_option("files", opt.files, "Dataset file(s)")->expected(-1);
    gram->add_option("--algorithm", opt.algorithm, "automata, oracle or moschitti")
        ->check(CLI::IsMember({"automata", "oracle", "moschitti"}));
    gram->add_option("--items", opt.items, "One file: 'trees' makes each tree an item")
        ->check(CLI::IsMember({"trees", "files"}));
    gram->add_option("--out", opt.out, "CSV output file (default stdout)");
    add_mode(gram);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (generate->parsed()) return cmd_generate(opt);
        if (kernel->parsed()) return cmd_kernel(opt);
        if (bench->parsed()) return cmd_bench(opt);
        if (gram->parsed()) return cmd_gram(opt);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
