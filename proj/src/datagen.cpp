#include "treekernel/datagen.hpp"

#include <cmath>
#include <limits>

#include "treekernel/errors.hpp"

namespace treekernel {

std::vector<std::string> DatasetConfig::metadata() const {
    std::vector<std::string> lines;
    lines.push_back("config_id=" + id);
    lines.push_back("F=" + std::to_string(alphabet_size) + " A=" + std::to_string(max_arity) +
                    " D=" + std::to_string(max_depth) + " cardinal=" +
                    std::to_string(set_cardinal));
    lines.push_back("seed=" + std::to_string(seed) + " mode=" + std::string(mode_name(mode)) +
                    " max_nodes_per_tree=" + std::to_string(max_nodes_per_tree));
    lines.push_back("generator=uniform-arity-then-name recursion, distinct canonical trees");
    return lines;
}

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
    if (n <= 1) return 0;
    // 2^64 mod n; values below it are rejected so the rest splits evenly.
    std::uint64_t rej = (std::numeric_limits<std::uint64_t>::max() % n + 1) % n;
    std::uint64_t x;
    do {
        x = rng();
    } while (x < rej);
    return (x - rej) % n;
}

std::string dataset_symbol_name(std::uint32_t index) {
    if (index < 26) return std::string(1, static_cast<char>('a' + index));
    return "s" + std::to_string(index);
}

RankedAlphabet dataset_alphabet(std::uint32_t alphabet_size, std::uint32_t max_arity) {
    RankedAlphabet alphabet;
    for (std::uint32_t i = 0; i < alphabet_size; ++i) {
        std::string name = dataset_symbol_name(i);
        for (std::uint32_t k = 0; k <= max_arity; ++k) alphabet.add(Symbol{name, k});
    }
    return alphabet;
}

namespace {

// The caller has already reserved one budget node for this subtree's root;
// committing to an arity reserves one node per child up front, so the total
// node count never exceeds the cap.
Tree draw_tree(std::mt19937_64& rng, const DatasetConfig& cfg, std::uint32_t depth,
               std::uint64_t& nodes_left) {
    std::uint32_t arity = 0;
    if (depth < cfg.max_depth) {
        arity = static_cast<std::uint32_t>(uniform_below(rng, cfg.max_arity + 1));
        if (arity > nodes_left) arity = static_cast<std::uint32_t>(nodes_left);
    }
    nodes_left -= arity;
    std::string name =
        dataset_symbol_name(static_cast<std::uint32_t>(uniform_below(rng, cfg.alphabet_size)));
    if (arity == 0) return Tree::leaf(std::move(name));
    std::vector<Tree> children;
    children.reserve(arity);
    for (std::uint32_t i = 0; i < arity; ++i) {
        children.push_back(draw_tree(rng, cfg, depth + 1, nodes_left));
    }
    return Tree::make(std::move(name), std::move(children));
}

}  // namespace

Tree random_config_tree(std::mt19937_64& rng, const DatasetConfig& cfg) {
    std::uint64_t nodes_left = cfg.max_nodes_per_tree - 1;
    return draw_tree(rng, cfg, 1, nodes_left);
}

TreeLanguage generate_language(const DatasetConfig& cfg) {
    if (cfg.alphabet_size < 1) throw Error("alphabet_size must be at least 1");
    if (cfg.max_depth < 1) throw Error("max_depth must be at least 1");
    if (cfg.set_cardinal < 1) throw Error("set_cardinal must be at least 1");
    if (cfg.max_nodes_per_tree < 1) throw Error("max_nodes_per_tree must be at least 1");

    std::mt19937_64 rng(cfg.seed);
    std::unordered_set<Tree, TreeHash> seen;
    std::vector<Tree> trees;
    trees.reserve(cfg.set_cardinal);
    const std::uint64_t max_attempts = 100 + 50ull * cfg.set_cardinal;
    std::uint64_t attempts = 0;
    while (trees.size() < cfg.set_cardinal) {
        if (++attempts > max_attempts) {
            throw ExhaustedRetriesError(
                "could not draw " + std::to_string(cfg.set_cardinal) +
                " distinct trees after " + std::to_string(max_attempts) + " attempts");
        }
        Tree t = canonicalize(random_config_tree(rng, cfg), cfg.mode);
        if (seen.insert(t).second) trees.push_back(std::move(t));
    }
    return TreeLanguage::from_trees(std::move(trees), cfg.mode,
                                    dataset_alphabet(cfg.alphabet_size, cfg.max_arity));
}

namespace {

std::vector<std::uint32_t> evenly_spaced(std::uint32_t lo, std::uint32_t hi, std::uint32_t n) {
    std::vector<std::uint32_t> out;
    out.reserve(n);
    for (std::uint32_t k = 0; k < n; ++k) {
        double v = lo + static_cast<double>(k) * (hi - lo) / (n - 1.0);
        out.push_back(static_cast<std::uint32_t>(std::llround(v)));
    }
    return out;
}

}  // namespace

std::vector<DatasetConfig> expand_grid(std::string_view grid_name, std::uint64_t base_seed,
                                       Mode mode) {
    struct Point {
        std::uint32_t arity;
        std::uint32_t depth;
    };
    std::vector<Point> points;
    if (grid_name == "DS1") {
        for (std::uint32_t d : evenly_spaced(5, 100, 5)) points.push_back({5, d});
    } else if (grid_name == "DS2") {
        for (std::uint32_t a : evenly_spaced(5, 20, 4)) points.push_back({a, 5});
    } else if (grid_name == "DS3") {
        auto arities = evenly_spaced(2, 15, 7);
        auto depths = evenly_spaced(5, 100, 7);
        for (std::uint32_t k = 0; k < 7; ++k) points.push_back({arities[k], depths[k]});
    } else {
        throw Error("unknown grid '" + std::string(grid_name) + "' (expected DS1, DS2 or DS3)");
    }
    std::vector<DatasetConfig> configs;
    configs.reserve(points.size());
    for (std::size_t k = 0; k < points.size(); ++k) {
        DatasetConfig cfg;
        cfg.alphabet_size = 2;
        cfg.max_arity = points[k].arity;
        cfg.max_depth = points[k].depth;
        cfg.set_cardinal = 100;
        cfg.seed = base_seed + k;
        cfg.mode = mode;
        cfg.id = std::string(grid_name) + "-" + std::to_string(k) + "_F" +
                 std::to_string(cfg.alphabet_size) + "_A" + std::to_string(cfg.max_arity) +
                 "_D" + std::to_string(cfg.max_depth);
        configs.push_back(std::move(cfg));
    }
    return configs;
}

std::vector<std::string> known_grids() { return {"DS1", "DS2", "DS3"}; }

}  // namespace treekernel
