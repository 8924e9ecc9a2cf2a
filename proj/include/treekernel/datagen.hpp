#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "treekernel/language.hpp"
#include "treekernel/tree.hpp"

namespace treekernel {

/// One experiment grid point. alphabet_size names, each usable at every
/// arity 0..max_arity; max_nodes_per_tree is a hard per-tree safety cap
/// (drawn arities are clamped once the budget runs out) recorded in the
/// dataset metadata.
struct DatasetConfig {
    std::uint32_t alphabet_size = 2;   // |F|
    std::uint32_t max_arity = 2;       // A
    std::uint32_t max_depth = 5;       // D
    std::uint32_t set_cardinal = 100;
    std::uint64_t seed = 0;
    Mode mode = Mode::Ordered;
    std::uint64_t max_nodes_per_tree = 20'000;
    std::string id;

    std::vector<std::string> metadata() const;
};

/// Unbiased draw from [0, n); deterministic across platforms.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n);

std::string dataset_symbol_name(std::uint32_t index);
RankedAlphabet dataset_alphabet(std::uint32_t alphabet_size, std::uint32_t max_arity);

/// Draw one tree: at depth d < D the arity is uniform over 0..A (forced 0 at
/// depth D or when the node budget runs out), the name uniform over the
/// alphabet names; children are drawn recursively.
Tree random_config_tree(std::mt19937_64& rng, const DatasetConfig& cfg);

/// set_cardinal distinct canonical trees, deterministic under (cfg, seed).
/// Duplicate draws are redrawn up to a retry budget.
TreeLanguage generate_language(const DatasetConfig& cfg);

/// The benchmark grids: DS1 varies the depth, DS2 the arity, DS3 both.
/// Per-config seeds are base_seed + config index.
std::vector<DatasetConfig> expand_grid(std::string_view grid_name, std::uint64_t base_seed,
                                       Mode mode);

std::vector<std::string> known_grids();

}  // namespace treekernel
