#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "treekernel/language.hpp"
#include "treekernel/st_automaton.hpp"
#include "treekernel/tree.hpp"

namespace treekernel {

enum class Algorithm { Automata, Oracle, Moschitti };

std::string_view algorithm_name(Algorithm a);
Algorithm algorithm_from_name(std::string_view name);

struct MatchedState {
    StateId state_x;
    StateId state_y;
    std::uint64_t weight;  // nu_X(state_x) * nu_Y(state_y)
};

struct ProductResult {
    std::vector<MatchedState> matched;
    std::uint64_t kernel_value = 0;
    std::uint64_t states_explored = 0;
};

/// Accessible part of the Hadamard product of two ST automata: one matched
/// pair per common subtree, weights multiplied. Walks the smaller
/// automaton's states in topological order against the larger one's
/// transition index; neither input is mutated. The bottom sink is never
/// materialized (it carries no root weight).
ProductResult hadamard_accessible(const StAutomaton& ax, const StAutomaton& ay);

std::uint64_t subtree_kernel(const StAutomaton& ax, const StAutomaton& ay);
std::uint64_t subtree_kernel(const TreeLanguage& x, const TreeLanguage& y);

/// Pairwise baseline: counts node pairs whose rooted subtrees are identical,
/// via dynamic programming over production-matched node pairs processed in
/// post order (no recursion). Worst case O(|t1| * |t2|).
std::uint64_t moschitti_kernel(const Tree& t1, const Tree& t2);

struct GramMatrix {
    std::vector<std::string> labels;
    std::vector<std::vector<std::uint64_t>> values;
};

/// Symmetric kernel matrix over the items; only the upper triangle is
/// computed. Moschitti requires every item to be a singleton language.
GramMatrix gram_matrix(std::span<const TreeLanguage> items, Algorithm algorithm,
                       std::span<const std::string> labels = {});

/// Header row of labels, then one `label,v1,...,vn` row per item.
void write_gram_csv(std::ostream& out, const GramMatrix& gram);

}  // namespace treekernel
