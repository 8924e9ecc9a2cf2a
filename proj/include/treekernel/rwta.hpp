#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "treekernel/alphabet.hpp"
#include "treekernel/series.hpp"
#include "treekernel/tree.hpp"

namespace treekernel {

/// Dense state index, stable for the automaton's lifetime.
using StateId = std::uint32_t;
inline constexpr StateId kNoState = 0xFFFFFFFFu;

/// Sorted, duplicate-free set of states.
using StateSet = std::vector<StateId>;

struct Transition {
    StateId target = kNoState;
    Symbol symbol;
    std::vector<StateId> children;

    friend bool operator==(const Transition&, const Transition&) = default;
    friend auto operator<=>(const Transition&, const Transition&) = default;
};

/// Root-weighted tree automaton: states carry weights, transitions are a
/// set of (target, symbol, child tuple) entries. May be non-deterministic
/// and cyclic; evaluation of a finite tree is a single bottom-up pass.
class Rwta {
public:
    std::size_t state_count() const { return nu_.size(); }
    std::uint64_t nu(StateId q) const;
    std::span<const Transition> transitions() const { return transitions_; }
    const RankedAlphabet& alphabet() const { return alphabet_; }

    /// Exact union semantics over the Cartesian product of child sets.
    StateSet delta_step(const Symbol& symbol, std::span<const StateSet> child_sets) const;

    StateSet evaluate(const Tree& t) const;

    /// Sum of root weights over evaluate(t); 0 on the empty set.
    std::uint64_t weight(const Tree& t) const;
    std::uint64_t weight_of(const StateSet& states) const;

    bool down_language_membership(StateId q, const Tree& t) const;

    /// `state <id> nu=<w>` lines then `trans <target> <name>/<k> <c...>`
    /// lines, deterministically ordered.
    std::string debug_text() const;

private:
    friend class RwtaBuilder;
    friend TreeSeries series_support_up_to(const Rwta&, std::uint32_t, std::uint64_t);

    RankedAlphabet alphabet_;
    std::vector<std::uint64_t> nu_;
    std::vector<Transition> transitions_;
    std::unordered_map<Symbol, std::vector<std::uint32_t>, SymbolHash> by_symbol_;
};

/// Single-owner construction front end. States are created with dense ids
/// in insertion order; symbolic labels are optional aliases.
class RwtaBuilder {
public:
    StateId add_state(std::uint64_t root_weight);
    StateId add_state(const std::string& label, std::uint64_t root_weight);
    StateId state(const std::string& label) const;

    void add_transition(StateId target, Symbol symbol, std::vector<StateId> children);
    void add_transition(const std::string& target_label, const std::string& symbol_name,
                        const std::vector<std::string>& child_labels);

    Rwta build();

private:
    std::vector<std::uint64_t> nu_;
    std::vector<Transition> transitions_;
    std::unordered_map<std::string, StateId> labels_;
};

/// Restriction of the realized series to trees of size <= max_size, found by
/// enumerating every tree over the automaton's alphabet up to that size.
/// Throws BudgetExceededError once the enumeration has produced more than
/// node_budget tree nodes in total.
TreeSeries series_support_up_to(const Rwta& a, std::uint32_t max_size,
                                std::uint64_t node_budget = 10'000'000);

}  // namespace treekernel
