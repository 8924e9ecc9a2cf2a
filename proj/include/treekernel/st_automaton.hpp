#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "treekernel/language.hpp"
#include "treekernel/rwta.hpp"
#include "treekernel/series.hpp"
#include "treekernel/tree.hpp"

namespace treekernel {

struct ProductResult;

/// Deterministic, homogeneous root-weighted automaton whose states biject
/// with the distinct subtrees of a language and whose root weights are
/// occurrence counts.
///
/// States are created bottom-up with dense ids, so id order is already a
/// topological order of the transition list: every child of a state's
/// defining transition has a smaller id.
class StAutomaton {
public:
    explicit StAutomaton(Mode mode) : mode_(mode) {}
    StAutomaton(Mode mode, RankedAlphabet declared_alphabet);

    // inverse_ points into index_ nodes; copying rebuilds it, moving keeps
    // the nodes (and so the pointers) alive.
    StAutomaton(const StAutomaton& other);
    StAutomaton& operator=(const StAutomaton& other);
    StAutomaton(StAutomaton&&) = default;
    StAutomaton& operator=(StAutomaton&&) = default;
    ~StAutomaton() = default;

    /// Linear-time direct construction; t is canonicalized for `mode`.
    static StAutomaton from_tree(const Tree& t, Mode mode = Mode::Ordered);

    /// Folds from_tree/union_into over the members.
    static StAutomaton from_language(const TreeLanguage& language);

    Mode mode() const { return mode_; }
    const RankedAlphabet& alphabet() const { return alphabet_; }
    bool alphabet_declared() const { return declared_.has_value(); }

    std::size_t state_count() const { return nu_.size(); }
    std::uint64_t nu(StateId q) const;
    const Symbol& symbol_of(StateId q) const;

    /// The unique target of (symbol, children), if any. O(arity) expected.
    std::optional<StateId> lookup(const Symbol& symbol,
                                  std::span<const StateId> children) const;

    struct InverseTransition {
        const Symbol& symbol;
        std::span<const StateId> children;
    };
    /// The unique defining transition of q.
    InverseTransition delta_inverse(StateId q) const;

    /// The unique tree with run(tree) == q.
    Tree state_to_tree(StateId q) const;
    /// state_to_tree for every state, sharing structure across states.
    std::vector<Tree> state_trees() const;

    /// Deterministic bottom-up run; empty when some node has no transition.
    std::optional<StateId> run(const Tree& t) const;

    /// Q_m, sorted. Metadata only; the kernel never reads it.
    std::span<const StateId> marked() const { return marked_; }

    /// Copy out the underlying general automaton.
    Rwta to_rwta() const;

    /// Rwta debug text plus `marked <id>` lines.
    std::string debug_text() const;

    /// Merges `source` into `target`: states keyed by common subtrees, root
    /// weights summed, marked sets united. Walks source states in id
    /// (topological) order; O(arity) index work per source state.
    friend void union_into(StAutomaton& target, const StAutomaton& source);

    friend ProductResult hadamard_accessible(const StAutomaton& ax, const StAutomaton& ay);

private:
    struct TransKey {
        std::uint32_t sym;
        std::vector<StateId> kids;
    };
    struct TransKeyView {
        std::uint32_t sym;
        std::span<const StateId> kids;
    };
    struct KeyHash {
        using is_transparent = void;
        static std::size_t mix(std::uint32_t sym, std::span<const StateId> kids);
        std::size_t operator()(const TransKey& k) const { return mix(k.sym, k.kids); }
        std::size_t operator()(const TransKeyView& v) const { return mix(v.sym, v.kids); }
    };
    struct KeyEq {
        using is_transparent = void;
        static bool eq(std::uint32_t s1, std::span<const StateId> k1, std::uint32_t s2,
                       std::span<const StateId> k2);
        bool operator()(const TransKey& a, const TransKey& b) const {
            return eq(a.sym, a.kids, b.sym, b.kids);
        }
        bool operator()(const TransKeyView& a, const TransKey& b) const {
            return eq(a.sym, a.kids, b.sym, b.kids);
        }
        bool operator()(const TransKey& a, const TransKeyView& b) const {
            return eq(a.sym, a.kids, b.sym, b.kids);
        }
    };
    using Index = std::unordered_map<TransKey, StateId, KeyHash, KeyEq>;

    void rebuild_inverse();
    std::uint32_t intern_symbol(const Symbol& s);
    std::optional<std::uint32_t> find_symbol(const Symbol& s) const;
    std::optional<StateId> find_state(std::uint32_t sym, std::span<const StateId> kids) const;
    /// Lookup-or-create plus root-weight accumulation.
    StateId intern_state(std::uint32_t sym, std::span<const StateId> kids, std::uint64_t add_nu);
    /// Post-order insertion of every node occurrence; returns the root state.
    StateId insert_tree(const Tree& t);
    void check_state(StateId q) const;

    Mode mode_;
    std::vector<Symbol> symbols_;
    std::unordered_map<Symbol, std::uint32_t, SymbolHash> symbol_ids_;
    RankedAlphabet alphabet_;
    std::optional<RankedAlphabet> declared_;
    Index index_;
    std::vector<const TransKey*> inverse_;  // per state; keys are map-stable
    std::vector<std::uint64_t> nu_;
    std::vector<StateId> marked_;
};

void union_into(StAutomaton& target, const StAutomaton& source);

/// Verifies determinism, homogeneity, topological order of the transition
/// list and the index/inverse bijection; with `deep`, additionally checks
/// that state trees are pairwise distinct and round-trip through run().
/// `language_total_size`, when given, bounds the state count.
void check_st_invariants(const StAutomaton& a,
                         std::optional<std::uint64_t> language_total_size = std::nullopt,
                         bool deep = false);

/// The series realized by an ST automaton: state trees weighted by nu.
TreeSeries realized_series(const StAutomaton& a);

}  // namespace treekernel
