#include "treekernel/st_automaton.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_set>

#include "treekernel/checked.hpp"
#include "treekernel/errors.hpp"

namespace treekernel {

std::size_t StAutomaton::KeyHash::mix(std::uint32_t sym, std::span<const StateId> kids) {
    std::size_t h = 1469598103934665603ull;
    auto step = [&h](std::uint64_t v) {
        h ^= v;
        h *= 1099511628211ull;
    };
    step(sym);
    for (StateId k : kids) step(k + 1);
    return h;
}

bool StAutomaton::KeyEq::eq(std::uint32_t s1, std::span<const StateId> k1, std::uint32_t s2,
                            std::span<const StateId> k2) {
    return s1 == s2 && k1.size() == k2.size() &&
           std::equal(k1.begin(), k1.end(), k2.begin());
}

StAutomaton::StAutomaton(Mode mode, RankedAlphabet declared_alphabet)
    : mode_(mode), declared_(std::move(declared_alphabet)) {}

StAutomaton::StAutomaton(const StAutomaton& other)
    : mode_(other.mode_),
      symbols_(other.symbols_),
      symbol_ids_(other.symbol_ids_),
      alphabet_(other.alphabet_),
      declared_(other.declared_),
      index_(other.index_),
      nu_(other.nu_),
      marked_(other.marked_) {
    rebuild_inverse();
}

StAutomaton& StAutomaton::operator=(const StAutomaton& other) {
    if (this != &other) {
        StAutomaton copy(other);
        *this = std::move(copy);
    }
    return *this;
}

void StAutomaton::rebuild_inverse() {
    inverse_.assign(nu_.size(), nullptr);
    for (const auto& [key, q] : index_) inverse_[q] = &key;
}

std::uint32_t StAutomaton::intern_symbol(const Symbol& s) {
    auto it = symbol_ids_.find(s);
    if (it != symbol_ids_.end()) return it->second;
    std::uint32_t id = static_cast<std::uint32_t>(symbols_.size());
    symbols_.push_back(s);
    symbol_ids_.emplace(s, id);
    alphabet_.add(s);
    return id;
}

std::optional<std::uint32_t> StAutomaton::find_symbol(const Symbol& s) const {
    auto it = symbol_ids_.find(s);
    if (it == symbol_ids_.end()) return std::nullopt;
    return it->second;
}

std::optional<StateId> StAutomaton::find_state(std::uint32_t sym,
                                               std::span<const StateId> kids) const {
    auto it = index_.find(TransKeyView{sym, kids});
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

StateId StAutomaton::intern_state(std::uint32_t sym, std::span<const StateId> kids,
                                  std::uint64_t add_nu) {
    auto it = index_.find(TransKeyView{sym, kids});
    if (it != index_.end()) {
        nu_[it->second] = checked_add(nu_[it->second], add_nu);
        return it->second;
    }
    StateId q = static_cast<StateId>(nu_.size());
    auto [pos, inserted] =
        index_.emplace(TransKey{sym, std::vector<StateId>(kids.begin(), kids.end())}, q);
    inverse_.push_back(&pos->first);
    nu_.push_back(add_nu);
    return q;
}

StateId StAutomaton::insert_tree(const Tree& t) {
    struct Frame {
        Tree node;
        std::uint32_t next_child;
    };
    std::vector<Frame> frames;
    std::vector<StateId> values;
    frames.push_back({t, 0});
    while (!frames.empty()) {
        Frame& f = frames.back();
        if (f.next_child < f.node.arity()) {
            Tree c = f.node.child(f.next_child);
            ++f.next_child;
            frames.push_back({std::move(c), 0});
            continue;
        }
        std::uint32_t k = f.node.arity();
        std::span<const StateId> kids(values.data() + values.size() - k, k);
        StateId q = intern_state(intern_symbol(f.node.symbol()), kids, 1);
        values.resize(values.size() - k);
        values.push_back(q);
        frames.pop_back();
    }
    return values.back();
}

StAutomaton StAutomaton::from_tree(const Tree& t, Mode mode) {
    StAutomaton a(mode);
    StateId root = a.insert_tree(canonicalize(t, mode));
    a.marked_.push_back(root);
    return a;
}

StAutomaton StAutomaton::from_language(const TreeLanguage& language) {
    StAutomaton acc = language.alphabet_declared()
                          ? StAutomaton(language.mode(), language.alphabet())
                          : StAutomaton(language.mode());
    for (const Tree& t : language.trees()) {
        StAutomaton single = from_tree(t, language.mode());
        union_into(acc, single);
    }
    return acc;
}

void StAutomaton::check_state(StateId q) const {
    if (q >= nu_.size()) {
        throw UnknownStateError("state " + std::to_string(q) + " does not exist");
    }
}

std::uint64_t StAutomaton::nu(StateId q) const {
    check_state(q);
    return nu_[q];
}

const Symbol& StAutomaton::symbol_of(StateId q) const {
    check_state(q);
    return symbols_[inverse_[q]->sym];
}

std::optional<StateId> StAutomaton::lookup(const Symbol& symbol,
                                           std::span<const StateId> children) const {
    if (children.size() != symbol.arity) {
        throw ArityError("lookup of '" + symbol.name + "'/" + std::to_string(symbol.arity) +
                         " with " + std::to_string(children.size()) + " children");
    }
    for (StateId c : children) check_state(c);
    auto sym = find_symbol(symbol);
    if (!sym) return std::nullopt;
    return find_state(*sym, children);
}

StAutomaton::InverseTransition StAutomaton::delta_inverse(StateId q) const {
    check_state(q);
    const TransKey& key = *inverse_[q];
    return InverseTransition{symbols_[key.sym], key.kids};
}

std::vector<Tree> StAutomaton::state_trees() const {
    std::vector<Tree> trees;
    trees.reserve(nu_.size());
    for (StateId q = 0; q < nu_.size(); ++q) {
        const TransKey& key = *inverse_[q];
        std::vector<Tree> kids;
        kids.reserve(key.kids.size());
        for (StateId c : key.kids) kids.push_back(trees[c]);
        trees.push_back(Tree::make(symbols_[key.sym].name, std::move(kids)));
    }
    return trees;
}

Tree StAutomaton::state_to_tree(StateId q) const {
    check_state(q);
    // Children always have smaller ids; building the prefix suffices.
    std::vector<Tree> trees;
    trees.reserve(q + 1);
    for (StateId s = 0; s <= q; ++s) {
        const TransKey& key = *inverse_[s];
        std::vector<Tree> kids;
        kids.reserve(key.kids.size());
        for (StateId c : key.kids) kids.push_back(trees[c]);
        trees.push_back(Tree::make(symbols_[key.sym].name, std::move(kids)));
    }
    return trees.back();
}

std::optional<StateId> StAutomaton::run(const Tree& t) const {
    struct Frame {
        Tree node;
        std::uint32_t next_child;
    };
    std::vector<Frame> frames;
    std::vector<StateId> values;
    frames.push_back({t, 0});
    while (!frames.empty()) {
        Frame& f = frames.back();
        if (f.next_child < f.node.arity()) {
            Tree c = f.node.child(f.next_child);
            ++f.next_child;
            frames.push_back({std::move(c), 0});
            continue;
        }
        auto sym = find_symbol(f.node.symbol());
        if (!sym) return std::nullopt;
        std::uint32_t k = f.node.arity();
        std::span<const StateId> kids(values.data() + values.size() - k, k);
        auto q = find_state(*sym, kids);
        if (!q) return std::nullopt;
        values.resize(values.size() - k);
        values.push_back(*q);
        frames.pop_back();
    }
    return values.back();
}

Rwta StAutomaton::to_rwta() const {
    RwtaBuilder builder;
    for (StateId q = 0; q < nu_.size(); ++q) builder.add_state(nu_[q]);
    for (StateId q = 0; q < nu_.size(); ++q) {
        const TransKey& key = *inverse_[q];
        builder.add_transition(q, symbols_[key.sym],
                               std::vector<StateId>(key.kids.begin(), key.kids.end()));
    }
    return builder.build();
}

std::string StAutomaton::debug_text() const {
    std::ostringstream out;
    out << to_rwta().debug_text();
    for (StateId m : marked_) out << "marked " << m << "\n";
    return out.str();
}

void union_into(StAutomaton& target, const StAutomaton& source) {
    if (target.mode_ != source.mode_) {
        throw ModeMismatchError("union requires both automata in the same mode");
    }
    if (target.declared_ && source.declared_ && *target.declared_ != *source.declared_) {
        throw AlphabetMismatchError("union of automata over different declared alphabets");
    }
    std::vector<std::uint32_t> sym_map(source.symbols_.size());
    for (std::uint32_t s = 0; s < source.symbols_.size(); ++s) {
        sym_map[s] = target.intern_symbol(source.symbols_[s]);
    }
    std::vector<StateId> phi(source.state_count(), kNoState);
    std::vector<StateId> kids;
    for (StateId q = 0; q < source.state_count(); ++q) {
        const auto& key = *source.inverse_[q];
        kids.clear();
        for (StateId c : key.kids) kids.push_back(phi[c]);
        phi[q] = target.intern_state(sym_map[key.sym], kids, source.nu_[q]);
    }
    for (StateId m : source.marked_) target.marked_.push_back(phi[m]);
    std::sort(target.marked_.begin(), target.marked_.end());
    target.marked_.erase(std::unique(target.marked_.begin(), target.marked_.end()),
                         target.marked_.end());
}

void check_st_invariants(const StAutomaton& a, std::optional<std::uint64_t> language_total_size,
                         bool deep) {
    const std::size_t n = a.state_count();
    if (language_total_size && n > *language_total_size) {
        throw Error("state count " + std::to_string(n) + " exceeds the language size " +
                    std::to_string(*language_total_size));
    }
    for (StateId q = 0; q < n; ++q) {
        auto inv = a.delta_inverse(q);
        // Homogeneity: the defining transition carries the state's symbol.
        if (!(a.symbol_of(q) == inv.symbol)) {
            throw Error("state " + std::to_string(q) + " breaks homogeneity");
        }
        if (inv.children.size() != inv.symbol.arity) {
            throw Error("state " + std::to_string(q) + " has a mis-ranked transition");
        }
        // Topological order: children precede their parent.
        for (StateId c : inv.children) {
            if (c >= q) {
                throw Error("state " + std::to_string(q) + " breaks the topological order");
            }
        }
        // Determinism plus index/inverse bijectivity.
        auto found = a.lookup(inv.symbol, inv.children);
        if (!found || *found != q) {
            throw Error("transition index disagrees with delta-inverse at state " +
                        std::to_string(q));
        }
    }
    for (StateId m : a.marked()) {
        if (m >= n) throw Error("marked state " + std::to_string(m) + " does not exist");
    }
    if (deep) {
        std::vector<Tree> trees = a.state_trees();
        std::unordered_set<Tree, TreeHash> distinct(trees.begin(), trees.end());
        if (distinct.size() != trees.size()) {
            throw Error("two states share the same down language");
        }
        for (StateId q = 0; q < n; ++q) {
            auto back = a.run(trees[q]);
            if (!back || *back != q) {
                throw Error("state " + std::to_string(q) + " does not round-trip through run()");
            }
        }
    }
}

TreeSeries realized_series(const StAutomaton& a) {
    TreeSeries series;
    std::vector<Tree> trees = a.state_trees();
    for (StateId q = 0; q < a.state_count(); ++q) series.add(trees[q], a.nu(q));
    return series;
}

}  // namespace treekernel
