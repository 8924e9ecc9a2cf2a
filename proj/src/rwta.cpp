#include "treekernel/rwta.hpp"

#include <algorithm>
#include <sstream>

#include "treekernel/checked.hpp"
#include "treekernel/errors.hpp"

namespace treekernel {

std::uint64_t Rwta::nu(StateId q) const {
    if (q >= nu_.size()) throw UnknownStateError("state " + std::to_string(q) + " does not exist");
    return nu_[q];
}

StateSet Rwta::delta_step(const Symbol& symbol, std::span<const StateSet> child_sets) const {
    if (!alphabet_.contains(symbol)) {
        throw UnknownSymbolError("symbol '" + symbol.name + "'/" + std::to_string(symbol.arity) +
                                 " is not in the automaton's alphabet");
    }
    if (child_sets.size() != symbol.arity) {
        throw Error("delta_step: expected " + std::to_string(symbol.arity) + " child sets");
    }
    StateSet out;
    auto it = by_symbol_.find(symbol);
    if (it == by_symbol_.end()) return out;
    for (std::uint32_t idx : it->second) {
        const Transition& tr = transitions_[idx];
        bool all = true;
        for (std::uint32_t i = 0; i < symbol.arity; ++i) {
            if (!std::binary_search(child_sets[i].begin(), child_sets[i].end(), tr.children[i])) {
                all = false;
                break;
            }
        }
        if (all) out.push_back(tr.target);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

StateSet Rwta::evaluate(const Tree& t) const {
    struct Frame {
        Tree node;
        std::uint32_t next_child;
    };
    std::vector<Frame> frames;
    std::vector<StateSet> values;
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
        std::span<const StateSet> kids(values.data() + values.size() - k, k);
        StateSet result = delta_step(f.node.symbol(), kids);
        values.resize(values.size() - k);
        values.push_back(std::move(result));
        frames.pop_back();
    }
    return std::move(values.back());
}

std::uint64_t Rwta::weight_of(const StateSet& states) const {
    std::uint64_t sum = 0;
    for (StateId q : states) sum = checked_add(sum, nu(q));
    return sum;
}

std::uint64_t Rwta::weight(const Tree& t) const {
    return weight_of(evaluate(t));
}

bool Rwta::down_language_membership(StateId q, const Tree& t) const {
    if (q >= nu_.size()) throw UnknownStateError("state " + std::to_string(q) + " does not exist");
    StateSet states = evaluate(t);
    return std::binary_search(states.begin(), states.end(), q);
}

std::string Rwta::debug_text() const {
    std::ostringstream out;
    for (std::size_t q = 0; q < nu_.size(); ++q) {
        out << "state " << q << " nu=" << nu_[q] << "\n";
    }
    std::vector<const Transition*> sorted;
    sorted.reserve(transitions_.size());
    for (const Transition& tr : transitions_) sorted.push_back(&tr);
    std::sort(sorted.begin(), sorted.end(),
              [](const Transition* a, const Transition* b) { return *a < *b; });
    for (const Transition* tr : sorted) {
        out << "trans " << tr->target << " " << tr->symbol.name << "/" << tr->symbol.arity;
        for (StateId c : tr->children) out << " " << c;
        out << "\n";
    }
    return out.str();
}

StateId RwtaBuilder::add_state(std::uint64_t root_weight) {
    nu_.push_back(root_weight);
    return static_cast<StateId>(nu_.size() - 1);
}

StateId RwtaBuilder::add_state(const std::string& label, std::uint64_t root_weight) {
    if (labels_.contains(label)) throw Error("duplicate state label '" + label + "'");
    StateId q = add_state(root_weight);
    labels_.emplace(label, q);
    return q;
}

StateId RwtaBuilder::state(const std::string& label) const {
    auto it = labels_.find(label);
    if (it == labels_.end()) throw UnknownStateError("no state labeled '" + label + "'");
    return it->second;
}

void RwtaBuilder::add_transition(StateId target, Symbol symbol, std::vector<StateId> children) {
    if (target >= nu_.size()) {
        throw UnknownStateError("transition target " + std::to_string(target) + " does not exist");
    }
    for (StateId c : children) {
        if (c >= nu_.size()) {
            throw UnknownStateError("transition child " + std::to_string(c) + " does not exist");
        }
    }
    if (children.size() != symbol.arity) {
        throw ArityError("transition for '" + symbol.name + "'/" + std::to_string(symbol.arity) +
                         " has " + std::to_string(children.size()) + " children");
    }
    transitions_.push_back(Transition{target, std::move(symbol), std::move(children)});
}

void RwtaBuilder::add_transition(const std::string& target_label, const std::string& symbol_name,
                                 const std::vector<std::string>& child_labels) {
    std::vector<StateId> children;
    children.reserve(child_labels.size());
    for (const std::string& l : child_labels) children.push_back(state(l));
    add_transition(state(target_label),
                   Symbol{symbol_name, static_cast<std::uint32_t>(child_labels.size())},
                   std::move(children));
}

Rwta RwtaBuilder::build() {
    Rwta a;
    a.nu_ = std::move(nu_);
    std::sort(transitions_.begin(), transitions_.end());
    transitions_.erase(std::unique(transitions_.begin(), transitions_.end()),
                       transitions_.end());
    a.transitions_ = std::move(transitions_);
    for (std::uint32_t i = 0; i < a.transitions_.size(); ++i) {
        const Transition& tr = a.transitions_[i];
        a.alphabet_.add(tr.symbol);
        a.by_symbol_[tr.symbol].push_back(i);
    }
    nu_.clear();
    labels_.clear();
    return a;
}

namespace {

// Lexicographic successor of a positive composition of a fixed total.
bool next_composition(std::vector<std::uint32_t>& c) {
    const std::size_t k = c.size();
    if (k <= 1) return false;
    std::uint64_t suffix = 0;
    for (std::size_t j = k; j-- > 1;) {
        suffix += c[j];
        std::size_t len = k - j;
        if (suffix > len) {
            ++c[j - 1];
            std::uint64_t remainder = suffix - 1;
            for (std::size_t m = j; m + 1 < k; ++m) {
                c[m] = 1;
                --remainder;
            }
            c[k - 1] = static_cast<std::uint32_t>(remainder);
            return true;
        }
    }
    return false;
}

}  // namespace

TreeSeries series_support_up_to(const Rwta& a, std::uint32_t max_size,
                                std::uint64_t node_budget) {
    struct Enumerated {
        Tree tree;
        StateSet states;
    };
    TreeSeries series;
    std::vector<std::vector<Enumerated>> by_size(max_size + 1);
    std::uint64_t nodes = 0;

    auto emit = [&](Tree tree, StateSet states, std::uint32_t size) {
        nodes += size;
        if (nodes > node_budget) {
            throw BudgetExceededError("tree enumeration exceeded the node budget of " +
                                      std::to_string(node_budget));
        }
        std::uint64_t w = a.weight_of(states);
        if (w > 0) series.add(tree, w);
        by_size[size].push_back(Enumerated{std::move(tree), std::move(states)});
    };

    const auto& symbols = a.alphabet().symbols();
    for (std::uint32_t size = 1; size <= max_size; ++size) {
        for (const Symbol& sym : symbols) {
            if (sym.arity == 0) {
                if (size == 1) emit(Tree::leaf(sym.name), a.delta_step(sym, {}), 1);
                continue;
            }
            if (size < sym.arity + 1) continue;
            // Split the remaining size-1 nodes among the children.
            std::vector<std::uint32_t> split(sym.arity, 1);
            split.back() = size - sym.arity;
            do {
                bool feasible = true;
                for (std::uint32_t i = 0; i < sym.arity; ++i) {
                    if (by_size[split[i]].empty()) {
                        feasible = false;
                        break;
                    }
                }
                if (!feasible) continue;
                // Odometer over the candidate children of each slot.
                std::vector<std::uint32_t> pick(sym.arity, 0);
                for (;;) {
                    std::vector<Tree> kids;
                    kids.reserve(sym.arity);
                    std::vector<StateSet> kid_states;
                    kid_states.reserve(sym.arity);
                    for (std::uint32_t i = 0; i < sym.arity; ++i) {
                        const Enumerated& e = by_size[split[i]][pick[i]];
                        kids.push_back(e.tree);
                        kid_states.push_back(e.states);
                    }
                    StateSet states = a.delta_step(sym, kid_states);
                    emit(Tree::make(sym.name, std::move(kids)), std::move(states), size);
                    std::size_t pos = sym.arity;
                    while (pos > 0 && ++pick[pos - 1] == by_size[split[pos - 1]].size()) {
                        pick[pos - 1] = 0;
                        --pos;
                    }
                    if (pos == 0) break;
                }
            } while (next_composition(split));
        }
    }
    return series;
}

}  // namespace treekernel
