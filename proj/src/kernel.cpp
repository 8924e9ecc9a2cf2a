#include "treekernel/kernel.hpp"

#include <algorithm>
#include <limits>
#include <ostream>
#include <unordered_map>
#include <unordered_set>

#include "treekernel/checked.hpp"
#include "treekernel/errors.hpp"
#include "treekernel/series.hpp"

namespace treekernel {

std::string_view algorithm_name(Algorithm a) {
    switch (a) {
        case Algorithm::Automata: return "automata";
        case Algorithm::Oracle: return "oracle";
        case Algorithm::Moschitti: return "moschitti";
    }
    return "?";
}

Algorithm algorithm_from_name(std::string_view name) {
    if (name == "automata") return Algorithm::Automata;
    if (name == "oracle") return Algorithm::Oracle;
    if (name == "moschitti") return Algorithm::Moschitti;
    throw Error("unknown algorithm '" + std::string(name) + "'");
}

ProductResult hadamard_accessible(const StAutomaton& ax, const StAutomaton& ay) {
    if (ax.mode_ != ay.mode_) {
        throw ModeMismatchError("product requires both automata in the same mode");
    }
    if (ax.declared_ && ay.declared_ && *ax.declared_ != *ay.declared_) {
        throw AlphabetMismatchError("product of automata over different declared alphabets");
    }
    const bool swapped = ay.state_count() < ax.state_count();
    const StAutomaton& src = swapped ? ay : ax;
    const StAutomaton& dst = swapped ? ax : ay;

    constexpr std::uint32_t kNoSymbol = 0xFFFFFFFFu;
    std::vector<std::uint32_t> sym_map(src.symbols_.size(), kNoSymbol);
    for (std::uint32_t s = 0; s < src.symbols_.size(); ++s) {
        if (auto d = dst.find_symbol(src.symbols_[s])) sym_map[s] = *d;
    }

    ProductResult result;
    result.states_explored = src.state_count();
    std::vector<StateId> phi(src.state_count(), kNoState);
    std::vector<StateId> kids;
    unsigned __int128 total = 0;
    for (StateId q = 0; q < src.state_count(); ++q) {
        const auto& key = *src.inverse_[q];
        std::uint32_t dsym = sym_map[key.sym];
        if (dsym == kNoSymbol) continue;
        kids.clear();
        bool mapped = true;
        for (StateId c : key.kids) {
            StateId p = phi[c];
            if (p == kNoState) {
                mapped = false;
                break;
            }
            kids.push_back(p);
        }
        if (!mapped) continue;
        auto hit = dst.find_state(dsym, kids);
        if (!hit) continue;
        phi[q] = *hit;
        std::uint64_t w = checked_mul(src.nu_[q], dst.nu_[*hit]);
        total += w;
        result.matched.push_back(swapped ? MatchedState{*hit, q, w} : MatchedState{q, *hit, w});
    }
    if (total > std::numeric_limits<std::uint64_t>::max()) {
        throw OverflowError("kernel value overflows 64 bits");
    }
    result.kernel_value = static_cast<std::uint64_t>(total);
    return result;
}

std::uint64_t subtree_kernel(const StAutomaton& ax, const StAutomaton& ay) {
    return hadamard_accessible(ax, ay).kernel_value;
}

std::uint64_t subtree_kernel(const TreeLanguage& x, const TreeLanguage& y) {
    if (x.mode() != y.mode()) {
        throw ModeMismatchError("kernel requires both languages in the same mode");
    }
    StAutomaton ax = StAutomaton::from_language(x);
    StAutomaton ay = StAutomaton::from_language(y);
    return subtree_kernel(ax, ay);
}

namespace {

struct FlatNode {
    std::uint32_t sym;                   // index into the shared symbol table
    std::vector<std::uint32_t> children;  // post-order indices
};

struct FlatTree {
    std::vector<FlatNode> nodes;  // post order; root last
};

FlatTree flatten(const Tree& t, std::unordered_map<Symbol, std::uint32_t, SymbolHash>& table) {
    auto intern = [&table](const Symbol& s) -> std::uint32_t {
        auto [it, inserted] = table.try_emplace(s, static_cast<std::uint32_t>(table.size()));
        return it->second;
    };
    FlatTree flat;
    struct Frame {
        Tree node;
        std::uint32_t next_child;
        std::vector<std::uint32_t> done;
    };
    std::vector<Frame> frames;
    frames.push_back({t, 0, {}});
    while (!frames.empty()) {
        Frame& f = frames.back();
        if (f.next_child < f.node.arity()) {
            Tree c = f.node.child(f.next_child);
            ++f.next_child;
            frames.push_back({std::move(c), 0, {}});
            continue;
        }
        std::uint32_t idx = static_cast<std::uint32_t>(flat.nodes.size());
        flat.nodes.push_back(FlatNode{intern(f.node.symbol()), std::move(f.done)});
        frames.pop_back();
        if (!frames.empty()) frames.back().done.push_back(idx);
    }
    return flat;
}

// Production of a node: its symbol followed by its child symbols.
using Production = std::vector<std::uint32_t>;

struct ProductionHash {
    std::size_t operator()(const Production& p) const {
        std::size_t h = 1469598103934665603ull;
        for (std::uint32_t v : p) {
            h ^= v + 1;
            h *= 1099511628211ull;
        }
        return h;
    }
};

}  // namespace

std::uint64_t moschitti_kernel(const Tree& t1, const Tree& t2) {
    std::unordered_map<Symbol, std::uint32_t, SymbolHash> table;
    FlatTree a = flatten(t1, table);
    FlatTree b = flatten(t2, table);
    std::vector<bool> is_leaf(table.size());
    for (const auto& [sym, id] : table) is_leaf[id] = sym.arity == 0;

    struct Bucket {
        std::vector<std::uint32_t> a_nodes;
        std::vector<std::uint32_t> b_nodes;
    };
    std::unordered_map<Production, Bucket, ProductionHash> buckets;
    Production prod;
    auto production_of = [&prod](const FlatTree& t, std::uint32_t idx) -> const Production& {
        const FlatNode& n = t.nodes[idx];
        prod.clear();
        prod.push_back(n.sym);
        for (std::uint32_t c : n.children) prod.push_back(t.nodes[c].sym);
        return prod;
    };
    for (std::uint32_t i = 0; i < a.nodes.size(); ++i) {
        buckets[production_of(a, i)].a_nodes.push_back(i);
    }
    for (std::uint32_t j = 0; j < b.nodes.size(); ++j) {
        auto it = buckets.find(production_of(b, j));
        if (it != buckets.end()) it->second.b_nodes.push_back(j);
    }

    std::uint64_t kernel = 0;
    // Matching leaf pairs contribute 1 each; count them per leaf production.
    for (const auto& [p, bucket] : buckets) {
        if (p.size() == 1 && is_leaf[p[0]]) {
            kernel = checked_add(kernel, checked_mul(bucket.a_nodes.size(), bucket.b_nodes.size()));
        }
    }

    // Internal pairs, bottom-up. Delta is 0/1: 1 iff every internal child
    // pair already matched (leaf children match by production equality).
    std::unordered_set<std::uint64_t> matched;
    auto pack = [](std::uint32_t i, std::uint32_t j) {
        return (static_cast<std::uint64_t>(i) << 32) | j;
    };
    for (std::uint32_t i = 0; i < a.nodes.size(); ++i) {
        const FlatNode& na = a.nodes[i];
        if (na.children.empty()) continue;
        auto it = buckets.find(production_of(a, i));
        if (it == buckets.end() || it->second.b_nodes.empty()) continue;
        for (std::uint32_t j : it->second.b_nodes) {
            const FlatNode& nb = b.nodes[j];
            bool all = true;
            for (std::size_t c = 0; c < na.children.size(); ++c) {
                std::uint32_t ca = na.children[c];
                std::uint32_t cb = nb.children[c];
                if (is_leaf[a.nodes[ca].sym]) continue;
                if (!matched.contains(pack(ca, cb))) {
                    all = false;
                    break;
                }
            }
            if (all) {
                matched.insert(pack(i, j));
                kernel = checked_add(kernel, 1);
            }
        }
    }
    return kernel;
}

GramMatrix gram_matrix(std::span<const TreeLanguage> items, Algorithm algorithm,
                       std::span<const std::string> labels) {
    if (items.empty()) throw Error("gram_matrix requires at least one item");
    for (const TreeLanguage& item : items) {
        if (item.mode() != items.front().mode()) {
            throw ModeMismatchError("gram_matrix items must share one mode");
        }
    }
    if (!labels.empty() && labels.size() != items.size()) {
        throw Error("gram_matrix label count does not match item count");
    }

    GramMatrix gram;
    gram.labels.reserve(items.size());
    for (std::size_t i = 0; i < items.size(); ++i) {
        gram.labels.push_back(labels.empty() ? "L" + std::to_string(i) : labels[i]);
    }
    const std::size_t n = items.size();
    gram.values.assign(n, std::vector<std::uint64_t>(n, 0));

    auto fill = [&gram, n](auto&& pair_kernel) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i; j < n; ++j) {
                std::uint64_t v = pair_kernel(i, j);
                gram.values[i][j] = v;
                gram.values[j][i] = v;
            }
        }
    };

    switch (algorithm) {
        case Algorithm::Automata: {
            std::vector<StAutomaton> automata;
            automata.reserve(n);
            for (const TreeLanguage& item : items) {
                automata.push_back(StAutomaton::from_language(item));
            }
            fill([&automata](std::size_t i, std::size_t j) {
                return subtree_kernel(automata[i], automata[j]);
            });
            break;
        }
        case Algorithm::Oracle: {
            std::vector<TreeSeries> series;
            series.reserve(n);
            for (const TreeLanguage& item : items) series.push_back(subtree_series(item));
            fill([&series](std::size_t i, std::size_t j) {
                return series_kernel(series[i], series[j]).value;
            });
            break;
        }
        case Algorithm::Moschitti: {
            for (const TreeLanguage& item : items) {
                if (item.size() != 1) {
                    throw AlgorithmUnsupportedError(
                        "the moschitti baseline requires singleton languages");
                }
            }
            fill([&items](std::size_t i, std::size_t j) {
                return moschitti_kernel(items[i].trees()[0], items[j].trees()[0]);
            });
            break;
        }
    }
    return gram;
}

void write_gram_csv(std::ostream& out, const GramMatrix& gram) {
    for (std::size_t i = 0; i < gram.labels.size(); ++i) {
        if (i > 0) out << ",";
        out << gram.labels[i];
    }
    out << "\n";
    for (std::size_t i = 0; i < gram.labels.size(); ++i) {
        out << gram.labels[i];
        for (std::uint64_t v : gram.values[i]) out << "," << v;
        out << "\n";
    }
}

}  // namespace treekernel
