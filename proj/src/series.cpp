#include "treekernel/series.hpp"

#include <algorithm>

#include "treekernel/checked.hpp"
#include "treekernel/errors.hpp"

namespace treekernel {

void TreeSeries::add(const Tree& t, std::uint64_t count) {
    if (count == 0) return;
    auto [it, inserted] = coeffs_.try_emplace(t, count);
    if (!inserted) it->second = checked_add(it->second, count);
}

std::uint64_t TreeSeries::coeff(const Tree& t) const {
    auto it = coeffs_.find(t);
    return it == coeffs_.end() ? 0 : it->second;
}

std::uint64_t TreeSeries::total() const {
    std::uint64_t sum = 0;
    for (const auto& [t, c] : coeffs_) sum = checked_add(sum, c);
    return sum;
}

TreeSeries& TreeSeries::operator+=(const TreeSeries& other) {
    for (const auto& [t, c] : other.coeffs_) add(t, c);
    return *this;
}

TreeSeries TreeSeries::hadamard(const TreeSeries& a, const TreeSeries& b) {
    const TreeSeries& small = a.coeffs_.size() <= b.coeffs_.size() ? a : b;
    const TreeSeries& large = a.coeffs_.size() <= b.coeffs_.size() ? b : a;
    TreeSeries out;
    for (const auto& [t, c] : small.coeffs_) {
        auto it = large.coeffs_.find(t);
        if (it != large.coeffs_.end()) out.add(t, checked_mul(c, it->second));
    }
    return out;
}

bool operator==(const TreeSeries& a, const TreeSeries& b) {
    return a.coeffs_ == b.coeffs_;
}

std::string TreeSeries::to_string() const {
    std::vector<const Map::value_type*> entries;
    entries.reserve(coeffs_.size());
    for (const auto& e : coeffs_) entries.push_back(&e);
    std::sort(entries.begin(), entries.end(), [](const auto* x, const auto* y) {
        return Tree::compare(x->first, y->first) < 0;
    });
    std::string out;
    for (const auto* e : entries) {
        if (!out.empty()) out += " + ";
        if (e->second != 1) out += std::to_string(e->second) + "*";
        out += serialize_tree(e->first);
    }
    return out.empty() ? "0" : out;
}

std::vector<Tree> subtree_set(const Tree& t) {
    std::unordered_set<Tree, TreeHash> seen;
    std::vector<Tree> out;
    out.push_back(t);
    seen.insert(t);
    for (std::size_t i = 0; i < out.size(); ++i) {
        Tree cur = out[i];
        for (const Tree& c : cur.children()) {
            if (seen.insert(c).second) out.push_back(c);
        }
    }
    std::sort(out.begin(), out.end(),
              [](const Tree& a, const Tree& b) { return Tree::compare(a, b) < 0; });
    return out;
}

namespace {

// Multiplicity propagation over the DAG of distinct subtrees: each distinct
// subtree's occurrence count is pushed down to its children. Parents are
// strictly larger than children, so descending size is a topological order.
void add_occurrences(TreeSeries& series, const Tree& root) {
    std::vector<Tree> distinct = subtree_set(root);
    std::stable_sort(distinct.begin(), distinct.end(),
                     [](const Tree& a, const Tree& b) { return a.size() > b.size(); });
    std::unordered_map<Tree, std::uint64_t, TreeHash> mult;
    mult.try_emplace(root, 1);
    for (const Tree& t : distinct) {
        std::uint64_t m = mult.at(t);
        series.add(t, m);
        for (const Tree& c : t.children()) {
            auto [it, inserted] = mult.try_emplace(c, 0);
            it->second = checked_add(it->second, m);
        }
    }
}

}  // namespace

TreeSeries subtree_series(const Tree& t) {
    TreeSeries series;
    add_occurrences(series, t);
    return series;
}

TreeSeries subtree_series(const TreeLanguage& language) {
    TreeSeries series;
    for (const Tree& t : language.trees()) add_occurrences(series, t);
    return series;
}

SeriesKernel series_kernel(const TreeSeries& x, const TreeSeries& y) {
    const TreeSeries& small = x.support_size() <= y.support_size() ? x : y;
    const TreeSeries& large = x.support_size() <= y.support_size() ? y : x;
    SeriesKernel result;
    for (const auto& [t, c] : small.coefficients()) {
        auto it = large.coefficients().find(t);
        if (it == large.coefficients().end()) continue;
        result.value = checked_add(result.value, checked_mul(c, it->second));
        ++result.common_support;
    }
    return result;
}

std::uint64_t brute_force_kernel(const TreeLanguage& x, const TreeLanguage& y) {
    if (x.mode() != y.mode()) {
        throw ModeMismatchError("kernel requires both languages in the same mode");
    }
    return series_kernel(subtree_series(x), subtree_series(y)).value;
}

}  // namespace treekernel
