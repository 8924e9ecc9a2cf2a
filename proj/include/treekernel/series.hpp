#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "treekernel/language.hpp"
#include "treekernel/tree.hpp"

namespace treekernel {

/// Finite tree series over the nonnegative integers: a map from canonical
/// trees to coefficients. Zero coefficients are never stored.
class TreeSeries {
public:
    using Map = std::unordered_map<Tree, std::uint64_t, TreeHash>;

    void add(const Tree& t, std::uint64_t count = 1);

    std::uint64_t coeff(const Tree& t) const;
    const Map& coefficients() const { return coeffs_; }
    std::size_t support_size() const { return coeffs_.size(); }
    bool empty() const { return coeffs_.empty(); }

    /// Checked sum of all coefficients.
    std::uint64_t total() const;

    TreeSeries& operator+=(const TreeSeries& other);

    /// Pointwise product; support is the intersection of supports.
    static TreeSeries hadamard(const TreeSeries& a, const TreeSeries& b);

    friend bool operator==(const TreeSeries& a, const TreeSeries& b);

    /// "c1*t1 + c2*t2 + ..." in canonical tree order, for diagnostics.
    std::string to_string() const;

private:
    Map coeffs_;
};

/// Distinct rooted subtrees of t, in canonical order.
std::vector<Tree> subtree_set(const Tree& t);

/// Occurrence-counting series: coefficient of s is the number of nodes of t
/// whose rooted subtree equals s. Sum of coefficients equals size(t).
TreeSeries subtree_series(const Tree& t);

/// Sum of the per-member series; occurrences accumulate across members.
TreeSeries subtree_series(const TreeLanguage& language);

struct SeriesKernel {
    std::uint64_t value = 0;
    std::uint64_t common_support = 0;
};

/// Sum over all trees of the product of coefficients, plus the size of the
/// support intersection.
SeriesKernel series_kernel(const TreeSeries& x, const TreeSeries& y);

/// Reference kernel computed directly on explicit series maps.
std::uint64_t brute_force_kernel(const TreeLanguage& x, const TreeLanguage& y);

}  // namespace treekernel
