#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "treekernel/tree.hpp"

namespace treekernel {

/// Finite set of canonical trees with a fixed comparison mode. Members are
/// canonicalized at construction; duplicates (under the canonical form) are
/// rejected with DuplicateTreeError.
class TreeLanguage {
public:
    explicit TreeLanguage(Mode mode) : mode_(mode) {}

    static TreeLanguage from_trees(std::vector<Tree> trees, Mode mode);
    /// As above, but validates every symbol against `alphabet` and records
    /// it as the language's declared universe.
    static TreeLanguage from_trees(std::vector<Tree> trees, Mode mode, RankedAlphabet alphabet);

    Mode mode() const { return mode_; }
    std::span<const Tree> trees() const { return trees_; }
    std::size_t size() const { return trees_.size(); }
    bool empty() const { return trees_.empty(); }

    /// Sum of member tree sizes.
    std::uint64_t total_size() const;

    bool contains(const Tree& canonical) const { return members_.contains(canonical); }

    const RankedAlphabet& alphabet() const { return alphabet_; }
    bool alphabet_declared() const { return declared_; }

private:
    Mode mode_;
    std::vector<Tree> trees_;
    std::unordered_set<Tree, TreeHash> members_;
    RankedAlphabet alphabet_;
    bool declared_ = false;
};

/// One serialized tree per line; blank lines and lines starting with '#'
/// are ignored.
TreeLanguage load_language(const std::string& path, Mode mode,
                           const RankedAlphabet* alphabet = nullptr);

void save_language(const std::string& path, const TreeLanguage& language,
                   std::span<const std::string> header_comments = {});

}  // namespace treekernel
