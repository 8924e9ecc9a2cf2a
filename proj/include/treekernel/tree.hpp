#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "treekernel/alphabet.hpp"

namespace treekernel {

enum class Mode { Ordered, Unordered };

std::string_view mode_name(Mode m);
Mode mode_from_name(std::string_view name);

/// Immutable ranked ordered tree. Handles are cheap to copy, structure is
/// shared, and equality/ordering are structural. Size, depth and a
/// structural hash are precomputed at construction.
///
/// The total order Tree::compare coincides with lexicographic comparison of
/// the serialized forms (the separators '(' ',' ')' all sort below every
/// name character).
class Tree {
public:
    Tree() = delete;

    static Tree leaf(std::string name);
    static Tree make(std::string name, std::vector<Tree> children);

    const std::string& name() const;
    std::uint32_t arity() const;
    Symbol symbol() const;
    std::span<const Tree> children() const;
    const Tree& child(std::size_t i) const;

    /// Node count. Structure sharing is invisible: a shared subtree is
    /// counted once per occurrence.
    std::uint64_t size() const;
    /// 1 for a leaf.
    std::uint32_t depth() const;
    std::size_t hash() const;

    /// Pointer identity of the underlying node (not structural equality).
    bool identical(const Tree& other) const { return node_ == other.node_; }

    friend bool operator==(const Tree& a, const Tree& b);
    friend bool operator!=(const Tree& a, const Tree& b) { return !(a == b); }

    /// -1 / 0 / +1; total order equal to serialized lexicographic order.
    static int compare(const Tree& a, const Tree& b);
    friend bool operator<(const Tree& a, const Tree& b) { return compare(a, b) < 0; }

private:
    struct Node;
    explicit Tree(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

    std::shared_ptr<const Node> node_;
};

struct TreeHash {
    std::size_t operator()(const Tree& t) const { return t.hash(); }
};

/// Grammar: tree := NAME | NAME '(' tree (',' tree)* ')'. Whitespace between
/// tokens is ignored. If an alphabet is given, every (name, arity) use must
/// belong to it.
Tree parse_tree(std::string_view text, const RankedAlphabet* alphabet = nullptr);

/// Inverse of parse_tree; emits no whitespace.
std::string serialize_tree(const Tree& t);

/// Ordered mode is the identity. Unordered mode recursively sorts every
/// node's children by Tree::compare; idempotent, size-preserving.
Tree canonicalize(const Tree& t, Mode mode);

/// Alphabet of the symbols occurring in t.
RankedAlphabet infer_alphabet(const Tree& t);

}  // namespace treekernel
