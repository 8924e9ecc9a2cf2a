#include "treekernel/tree.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <optional>
#include <utility>

#include "treekernel/checked.hpp"
#include "treekernel/errors.hpp"

namespace treekernel {

struct Tree::Node {
    std::string name;
    std::vector<Tree> children;
    std::uint64_t size = 1;
    std::uint32_t depth = 1;
    std::size_t hash = 0;
};

std::string_view mode_name(Mode m) {
    return m == Mode::Ordered ? "ordered" : "unordered";
}

Mode mode_from_name(std::string_view name) {
    if (name == "ordered") return Mode::Ordered;
    if (name == "unordered") return Mode::Unordered;
    throw Error("unknown tree mode '" + std::string(name) + "'");
}

Tree Tree::leaf(std::string name) {
    return make(std::move(name), {});
}

Tree Tree::make(std::string name, std::vector<Tree> children) {
    if (!valid_symbol_name(name)) {
        throw Error("invalid symbol name '" + name + "'");
    }
    auto node = std::make_shared<Node>();
    std::size_t h = 1469598103934665603ull;
    auto mix = [&h](std::size_t v) {
        h ^= v;
        h *= 1099511628211ull;
    };
    mix(std::hash<std::string_view>{}(name));
    mix(children.size());
    std::uint64_t size = 1;
    std::uint32_t depth = 1;
    for (const Tree& c : children) {
        size = checked_add(size, c.size());
        depth = std::max(depth, c.depth() + 1);
        mix(c.hash());
    }
    node->name = std::move(name);
    node->children = std::move(children);
    node->size = size;
    node->depth = depth;
    node->hash = h;
    return Tree(std::move(node));
}

const std::string& Tree::name() const { return node_->name; }
std::uint32_t Tree::arity() const { return static_cast<std::uint32_t>(node_->children.size()); }
Symbol Tree::symbol() const { return Symbol{node_->name, arity()}; }
std::span<const Tree> Tree::children() const { return node_->children; }
const Tree& Tree::child(std::size_t i) const { return node_->children[i]; }
std::uint64_t Tree::size() const { return node_->size; }
std::uint32_t Tree::depth() const { return node_->depth; }
std::size_t Tree::hash() const { return node_->hash; }

bool operator==(const Tree& a, const Tree& b) {
    if (a.node_ == b.node_) return true;
    if (a.node_->hash != b.node_->hash || a.node_->size != b.node_->size) return false;
    if (a.node_->name != b.node_->name) return false;
    if (a.node_->children.size() != b.node_->children.size()) return false;
    for (std::size_t i = 0; i < a.node_->children.size(); ++i) {
        if (!(a.node_->children[i] == b.node_->children[i])) return false;
    }
    return true;
}

int Tree::compare(const Tree& a, const Tree& b) {
    if (a.node_ == b.node_) return 0;
    if (int c = a.name().compare(b.name()); c != 0) return c < 0 ? -1 : 1;
    const auto& ca = a.node_->children;
    const auto& cb = b.node_->children;
    std::size_t n = std::min(ca.size(), cb.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (int c = compare(ca[i], cb[i]); c != 0) return c;
    }
    if (ca.size() != cb.size()) return ca.size() < cb.size() ? -1 : 1;
    return 0;
}

namespace {

bool is_name_char(char c) {
    return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') ||
           (c >= '0' && c <= '9') || c == '_';
}

struct ParseFrame {
    std::string name;
    std::vector<Tree> children;
};

}  // namespace

Tree parse_tree(std::string_view text, const RankedAlphabet* alphabet) {
    std::size_t pos = 0;
    auto skip_ws = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    };
    auto read_name = [&]() -> std::string {
        skip_ws();
        std::size_t start = pos;
        while (pos < text.size() && is_name_char(text[pos])) ++pos;
        if (pos == start) throw SyntaxError("expected symbol name", start);
        return std::string(text.substr(start, pos - start));
    };
    auto finish = [&](std::string name, std::vector<Tree> children) -> Tree {
        if (alphabet && !alphabet->contains(name, static_cast<std::uint32_t>(children.size()))) {
            throw ArityError("symbol '" + name + "' used with arity " +
                             std::to_string(children.size()) +
                             " which is absent from the supplied alphabet");
        }
        return Tree::make(std::move(name), std::move(children));
    };

    std::vector<ParseFrame> stack;
    std::optional<Tree> result;
    while (!result) {
        std::string name = read_name();
        skip_ws();
        if (pos < text.size() && text[pos] == '(') {
            ++pos;
            stack.push_back(ParseFrame{std::move(name), {}});
            continue;
        }
        std::optional<Tree> completed = finish(std::move(name), {});
        for (;;) {
            if (stack.empty()) {
                result = std::move(completed);
                break;
            }
            stack.back().children.push_back(std::move(*completed));
            completed.reset();
            skip_ws();
            if (pos < text.size() && text[pos] == ',') {
                ++pos;
                break;
            }
            if (pos < text.size() && text[pos] == ')') {
                ++pos;
                ParseFrame f = std::move(stack.back());
                stack.pop_back();
                completed = finish(std::move(f.name), std::move(f.children));
                continue;
            }
            throw SyntaxError("expected ',' or ')'", pos);
        }
    }
    skip_ws();
    if (pos != text.size()) throw SyntaxError("unexpected trailing input", pos);
    return *result;
}

std::string serialize_tree(const Tree& t) {
    std::string out;
    struct Item {
        Tree node;
        std::uint32_t next_child;
    };
    std::vector<Item> stack;
    stack.push_back({t, 0});
    while (!stack.empty()) {
        Item& top = stack.back();
        if (top.next_child == 0) {
            out += top.node.name();
            if (top.node.arity() > 0) out += '(';
        }
        if (top.next_child < top.node.arity()) {
            if (top.next_child > 0) out += ',';
            Tree child = top.node.child(top.next_child);
            ++top.next_child;
            stack.push_back({std::move(child), 0});
        } else {
            if (top.node.arity() > 0) out += ')';
            stack.pop_back();
        }
    }
    return out;
}

Tree canonicalize(const Tree& t, Mode mode) {
    if (mode == Mode::Ordered || t.arity() == 0) return t;
    std::vector<Tree> kids;
    kids.reserve(t.arity());
    bool changed = false;
    for (const Tree& c : t.children()) {
        Tree cc = canonicalize(c, mode);
        if (!cc.identical(c)) changed = true;
        kids.push_back(std::move(cc));
    }
    auto less = [](const Tree& a, const Tree& b) { return Tree::compare(a, b) < 0; };
    if (!std::is_sorted(kids.begin(), kids.end(), less)) {
        std::stable_sort(kids.begin(), kids.end(), less);
        changed = true;
    }
    if (!changed) return t;
    return Tree::make(t.name(), std::move(kids));
}

RankedAlphabet infer_alphabet(const Tree& t) {
    RankedAlphabet a;
    std::vector<Tree> stack{t};
    while (!stack.empty()) {
        Tree cur = std::move(stack.back());
        stack.pop_back();
        a.add(cur.symbol());
        for (const Tree& c : cur.children()) stack.push_back(c);
    }
    return a;
}

}  // namespace treekernel
