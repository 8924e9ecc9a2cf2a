#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace treekernel {

/// A ranked symbol. The same name may occur at several arities; each
/// (name, arity) pair is a distinct symbol.
struct Symbol {
    std::string name;
    std::uint32_t arity = 0;

    friend bool operator==(const Symbol&, const Symbol&) = default;
    friend auto operator<=>(const Symbol&, const Symbol&) = default;
};

std::size_t hash_symbol(const Symbol& s);

struct SymbolHash {
    std::size_t operator()(const Symbol& s) const { return hash_symbol(s); }
};

/// Names are nonempty and drawn from [A-Za-z0-9_].
bool valid_symbol_name(std::string_view name);

/// Finite ranked alphabet: a set of symbols kept sorted by (name, arity).
class RankedAlphabet {
public:
    RankedAlphabet() = default;
    explicit RankedAlphabet(std::vector<Symbol> symbols);

    void add(Symbol s);
    void merge(const RankedAlphabet& other);

    bool contains(const Symbol& s) const;
    bool contains(std::string_view name, std::uint32_t arity) const;
    bool contains_name(std::string_view name) const;

    const std::vector<Symbol>& symbols() const { return symbols_; }
    std::size_t size() const { return symbols_.size(); }
    bool empty() const { return symbols_.empty(); }
    std::uint32_t max_arity() const;
    bool has_nullary() const;

    friend bool operator==(const RankedAlphabet&, const RankedAlphabet&) = default;

private:
    std::vector<Symbol> symbols_;
};

}  // namespace treekernel
