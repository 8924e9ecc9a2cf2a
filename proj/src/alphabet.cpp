#include "treekernel/alphabet.hpp"

#include <algorithm>
#include <functional>

#include "treekernel/errors.hpp"

namespace treekernel {

std::size_t hash_symbol(const Symbol& s) {
    std::size_t h = std::hash<std::string>{}(s.name);
    h ^= 0x9e3779b97f4a7c15ull + s.arity + (h << 6) + (h >> 2);
    return h;
}

bool valid_symbol_name(std::string_view name) {
    if (name.empty()) return false;
    for (char c : name) {
        bool ok = (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') ||
                  (c >= '0' && c <= '9') || c == '_';
        if (!ok) return false;
    }
    return true;
}

RankedAlphabet::RankedAlphabet(std::vector<Symbol> symbols) {
    for (auto& s : symbols) add(std::move(s));
}

void RankedAlphabet::add(Symbol s) {
    if (!valid_symbol_name(s.name)) {
        throw Error("invalid symbol name '" + s.name + "'");
    }
    auto it = std::lower_bound(symbols_.begin(), symbols_.end(), s);
    if (it != symbols_.end() && *it == s) return;
    symbols_.insert(it, std::move(s));
}

void RankedAlphabet::merge(const RankedAlphabet& other) {
    for (const auto& s : other.symbols_) add(s);
}

bool RankedAlphabet::contains(const Symbol& s) const {
    return std::binary_search(symbols_.begin(), symbols_.end(), s);
}

bool RankedAlphabet::contains(std::string_view name, std::uint32_t arity) const {
    return contains(Symbol{std::string(name), arity});
}

bool RankedAlphabet::contains_name(std::string_view name) const {
    auto it = std::lower_bound(symbols_.begin(), symbols_.end(), name,
                               [](const Symbol& s, std::string_view n) { return s.name < n; });
    return it != symbols_.end() && it->name == name;
}

std::uint32_t RankedAlphabet::max_arity() const {
    std::uint32_t m = 0;
    for (const auto& s : symbols_) m = std::max(m, s.arity);
    return m;
}

bool RankedAlphabet::has_nullary() const {
    for (const auto& s : symbols_) {
        if (s.arity == 0) return true;
    }
    return false;
}

}  // namespace treekernel
