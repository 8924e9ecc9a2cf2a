#include "treekernel/language.hpp"

#include <fstream>

#include "treekernel/checked.hpp"
#include "treekernel/errors.hpp"

namespace treekernel {

TreeLanguage TreeLanguage::from_trees(std::vector<Tree> trees, Mode mode) {
    TreeLanguage lang(mode);
    for (Tree& t : trees) {
        Tree canonical = canonicalize(t, mode);
        if (!lang.members_.insert(canonical).second) {
            throw DuplicateTreeError("duplicate tree in language: " + serialize_tree(canonical));
        }
        lang.alphabet_.merge(infer_alphabet(canonical));
        lang.trees_.push_back(std::move(canonical));
    }
    return lang;
}

TreeLanguage TreeLanguage::from_trees(std::vector<Tree> trees, Mode mode,
                                      RankedAlphabet alphabet) {
    TreeLanguage lang = from_trees(std::move(trees), mode);
    for (const Symbol& s : lang.alphabet_.symbols()) {
        if (!alphabet.contains(s)) {
            throw ArityError("symbol '" + s.name + "' with arity " + std::to_string(s.arity) +
                             " is absent from the declared alphabet");
        }
    }
    lang.alphabet_ = std::move(alphabet);
    lang.declared_ = true;
    return lang;
}

std::uint64_t TreeLanguage::total_size() const {
    std::uint64_t total = 0;
    for (const Tree& t : trees_) total = checked_add(total, t.size());
    return total;
}

TreeLanguage load_language(const std::string& path, Mode mode, const RankedAlphabet* alphabet) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "'");
    std::vector<Tree> trees;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        try {
            trees.push_back(parse_tree(line, alphabet));
        } catch (const Error& e) {
            throw IoError(path + ":" + std::to_string(lineno) + ": " + e.what());
        }
    }
    try {
        return TreeLanguage::from_trees(std::move(trees), mode);
    } catch (const DuplicateTreeError& e) {
        throw IoError(path + ": " + e.what());
    }
}

void save_language(const std::string& path, const TreeLanguage& language,
                   std::span<const std::string> header_comments) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write '" + path + "'");
    for (const std::string& comment : header_comments) out << "# " << comment << "\n";
    for (const Tree& t : language.trees()) out << serialize_tree(t) << "\n";
    if (!out) throw IoError("write to '" + path + "' failed");
}

}  // namespace treekernel
