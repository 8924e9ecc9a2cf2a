#include <random>

#include "doctest.h"
#include "test_util.hpp"
#include "treekernel/errors.hpp"
#include "treekernel/language.hpp"
#include "treekernel/series.hpp"
#include "treekernel/tree.hpp"

using namespace treekernel;

namespace {

Tree T(const char* text) { return parse_tree(text); }

TreeSeries series_of(std::initializer_list<std::pair<const char*, std::uint64_t>> entries) {
    TreeSeries s;
    for (const auto& [text, coeff] : entries) s.add(T(text), coeff);
    return s;
}

const char* kT1 = "f(h(a),f(h(a),b))";
const char* kT2 = "f(h(a),h(b))";
const char* kT3 = "f(f(b,h(b)),f(h(a),h(b)))";

}  // namespace

TEST_CASE("parse_tree reads functional notation") {
    Tree t1 = T(kT1);
    CHECK(t1.size() == 7);
    CHECK(t1.depth() == 4);
    CHECK(t1.name() == "f");
    CHECK(t1.arity() == 2);

    Tree leaf = T("a");
    CHECK(leaf.size() == 1);
    CHECK(leaf.arity() == 0);

    CHECK(T(" f ( a , b ) ") == T("f(a,b)"));
}

TEST_CASE("parse_tree reports syntax errors with positions") {
    try {
        parse_tree("f(a,");
        FAIL("expected SyntaxError");
    } catch (const SyntaxError& e) {
        CHECK(e.offset() == 4);
    }
    CHECK_THROWS_AS(parse_tree(""), SyntaxError);
    CHECK_THROWS_AS(parse_tree("f(a))"), SyntaxError);
    CHECK_THROWS_AS(parse_tree("f()"), SyntaxError);
    CHECK_THROWS_AS(parse_tree("a b"), SyntaxError);
    CHECK_THROWS_AS(parse_tree("f(a,b"), SyntaxError);
}

TEST_CASE("parse_tree validates a supplied alphabet") {
    RankedAlphabet alphabet({{"f", 2}, {"a", 0}});
    CHECK(parse_tree("f(a,a)", &alphabet).size() == 3);
    CHECK_THROWS_AS(parse_tree("f(a)", &alphabet), ArityError);
    CHECK_THROWS_AS(parse_tree("g(a,a)", &alphabet), ArityError);
}

TEST_CASE("serialize_tree emits compact text") {
    CHECK(serialize_tree(T("f(a,g(a))")) == "f(a,g(a))");
    CHECK(serialize_tree(T("b")) == "b");
    CHECK(serialize_tree(canonicalize(T("f(b,a)"), Mode::Unordered)) == "f(a,b)");
}

TEST_CASE("canonicalize: ordered is identity, unordered sorts children") {
    Tree t = T("f(g(b),g(a))");
    CHECK(canonicalize(t, Mode::Ordered).identical(t));
    CHECK(canonicalize(t, Mode::Unordered) == T("f(g(a),g(b))"));
    CHECK(canonicalize(T("f(a,a)"), Mode::Unordered) == T("f(a,a)"));
}

TEST_CASE("canonicalize properties on random trees") {
    std::mt19937_64 rng(7);
    RankedAlphabet mixed({{"a", 0}, {"b", 0}, {"a", 2}, {"g", 1}, {"f", 3}, {"f", 2}});
    for (int i = 0; i < 300; ++i) {
        Tree t = tktest::random_tree(rng, mixed, 4, 8);
        Tree canon = canonicalize(t, Mode::Unordered);
        CHECK(canon.size() == t.size());
        CHECK(canonicalize(canon, Mode::Unordered).identical(canon));
        CHECK(tktest::children_sorted_everywhere(canon));
        // Any recursive permutation canonicalizes to the same tree.
        Tree shuffled = tktest::shuffle_children(rng, t);
        CHECK(canonicalize(shuffled, Mode::Unordered) == canon);
    }
}

TEST_CASE("canonicalize agrees with brute-force permutation search") {
    std::mt19937_64 rng(8);
    // The canonical form is the unique variant sorted at every node.
    RankedAlphabet mixed({{"a", 0}, {"b", 0}, {"a", 2}, {"g", 1}, {"f", 2}});
    for (int i = 0; i < 100; ++i) {
        Tree t = tktest::random_tree(rng, mixed, 4, 8);
        Tree canon = canonicalize(t, Mode::Unordered);
        std::vector<Tree> variants = tktest::all_permutation_variants(t);
        std::size_t sorted_count = 0;
        for (const Tree& v : variants) {
            if (tktest::children_sorted_everywhere(v)) {
                ++sorted_count;
                CHECK(v == canon);
            }
        }
        CHECK(sorted_count == 1);
    }
    // With one arity per name the canonical form also minimizes the
    // serialized text over all permutation variants.
    RankedAlphabet plain({{"a", 0}, {"b", 0}, {"g", 1}, {"f", 2}, {"k", 3}});
    for (int i = 0; i < 100; ++i) {
        Tree t = tktest::random_tree(rng, plain, 4, 8);
        std::string best;
        for (const Tree& v : tktest::all_permutation_variants(t)) {
            std::string s = serialize_tree(v);
            if (best.empty() || s < best) best = s;
        }
        CHECK(serialize_tree(canonicalize(t, Mode::Unordered)) == best);
    }
}

TEST_CASE("round trips and order agreement on random trees") {
    std::mt19937_64 rng(9);
    RankedAlphabet alphabet({{"a", 0}, {"bb", 0}, {"b", 0}, {"g", 1}, {"f", 2}, {"f", 0}});
    std::vector<Tree> pool;
    for (int i = 0; i < 200; ++i) {
        Tree t = tktest::random_tree(rng, alphabet, 5, 16);
        CHECK(parse_tree(serialize_tree(t)) == t);
        pool.push_back(t);
    }
    // Tree::compare coincides with comparing serializations.
    for (int i = 0; i < 400; ++i) {
        const Tree& x = pool[uniform_below(rng, pool.size())];
        const Tree& y = pool[uniform_below(rng, pool.size())];
        int by_tree = Tree::compare(x, y);
        int by_text = serialize_tree(x).compare(serialize_tree(y));
        CHECK((by_tree < 0) == (by_text < 0));
        CHECK((by_tree == 0) == (by_text == 0));
    }
    // Whitespace-normalization: spaces between tokens do not matter.
    std::string spaced;
    for (char c : std::string("f(g(a),f(bb,b))")) {
        spaced += c;
        if (uniform_below(rng, 2)) spaced += ' ';
    }
    CHECK(parse_tree(spaced) == T("f(g(a),f(bb,b))"));
}

TEST_CASE("subtree_set lists distinct rooted subtrees") {
    auto as_text = [](const std::vector<Tree>& trees) {
        std::vector<std::string> out;
        for (const Tree& t : trees) out.push_back(serialize_tree(t));
        return out;
    };
    CHECK(as_text(subtree_set(T(kT1))) ==
          std::vector<std::string>{"a", "b", "f(h(a),b)", "f(h(a),f(h(a),b))", "h(a)"});
    CHECK(as_text(subtree_set(T("f(a,g(a))"))) ==
          std::vector<std::string>{"a", "f(a,g(a))", "g(a)"});
    CHECK(as_text(subtree_set(T("a"))) == std::vector<std::string>{"a"});
}

TEST_CASE("subtree_series counts occurrences") {
    TreeLanguage l1 = TreeLanguage::from_trees({T(kT1)}, Mode::Ordered);
    CHECK(subtree_series(l1) == series_of({{kT1, 1}, {"f(h(a),b)", 1}, {"h(a)", 2}, {"a", 2}, {"b", 1}}));

    TreeLanguage l12 = TreeLanguage::from_trees({T(kT1), T(kT2)}, Mode::Ordered);
    CHECK(subtree_series(l12) == series_of({{kT1, 1},
                                            {kT2, 1},
                                            {"f(h(a),b)", 1},
                                            {"h(a)", 3},
                                            {"h(b)", 1},
                                            {"a", 3},
                                            {"b", 2}}));

    TreeLanguage la = TreeLanguage::from_trees({T("a")}, Mode::Ordered);
    CHECK(subtree_series(la) == series_of({{"a", 1}}));
}

TEST_CASE("subtree invariants on random trees") {
    std::mt19937_64 rng(10);
    RankedAlphabet alphabet({{"a", 0}, {"b", 0}, {"g", 1}, {"f", 2}});
    for (int i = 0; i < 200; ++i) {
        Tree t = tktest::random_tree(rng, alphabet, 6, 24);
        auto distinct = subtree_set(t);
        CHECK(distinct.size() <= t.size());
        CHECK(subtree_series(t).total() == t.size());
        CHECK(subtree_series(t).support_size() == distinct.size());
    }
}

TEST_CASE("brute_force_kernel golden values") {
    TreeLanguage x = TreeLanguage::from_trees({T(kT1), T(kT2)}, Mode::Ordered);
    TreeLanguage y = TreeLanguage::from_trees({T(kT3)}, Mode::Ordered);
    CHECK(brute_force_kernel(x, y) == 15);
    CHECK(brute_force_kernel(y, x) == 15);

    TreeLanguage a = TreeLanguage::from_trees({T("a")}, Mode::Ordered);
    TreeLanguage b = TreeLanguage::from_trees({T("b")}, Mode::Ordered);
    CHECK(brute_force_kernel(a, b) == 0);

    TreeLanguage fag = TreeLanguage::from_trees({T("f(a,g(a))")}, Mode::Ordered);
    CHECK(brute_force_kernel(fag, fag) == 3);

    CHECK_THROWS_AS(brute_force_kernel(a, TreeLanguage::from_trees({T("b")}, Mode::Unordered)),
                    ModeMismatchError);
}

TEST_CASE("brute_force_kernel is symmetric on random languages") {
    std::mt19937_64 rng(11);
    RankedAlphabet alphabet({{"a", 0}, {"b", 0}, {"g", 1}, {"f", 2}});
    for (int i = 0; i < 50; ++i) {
        TreeLanguage x = tktest::random_language(rng, alphabet, 5, 4, 12, Mode::Ordered);
        TreeLanguage y = tktest::random_language(rng, alphabet, 5, 4, 12, Mode::Ordered);
        CHECK(brute_force_kernel(x, y) == brute_force_kernel(y, x));
    }
}

TEST_CASE("tree language rejects duplicates and tracks totals") {
    CHECK_THROWS_AS(TreeLanguage::from_trees({T("a"), T("a")}, Mode::Ordered),
                    DuplicateTreeError);
    // Equal up to child order collides in unordered mode only.
    CHECK_THROWS_AS(TreeLanguage::from_trees({T("f(a,b)"), T("f(b,a)")}, Mode::Unordered),
                    DuplicateTreeError);
    TreeLanguage ordered = TreeLanguage::from_trees({T("f(a,b)"), T("f(b,a)")}, Mode::Ordered);
    CHECK(ordered.size() == 2);
    CHECK(ordered.total_size() == 6);
    CHECK(ordered.alphabet() == RankedAlphabet({{"a", 0}, {"b", 0}, {"f", 2}}));

    RankedAlphabet declared({{"a", 0}, {"b", 0}, {"f", 2}, {"g", 1}});
    TreeLanguage with = TreeLanguage::from_trees({T("f(a,b)")}, Mode::Ordered, declared);
    CHECK(with.alphabet_declared());
    CHECK_THROWS_AS(TreeLanguage::from_trees({T("g(g(a),a)")}, Mode::Ordered, declared),
                    ArityError);
}

TEST_CASE("tree series arithmetic") {
    TreeSeries s = series_of({{"a", 2}, {"b", 1}});
    TreeSeries t = series_of({{"a", 3}, {"g(a)", 4}});
    TreeSeries sum = s;
    sum += t;
    CHECK(sum == series_of({{"a", 5}, {"b", 1}, {"g(a)", 4}}));
    CHECK(TreeSeries::hadamard(s, t) == series_of({{"a", 6}}));
    CHECK(sum.total() == 10);
    CHECK(s.coeff(T("zz")) == 0);
    CHECK(s.to_string() == "2*a + b");

    TreeSeries big;
    big.add(T("a"), 0x8000000000000000ull);
    CHECK_THROWS_AS(big.add(T("a"), 0x8000000000000000ull), OverflowError);
    TreeSeries big2;
    big2.add(T("a"), 1ull << 40);
    TreeSeries big3;
    big3.add(T("a"), 1ull << 40);
    CHECK_THROWS_AS(TreeSeries::hadamard(big2, big3), OverflowError);
}
