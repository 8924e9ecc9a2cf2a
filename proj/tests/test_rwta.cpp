#include <random>

#include "doctest.h"
#include "test_util.hpp"
#include "treekernel/errors.hpp"
#include "treekernel/rwta.hpp"
#include "treekernel/series.hpp"
#include "treekernel/st_automaton.hpp"

using namespace treekernel;

namespace {

Tree T(const char* text) { return parse_tree(text); }

StateSet ids(const Rwta&, std::initializer_list<StateId> list) { return StateSet(list); }

}  // namespace

TEST_CASE("delta_step takes the union over the child product") {
    Rwta a = tktest::example_rwta();
    // Labels "1".."5" map to dense ids 0..4.
    StateSet both = {0, 2};
    CHECK(a.delta_step(Symbol{"f", 2}, std::vector<StateSet>{both, both}) == ids(a, {1, 3}));
    CHECK(a.delta_step(Symbol{"f", 2}, std::vector<StateSet>{both, {}}) == ids(a, {}));
    CHECK(a.delta_step(Symbol{"a", 0}, {}) == ids(a, {0, 2}));
    CHECK_THROWS_AS(a.delta_step(Symbol{"b", 0}, {}), UnknownSymbolError);
}

TEST_CASE("evaluate runs bottom-up") {
    Rwta a = tktest::example_rwta();
    CHECK(a.evaluate(T("f(a,a)")) == ids(a, {1, 3}));
    CHECK(a.evaluate(T("h(f(a,a))")) == ids(a, {4}));
    CHECK(a.evaluate(T("h(h(h(f(a,a))))")) == ids(a, {4}));
    CHECK(a.evaluate(T("h(a)")) == ids(a, {}));
    CHECK_THROWS_AS(a.evaluate(T("b")), UnknownSymbolError);
    CHECK_THROWS_AS(a.evaluate(T("f(b,a)")), UnknownSymbolError);
}

TEST_CASE("weight sums root weights, empty set weighs zero") {
    Rwta a = tktest::example_rwta();
    CHECK(a.weight(T("a")) == 1);
    CHECK(a.weight(T("f(a,a)")) == 5);
    std::string tree = "f(a,a)";
    for (int k = 1; k <= 5; ++k) {
        tree = "h(" + tree + ")";
        CHECK(a.weight(T(tree.c_str())) == 4);
    }
    CHECK(a.weight(T("h(a)")) == 0);
    CHECK(a.weight(T("f(f(a,a),a)")) == 0);
}

TEST_CASE("evaluate agrees with the naive cartesian-product reference") {
    std::mt19937_64 rng(21);
    RankedAlphabet alphabet({{"a", 0}, {"b", 0}, {"g", 1}, {"f", 2}});
    for (int round = 0; round < 120; ++round) {
        Rwta a = tktest::random_rwta(rng, 6, 12);
        for (int i = 0; i < 8; ++i) {
            Tree t = tktest::random_tree(rng, alphabet, 4, 8);
            CHECK(a.evaluate(t) == tktest::naive_evaluate(a, t));
        }
    }
}

TEST_CASE("unreachable states never change weights") {
    RwtaBuilder b;
    b.add_state("1", 0);
    b.add_state("2", 3);
    b.add_state("3", 1);
    b.add_state("4", 2);
    b.add_state("5", 4);
    b.add_transition("1", "a", {});
    b.add_transition("3", "a", {});
    b.add_transition("2", "f", {"1", "3"});
    b.add_transition("4", "f", {"3", "3"});
    b.add_transition("5", "h", {"2"});
    b.add_transition("5", "h", {"4"});
    b.add_transition("5", "h", {"5"});
    b.add_state("unreachable", 77);
    Rwta extended = b.build();
    Rwta original = tktest::example_rwta();
    for (const char* text : {"a", "f(a,a)", "h(f(a,a))", "h(h(f(a,a)))"}) {
        CHECK(extended.weight(T(text)) == original.weight(T(text)));
    }
}

TEST_CASE("down language membership") {
    Rwta a = tktest::example_rwta();
    CHECK(a.down_language_membership(4, T("h(f(a,a))")));       // state "5"
    CHECK_FALSE(a.down_language_membership(0, T("f(a,a)")));    // state "1"
    CHECK(a.down_language_membership(1, T("f(a,a)")));          // state "2"
    CHECK_THROWS_AS(a.down_language_membership(99, T("a")), UnknownStateError);
    CHECK_THROWS_AS(a.down_language_membership(0, T("b")), UnknownSymbolError);
}

TEST_CASE("series_support_up_to materializes the truncated series") {
    Rwta a = tktest::example_rwta();
    TreeSeries expected;
    expected.add(T("a"), 1);
    expected.add(T("f(a,a)"), 5);
    CHECK(series_support_up_to(a, 3) == expected);

    // All h-wrapped towers weigh 4.
    TreeSeries upto5 = series_support_up_to(a, 5);
    CHECK(upto5.coeff(T("h(f(a,a))")) == 4);
    CHECK(upto5.coeff(T("h(h(f(a,a)))")) == 4);
    CHECK(upto5.coeff(T("h(a)")) == 0);

    RwtaBuilder empty;
    empty.add_state(3);
    CHECK(series_support_up_to(empty.build(), 4).empty());

    StAutomaton st = StAutomaton::from_tree(T("f(a,g(a))"));
    TreeSeries st_series;
    st_series.add(T("a"), 1);
    st_series.add(T("g(a)"), 1);
    st_series.add(T("f(a,g(a))"), 1);
    CHECK(series_support_up_to(st.to_rwta(), 4) == st_series);

    CHECK_THROWS_AS(series_support_up_to(a, 12, 50), BudgetExceededError);
}

TEST_CASE("builder validates states and symbols") {
    RwtaBuilder b;
    b.add_state("q", 1);
    CHECK_THROWS_AS(b.add_state("q", 2), Error);
    CHECK_THROWS_AS(b.state("nope"), UnknownStateError);
    CHECK_THROWS_AS(b.add_transition(7, Symbol{"a", 0}, {}), UnknownStateError);
    CHECK_THROWS_AS(b.add_transition(0, Symbol{"f", 2}, {0}), ArityError);
    b.add_transition(0, Symbol{"a", 0}, {});
    b.add_transition(0, Symbol{"a", 0}, {});  // duplicates collapse: delta is a set
    Rwta a = b.build();
    CHECK(a.transitions().size() == 1);
    CHECK(a.nu(0) == 1);
    CHECK_THROWS_AS(a.nu(1), UnknownStateError);
}

TEST_CASE("debug text is deterministic") {
    Rwta a = tktest::example_rwta();
    CHECK(a.debug_text() ==
          "state 0 nu=0\n"
          "state 1 nu=3\n"
          "state 2 nu=1\n"
          "state 3 nu=2\n"
          "state 4 nu=4\n"
          "trans 0 a/0\n"
          "trans 1 f/2 0 2\n"
          "trans 2 a/0\n"
          "trans 3 f/2 2 2\n"
          "trans 4 h/1 1\n"
          "trans 4 h/1 3\n"
          "trans 4 h/1 4\n");
}
