"""Smoke tests for the python bindings."""

import numpy as np
import pytest

import treekernel as tk

T1 = "f(h(a),f(h(a),b))"
T2 = "f(h(a),h(b))"
T3 = "f(f(b,h(b)),f(h(a),h(b)))"


def test_parse_serialize_roundtrip():
    t = tk.parse_tree(" f ( h(a) , b ) ")
    assert str(t) == "f(h(a),b)"
    assert t.size == 4
    assert t.depth == 3
    assert t.name == "f"
    assert t.arity == 2
    assert tk.parse_tree(str(t)) == t
    assert str(t.child(0)) == "h(a)"


def test_parse_errors():
    with pytest.raises(tk.TreeKernelError):
        tk.parse_tree("f(a,")


def test_canonical_unordered():
    t = tk.parse_tree("f(g(b),g(a))")
    assert str(t.canonical("unordered")) == "f(g(a),g(b))"
    assert str(t.canonical("ordered")) == "f(g(b),g(a))"


def test_subtree_set_and_series():
    t = tk.parse_tree(T1)
    assert sorted(tk.subtree_set(t)) == sorted(
        ["a", "b", "h(a)", "f(h(a),b)", T1]
    )
    series = tk.subtree_series(tk.TreeLanguage.from_strings([T1]))
    assert series == {"a": 2, "b": 1, "h(a)": 2, "f(h(a),b)": 1, T1: 1}


def test_kernel_golden_value():
    x = tk.TreeLanguage.from_strings([T1, T2])
    y = tk.TreeLanguage.from_strings([T3])
    assert tk.subtree_kernel(x, y) == 15
    assert tk.brute_force_kernel(x, y) == 15
    assert tk.moschitti_kernel(tk.parse_tree(T1), tk.parse_tree(T3)) == 7


def test_automaton_and_hadamard():
    x = tk.TreeLanguage.from_strings([T1, T2])
    y = tk.TreeLanguage.from_strings([T3])
    ax = tk.StAutomaton.from_language(x)
    ay = tk.StAutomaton.from_language(y)
    assert ax.state_count == 7
    product = tk.hadamard(ax, ay)
    assert product["kernel_value"] == 15
    assert len(product["matched"]) == 5
    matched = {ax.state_tree(sx): w for sx, _, w in product["matched"]}
    assert matched == {T2: 1, "h(b)": 2, "h(a)": 3, "b": 6, "a": 3}
    assert "marked" in ax.debug_text()


def test_language_rejects_duplicates():
    with pytest.raises(tk.TreeKernelError):
        tk.TreeLanguage.from_strings(["a", "a"])
    with pytest.raises(tk.TreeKernelError):
        tk.TreeLanguage.from_strings(["f(a,b)", "f(b,a)"], mode="unordered")


def test_gram_matrix_is_symmetric_psd():
    items = [tk.TreeLanguage.from_strings([t]) for t in (T1, T2, T3)]
    labels, values = tk.gram_matrix(items, "automata")
    assert labels == ["L0", "L1", "L2"]
    m = np.array(values, dtype=float)
    assert (m == m.T).all()
    _, oracle_values = tk.gram_matrix(items, "oracle")
    assert values == oracle_values
    eig = np.linalg.eigvalsh(m)
    assert eig.min() >= -1e-6 * np.abs(eig).max()


def test_generate_language_deterministic():
    a = tk.generate_language(2, 3, 4, cardinal=25, seed=7)
    b = tk.generate_language(2, 3, 4, cardinal=25, seed=7)
    assert a.to_strings() == b.to_strings()
    assert len(a) == 25
    c = tk.generate_language(2, 3, 4, cardinal=25, seed=8)
    assert a.to_strings() != c.to_strings()


def test_expand_grid():
    configs = tk.expand_grid("DS2", seed=42)
    assert [c["max_arity"] for c in configs] == [5, 10, 15, 20]
    assert all(c["max_depth"] == 5 for c in configs)
    with pytest.raises(tk.TreeKernelError):
        tk.expand_grid("DS9")
