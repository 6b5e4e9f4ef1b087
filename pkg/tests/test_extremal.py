import pytest

from rt_lab.canon import canonical_code, is_isomorphic
from rt_lab.constructions import andrasfai, bounds, canonical_blowup, g_formula, in_band
from rt_lab.extremal import (
    ex_exact,
    extremal_properties,
    search_at_least,
    sweep_row,
    thresholds,
    verify_formulas,
)
from rt_lab.graph import Graph, Params
from rt_lab.independence import alpha

from oracles import naive_alpha, naive_graphs

NAIVE_MAX = 9


@pytest.fixture(scope="module")
def triangle_free_by_order():
    out = [[] for _ in range(NAIVE_MAX + 1)]
    for n, rows in naive_graphs(NAIVE_MAX, triangle_free=True):
        g = Graph(n, rows)
        out[n].append((g, naive_alpha(g), g.edge_count()))
    return out


def test_known_values():
    assert ex_exact(5, 2).value == 5
    assert ex_exact(7, 3).value == 10
    assert ex_exact(6, 3).value == 9
    assert ex_exact(8, 3).value == 12
    assert ex_exact(10, 4).value == 20
    assert ex_exact(11, 4).value == 22


def test_witness_examples():
    r = ex_exact(5, 2)
    assert r.witness_count == 1 and is_isomorphic(r.witnesses[0], andrasfai(2))
    r = ex_exact(11, 4)
    assert any(is_isomorphic(w, andrasfai(4)) for w in r.witnesses)
    r = ex_exact(8, 3)
    assert any(is_isomorphic(w, andrasfai(3)) for w in r.witnesses)
    r = ex_exact(10, 4)
    assert any(is_isomorphic(w, canonical_blowup(10, 2, 4).graph) for w in r.witnesses)


def test_infeasible_is_distinct():
    r = ex_exact(6, 2)
    assert r.status == "infeasible" and r.value is None
    assert ex_exact(0, 0).value == 0


def test_bad_arguments():
    with pytest.raises(ValueError):
        ex_exact(4, 5)


def test_budget_marks_result_inexact():
    r = ex_exact(12, 5, node_budget=10)
    assert r.status == "budget" and not r.exact


def test_thresholds_shape():
    f = thresholds(13, 5, 32)
    assert f[13] == 32 and f[0] == 0
    assert all(f[k - 1] <= f[k] for k in range(1, 14))


def test_oracle_equivalence_small(triangle_free_by_order):
    for n in range(NAIVE_MAX + 1):
        for s in range(n + 1):
            fam = [(g, e) for g, a, e in triangle_free_by_order[n] if a <= s]
            res = ex_exact(n, s)
            if not fam:
                assert res.status == "infeasible"
                continue
            best = max(e for _, e in fam)
            assert res.value == best, (n, s)
            expected = {canonical_code(n, g.adj) for g, e in fam if e == best}
            got = {canonical_code(n, w.adj) for w in res.witnesses}
            assert got == expected and res.witness_count == len(expected)


def test_search_at_least_lists_every_graph(triangle_free_by_order):
    n, s, target = 8, 4, 10
    graphs, _ = search_at_least(n, s, target)
    expected = sorted(canonical_code(n, g.adj) for g, a, e in triangle_free_by_order[n] if a <= s and e >= target)
    assert graphs == expected


@pytest.mark.parametrize("n", range(0, 13))
def test_sweep_properties(n):
    rows = verify_formulas(n)
    assert [r.s for r in rows] == list(range(n + 1))
    prev = None
    for r in rows:
        assert r.ok
        if r.ex is not None:
            assert r.ex <= r.s * n // 2
            if prev is not None:
                assert r.ex >= prev
            prev = r.ex
            for w in r.witnesses:
                assert w.is_triangle_free() and alpha(w).alpha <= r.s and w.edge_count() == r.ex
        for k in (2, 3, 4):
            if in_band(n, k, r.s) and r.ex is not None:
                assert r.ex >= g_formula(k, n, r.s)


def test_threads_do_not_change_results():
    a = ex_exact(12, 4, threads=1)
    b = ex_exact(12, 4, threads=3)
    assert (a.value, a.witness_count, a.nodes) == (b.value, b.witness_count, b.nodes)
    assert [w.adj for w in a.witnesses] == [w.adj for w in b.witnesses]


def test_g_cap_outside_closed_forms():
    # s = 4 at n = 12 lies below every band with a closed form
    row = sweep_row(12, 4)
    assert row.formula is None
    assert row.ex == 24 and row.g_cap == bounds(12, 4).g_cap
    assert row.cap_ok is True


def test_extremal_properties_examples():
    rep = extremal_properties(canonical_blowup(19, 4, 7).graph, Params(19, 7))
    assert rep["low_degree_count"] == 1 and rep["low_degree_ok"] is True
    assert rep["fortress_triangle_free"] is True
    rep = extremal_properties(andrasfai(4), Params(11, 4))
    assert rep["low_degree_count"] == 11 and rep["low_degree_ok"] is None
    for w in ex_exact(8, 3).witnesses:
        assert extremal_properties(w, Params(8, 3))["fortress_triangle_free"] is True


def test_extremal_properties_rejects_bad_input():
    with pytest.raises(ValueError):
        extremal_properties(andrasfai(4), Params(11, 5))
