"""Exact Ramsey-Turán numbers ex(n, s) for triangle-free graphs.

The search builds graphs one vertex at a time, up to isomorphism, always
adding a vertex of minimum degree.  Removing a minimum-degree vertex from a
graph with e edges leaves at least e - min(s, floor(2e/k)) edges, so a graph
with at least T edges on n vertices has an ordering whose k-vertex prefixes
all carry at least f_k edges, with f_n = T.  Each level keeps only the
prefixes meeting that threshold.

A new vertex may only be joined to an independent set (triangle-freeness)
that meets every independent s-set of the current graph (alpha stays <= s).
Isomorphic graphs are merged per level by canonical form.  The edge target
T starts at the best known upper bound and descends until a graph is found.
"""
from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from rt_lab.canon import canonical_code
from rt_lab.constructions import andrasfai, bounds, canonical_blowup, closed_form, in_band
from rt_lab.fortress import build_fortress, find_imprint, fortress_checks
from rt_lab.graph import Graph, Params, complete_bipartite, iter_bits
from rt_lab.independence import alpha

DEFAULT_NODE_BUDGET = 10**9
DEFAULT_WITNESS_CAP = 100


@dataclass
class ExResult:
    n: int
    s: int
    value: int | None
    status: str  # "exact", "infeasible" or "budget"
    witnesses: list[Graph] = field(default_factory=list)
    witness_count: int = 0
    nodes: int = 0
    seconds: float = 0.0
    lower_bound: int | None = None

    @property
    def exact(self) -> bool:
        return self.status != "budget"


def thresholds(n: int, s: int, target: int) -> list[int]:
    """f[k] = least edge count of a k-vertex prefix of a graph with >= target edges."""
    f = [0] * (n + 1)
    if n == 0:
        f[0] = target
        return f
    f[n] = target
    for k in range(n, 1, -1):
        f[k - 1] = max(0, f[k] - min(s, 2 * f[k] // k))
    f[0] = 0
    return f


def _independent_sets(adj: tuple[int, ...], size: int) -> list[int]:
    """All independent sets of exactly ``size`` vertices."""
    out: list[int] = []
    if size == 0:
        return [0]

    def grow(cand: int, cur: int, left: int) -> None:
        if left == 0:
            out.append(cur)
            return
        while cand and cand.bit_count() >= left:
            low = cand & -cand
            v = low.bit_length() - 1
            cand ^= low
            grow(cand & ~adj[v], cur | low, left - 1)

    grow((1 << len(adj)) - 1, 0, size)
    return out


class _Budget(Exception):
    pass


def _children(adj: tuple[int, ...], s: int, need: int, budget: int) -> tuple[list[tuple[int, ...]], int]:
    """Canonical codes of the admissible one-vertex extensions of ``adj``.

    ``need`` is the edge threshold for the child; the new vertex must have
    minimum degree in the child.
    """
    m = len(adj)
    deg = [row.bit_count() for row in adj]
    e = sum(deg) // 2
    d_lo = max(0, need - e)
    d_hi = min(s, min(deg) + 1) if m else 0
    if d_lo > d_hi:
        return [], 1
    family = _independent_sets(adj, s) if m >= s else []
    nodes = 1
    out = []
    new_bit = 1 << m
    for d in range(d_lo, d_hi + 1):
        forced = 0
        allowed = 0
        for u in range(m):
            if deg[u] == d - 1:
                forced |= 1 << u
            elif deg[u] >= d:
                allowed |= 1 << u
        if forced.bit_count() > d:
            continue
        blocked = False
        nbr = 0
        for u in iter_bits(forced):
            if adj[u] & forced:
                blocked = True
                break
            nbr |= adj[u]
        if blocked:
            continue
        picks: list[int] = []

        def choose(cand: int, cur: int, left: int) -> None:
            nonlocal nodes
            nodes += 1
            if nodes > budget:
                raise _Budget
            if left == 0:
                picks.append(cur)
                return
            while cand and cand.bit_count() >= left:
                low = cand & -cand
                v = low.bit_length() - 1
                cand ^= low
                # every independent s-set must still be hittable
                reach = cur | low | cand & ~adj[v]
                if all(x & reach for x in family):
                    choose(cand & ~adj[v], cur | low, left - 1)

        if family and not all(x & (forced | allowed & ~nbr) for x in family):
            continue
        choose(allowed & ~nbr, forced, d - forced.bit_count())
        for nb in picks:
            if not all(x & nb for x in family):
                continue
            rows = [adj[u] | new_bit if nb >> u & 1 else adj[u] for u in range(m)]
            rows.append(nb)
            out.append(canonical_code(m + 1, rows))
    return out, nodes


def _expand_chunk(args) -> tuple[list[tuple[int, ...]], int, bool]:
    parents, s, need, budget = args
    codes: list[tuple[int, ...]] = []
    nodes = 0
    try:
        for adj in parents:
            kids, used = _children(adj, s, need, budget - nodes)
            codes.extend(kids)
            nodes += used
    except _Budget:
        return codes, budget + 1, True
    return codes, nodes, False


def search_at_least(n: int, s: int, target: int, node_budget: int = DEFAULT_NODE_BUDGET,
                    threads: int = 1) -> tuple[list[tuple[int, ...]], int]:
    """All triangle-free graphs (up to isomorphism, as canonical rows) on n
    vertices with alpha <= s and at least ``target`` edges.

    Raises _Budget when more than ``node_budget`` nodes are needed.
    """
    f = thresholds(n, s, target)
    level: list[tuple[int, ...]] = [()]
    nodes = 0
    pool = ProcessPoolExecutor(threads) if threads > 1 else None
    try:
        for k in range(1, n + 1):
            found: set[tuple[int, ...]] = set()
            if pool is None:
                codes, used, over = _expand_chunk((level, s, f[k], node_budget - nodes))
                chunks = [(codes, used, over)]
            else:
                size = max(1, -(-len(level) // (threads * 4)))
                parts = [(level[i:i + size], s, f[k], node_budget - nodes) for i in range(0, len(level), size)]
                chunks = list(pool.map(_expand_chunk, parts))
            for codes, used, over in chunks:
                nodes += used
                if over:
                    raise _Budget
                found.update(codes)
            if nodes > node_budget:
                raise _Budget
            level = sorted(found)
            if not level:
                break
    finally:
        if pool is not None:
            pool.shutdown()
    return level, nodes


def construction_lower_bound(n: int, s: int) -> tuple[int, Graph] | None:
    """Best edge count among complete bipartite graphs and canonical blow-ups
    that are triangle-free with alpha <= s."""
    best = None
    if n and 2 * s >= n:
        a, b = (n + 1) // 2, n // 2
        if a <= s:
            g = complete_bipartite(a, b)
            best = (g.edge_count(), g)
    for k in range(2, 22):
        if not in_band(n, k, s):
            continue
        g = canonical_blowup(n, k, s).graph
        if alpha(g).alpha <= s and (best is None or g.edge_count() > best[0]):
            best = (g.edge_count(), g)
    return best


def ex_exact(n: int, s: int, witness_cap: int = DEFAULT_WITNESS_CAP,
             node_budget: int = DEFAULT_NODE_BUDGET, threads: int = 1) -> ExResult:
    """Exact ex(n, s) with all extremal graphs up to isomorphism (capped)."""
    if not 0 <= s <= n:
        raise ValueError("need 0 <= s <= n")
    started = time.perf_counter()
    b = bounds(n, s)
    upper = min(b.trivial, n * n // 4)
    if b.g_cap is not None:
        upper = min(upper, b.g_cap)
    seed = construction_lower_bound(n, s)
    lower = seed[0] if seed else None
    nodes = 0
    target = upper
    while target >= 0:
        try:
            graphs, used = search_at_least(n, s, target, node_budget - nodes, threads)
        except _Budget:
            return ExResult(n, s, lower, "budget", nodes=node_budget,
                            seconds=time.perf_counter() - started, lower_bound=lower)
        nodes += used
        if graphs:
            counts = [sum(r.bit_count() for r in rows) // 2 for rows in graphs]
            value = max(counts)
            best = [rows for rows, c in zip(graphs, counts) if c == value]
            return ExResult(
                n, s, value, "exact",
                witnesses=[Graph(n, rows) for rows in best[:witness_cap]],
                witness_count=len(best), nodes=nodes,
                seconds=time.perf_counter() - started, lower_bound=lower,
            )
        if lower is not None and target <= lower:
            raise AssertionError(f"construction with {lower} edges missed by the search")
        target -= 1
    return ExResult(n, s, None, "infeasible", nodes=nodes,
                    seconds=time.perf_counter() - started, lower_bound=lower)


@dataclass
class SweepRow:
    n: int
    s: int
    ex: int | None
    status: str
    formula: str | None
    formula_value: int | None
    match: bool | None
    g_cap: int | None
    cap_ok: bool | None
    witness_count: int
    nodes: int
    millis: int
    witnesses: list[Graph] = field(default_factory=list, repr=False)

    @property
    def ok(self) -> bool:
        return self.status != "budget" and self.match is not False and self.cap_ok is not False


def sweep_row(n: int, s: int, node_budget: int = DEFAULT_NODE_BUDGET, threads: int = 1,
              witness_cap: int = DEFAULT_WITNESS_CAP) -> SweepRow:
    res = ex_exact(n, s, witness_cap=witness_cap, node_budget=node_budget, threads=threads)
    form = closed_form(n, s)
    cap = bounds(n, s).g_cap
    match = None
    if form is not None and res.status != "budget":
        match = res.value == form[1]
    cap_ok = None
    if cap is not None and res.value is not None and res.exact:
        cap_ok = res.value <= cap
    return SweepRow(
        n=n, s=s, ex=res.value, status=res.status,
        formula=form[0] if form else None, formula_value=form[1] if form else None,
        match=match, g_cap=cap, cap_ok=cap_ok, witness_count=res.witness_count,
        nodes=res.nodes, millis=round(res.seconds * 1000), witnesses=res.witnesses,
    )


def verify_formulas(n: int, node_budget: int = DEFAULT_NODE_BUDGET, threads: int = 1,
                    s_values=None) -> list[SweepRow]:
    """One row per s in 0..n comparing the exact value with the closed forms."""
    values = range(n + 1) if s_values is None else s_values
    return [sweep_row(n, s, node_budget, threads) for s in values]


def extremal_properties(g: Graph, params: Params) -> dict:
    """Structural checks expected of an extremal graph in 𝔈(n, s).

    Checks whose hypotheses fail are reported as None (not applicable).
    """
    n, s = params.n, params.s
    if g.n != n:
        raise ValueError("graph and params disagree on n")
    if not g.is_triangle_free():
        raise ValueError("graph has a triangle")
    if alpha(g).alpha != s:
        raise ValueError("needs alpha(G) = s")
    low = 4 * n - 10 * s
    q = sum(1 for d in g.degrees() if d <= low)
    lemma_q = Fraction(4 * n, 11) < s < Fraction(3 * n, 8)
    fortress = build_fortress(g, s)
    checks = fortress_checks(fortress)
    report = {
        "n": n,
        "s": s,
        "edges": g.edge_count(),
        "low_degree_count": q,
        "low_degree_ok": (q < 3 * s - n) if lemma_q else None,
        "fortress_size": len(fortress),
        "fortress_has_edge": fortress.edge_count() > 0 if n >= 2 * s else None,
        "fortress_triangle_free": checks.triangle_free if 3 * s > n else None,
        "probe_fortress_bipartite": checks.bipartition is not None,
        "probe_pentagon_imprint": find_imprint(fortress, andrasfai(2)) is not None,
    }
    return report
