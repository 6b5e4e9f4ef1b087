"""Generalised Zykov symmetrisation and the imprint-to-mould procedure."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import linear_sum_assignment

from rt_lab.constructions import andrasfai
from rt_lab.fortress import Imprint, Mould, MouldReport, build_fortress, check_mould
from rt_lab.graph import Graph, Params, iter_bits, members
from rt_lab.independence import alpha


def sym(g: Graph, a: int, b: int) -> Graph:
    """Delete every edge meeting ``b``, then join ``a`` completely to ``b``."""
    g._check_set(a)
    g._check_set(b)
    if a & b:
        raise ValueError("A and B must be disjoint")
    rows = []
    for v, row in enumerate(g.adj):
        if b >> v & 1:
            rows.append(a)
        elif a >> v & 1:
            rows.append((row & ~b) | b)
        else:
            rows.append(row & ~b)
    return Graph(g.n, tuple(rows))


@dataclass(frozen=True)
class Matching:
    pairs: tuple[tuple[int, int], ...]
    covered: int

    def __len__(self) -> int:
        return len(self.pairs)


def _hopcroft_karp(g: Graph, left: list[int], right_mask: int) -> dict[int, int]:
    nbrs = {u: members(g.adj[u] & right_mask) for u in left}
    match_l: dict[int, int] = {}
    match_r: dict[int, int] = {}
    inf = len(left) + 1

    while True:
        dist = {}
        queue = deque()
        for u in left:
            if u not in match_l:
                dist[u] = 0
                queue.append(u)
        limit = inf
        while queue:
            u = queue.popleft()
            if dist[u] >= limit:
                continue
            for w in nbrs[u]:
                nxt = match_r.get(w)
                if nxt is None:
                    limit = min(limit, dist[u] + 1)
                elif nxt not in dist:
                    dist[nxt] = dist[u] + 1
                    queue.append(nxt)
        if limit == inf:
            return match_l

        def augment(u: int) -> bool:
            for w in nbrs[u]:
                nxt = match_r.get(w)
                if (nxt is None and dist[u] + 1 == limit) or (
                    nxt is not None and dist.get(nxt) == dist[u] + 1 and augment(nxt)
                ):
                    match_l[u] = w
                    match_r[w] = u
                    return True
            dist[u] = inf
            return False

        for u in left:
            if u not in match_l:
                augment(u)


def max_matching(g: Graph, u_set: int, w_set: int, prefer: int | None = None) -> Matching:
    """Maximum matching between ``u_set`` and ``w_set`` using edges of g.

    With ``prefer``, among all maximum matchings one covering as many
    preferred vertices as possible is returned.
    """
    if u_set & w_set:
        raise ValueError("U and W must be disjoint")
    left = members(u_set)
    if prefer is None:
        pairs = sorted(_hopcroft_karp(g, left, w_set).items())
    else:
        right = members(w_set)
        if not left or not right:
            pairs = []
        else:
            # cardinality dominates: each edge is worth more than any preference gain
            big = 2 * min(len(left), len(right)) + 1
            weight = np.zeros((len(left), len(right)), dtype=np.int64)
            for i, u in enumerate(left):
                for j, w in enumerate(right):
                    if g.adj[u] >> w & 1:
                        weight[i, j] = big + (prefer >> u & 1) + (prefer >> w & 1)
            rows, cols = linear_sum_assignment(weight, maximize=True)
            pairs = sorted((left[i], right[j]) for i, j in zip(rows, cols) if weight[i, j] > 0)
    covered = 0
    for u, w in pairs:
        covered |= 1 << u | 1 << w
    return Matching(tuple(pairs), covered)


def _select(g: Graph, a1: int, a2: int, size: int, prefer: int | None, must_include: int) -> tuple[int, Matching]:
    if a1 & a2:
        raise ValueError("A1 and A2 must be disjoint")
    if must_include & ~a2:
        raise ValueError("must_include has to lie inside A2")
    rest = g.full & ~(a1 | a2)
    m = max_matching(g, rest, a2, prefer)
    free = a2 & ~m.covered
    if must_include & ~free:
        raise ValueError("must_include meets vertices covered by the matching")
    if size > free.bit_count():
        raise ValueError(f"only {free.bit_count()} unmatched vertices in A2, requested {size}")
    b = must_include
    for v in iter_bits(free & ~must_include):
        if b.bit_count() >= size:
            break
        b |= 1 << v
    if b.bit_count() != size:
        raise ValueError("must_include is larger than the requested size")
    return b, m


def select_B(g: Graph, a1: int, a2: int, size: int, prefer: int | None = None, must_include: int = 0) -> int:
    """A ``size``-subset of A2 missed by a maximum matching from V - (A1+A2) into A2.

    The lowest-index unmatched vertices are taken (after ``must_include``).
    """
    return _select(g, a1, a2, size, prefer, must_include)[0]


@dataclass(frozen=True)
class SymReport:
    result: Graph
    triangle_free: bool
    alpha_ok: bool
    edges_preserved: bool

    @property
    def ok(self) -> bool:
        return self.triangle_free and self.alpha_ok and self.edges_preserved

    def flags(self) -> dict[str, bool]:
        return {
            "triangle_free": self.triangle_free,
            "alpha_ok": self.alpha_ok,
            "edges_preserved": self.edges_preserved,
        }


def sym_checked(g: Graph, params: Params, a1: int, b: int) -> SymReport:
    out = sym(g, a1, b)
    return SymReport(
        result=out,
        triangle_free=out.is_triangle_free(),
        alpha_ok=alpha(out).alpha <= params.s,
        edges_preserved=out.edge_count() == g.edge_count(),
    )


class CanonisationError(RuntimeError):
    def __init__(self, step: int, message: str, trace: list[dict]):
        super().__init__(f"step {step}: {message}")
        self.step = step
        self.trace = trace


@dataclass
class Canonisation:
    graph: Graph
    mould: Mould
    report: MouldReport
    trace: list[dict] = field(default_factory=list)


def _pattern_k(pattern: Graph) -> int:
    if pattern.n % 3 != 2:
        raise ValueError("pattern is not an Andrásfai graph")
    k = (pattern.n + 1) // 3
    if pattern.adj != andrasfai(k).adj:
        raise ValueError("imprint pattern must be Gamma_k with its residue labelling")
    return k


def _invariant_failures(g: Graph, params: Params, k: int, a: list[int], b: dict[int, int]) -> list[str]:
    m = 3 * k - 1
    s, small = params.s, params.small
    bad = []
    for i, x in enumerate(a):
        if x.bit_count() != s or not g.is_independent(x):
            bad.append(f"A{i} is not an independent {s}-set")
    for i in range(m):
        for j in range(i + 1, m):
            if ((j - i) % m in range(k, 2 * k)) != (not a[i] & a[j]):
                bad.append(f"A{i}, A{j} violate the imprint condition")
    done = sorted(b)
    for ell in done:
        bl = b[ell]
        if bl.bit_count() != small or not g.is_independent(bl):
            bad.append(f"B{ell} is not an independent {small}-set")
        for d in range(k, 2 * k):
            if bl & ~a[(ell + d) % m]:
                bad.append(f"B{ell} not inside A{(ell + d) % m}")
        if not all(g.adj[z] & a[ell] == a[ell] for z in iter_bits(bl)):
            bad.append(f"K(A{ell}, B{ell}) missing edges")
        for j in range(m):
            inside = bl & a[j] == bl
            meets = bool(bl & a[j])
            apart = not a[ell] & a[j]
            if not inside == meets == apart:
                bad.append(f"B{ell}, A{j} break the containment equivalence")
    for x in range(len(done)):
        for y in range(x + 1, len(done)):
            if b[done[x]] & b[done[y]]:
                bad.append(f"B{done[x]} and B{done[y]} overlap")
    return bad


def imprint_to_mould(g: Graph, params: Params, imprint: Imprint) -> Canonisation:
    """Turn a Gamma_k-imprint into a Gamma_k-mould by repeated symmetrisation.

    Step r processes residue l = r+1 (mod 3k-1): B_l is chosen inside
    A_{l+k} against A_l and the graph is replaced by Sym(G | A_l, B_l).
    Loop invariants and the membership proxies (triangle-free, alpha <= s,
    edge count unchanged) are recomputed after every step; any violation
    raises CanonisationError carrying the trace so far.
    """
    n, s = params.n, params.s
    if g.n != n:
        raise ValueError("graph and params disagree on n")
    if not (3 * s > n and 2 * s <= n):
        raise ValueError("needs n/3 < s <= n/2")
    if alpha(g).alpha != s:
        raise ValueError("needs alpha(G) = s")
    k = _pattern_k(imprint.pattern)
    m = 3 * k - 1
    a = list(imprint.phi)
    b: dict[int, int] = {}
    trace: list[dict] = []
    bad = _invariant_failures(g, params, k, a, b)
    if bad:
        raise CanonisationError(0, "; ".join(bad), trace)
    for r in range(m):
        ell = (r + 1) % m
        target = (ell + k) % m
        try:
            chosen, matching = _select(g, a[ell], a[target], params.small, None, 0)
        except ValueError as exc:
            raise CanonisationError(r, str(exc), trace) from exc
        rep = sym_checked(g, params, a[ell], chosen)
        step = {
            "step": r,
            "a_index": ell,
            "b_inside": target,
            "matching_size": len(matching),
            "B": members(chosen),
            "proxies": rep.flags(),
            "edges": rep.result.edge_count(),
        }
        trace.append(step)
        if not rep.ok:
            raise CanonisationError(r, f"membership proxies failed: {rep.flags()}", trace)
        g = rep.result
        b[ell] = chosen
        bad = _invariant_failures(g, params, k, a, b)
        step["invariants_ok"] = not bad
        if bad:
            raise CanonisationError(r, "; ".join(bad), trace)
    fortress = build_fortress(g, s)
    index = tuple(fortress.index(x) for x in a)
    mould = Mould(Imprint(imprint.pattern, index, tuple(a)), tuple(b[i] for i in range(m)))
    report = check_mould(g, params, mould, fortress)
    return Canonisation(g, mould, report, trace)
