"""Fortresses, imprints and moulds.

The fortress of G has one vertex per maximum independent set of G, two of
them adjacent when the sets are disjoint.  An imprint of a pattern H is an
induced embedding of H into the fortress; a mould additionally attaches to
every pattern vertex x a class of 3s-n vertices whose neighbourhood is
exactly the imprinted set.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from rt_lab.canon import is_isomorphic
from rt_lab.constructions import andrasfai, g_formula
from rt_lab.graph import Graph, Params, iter_bits, members, rows_triangle_free, rows_two_coloring
from rt_lab.independence import DEFAULT_CAP, alpha, enumerate_max_independent_sets

DEFAULT_NODE_BUDGET = 10_000_000


class BudgetExhausted(RuntimeError):
    """A search hit its node budget before finishing; the answer is unknown."""


@dataclass(frozen=True)
class Fortress:
    params: Params
    members: tuple[int, ...]
    adj: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.members)

    def index(self, mask: int) -> int:
        return self.members.index(mask)

    def edge_count(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    def as_graph(self) -> Graph:
        return Graph(len(self.members), self.adj)

    def to_json(self) -> dict:
        return {
            "n": self.params.n,
            "s": self.params.s,
            "members": [members(m) for m in self.members],
            "edges": [[i, j] for i in range(len(self.adj)) for j in iter_bits(self.adj[i]) if i < j],
        }


@dataclass(frozen=True)
class Imprint:
    pattern: Graph
    index: tuple[int, ...]
    phi: tuple[int, ...]

    def to_json(self) -> dict:
        return {"index": list(self.index), "phi": [members(m) for m in self.phi]}


@dataclass(frozen=True)
class Mould:
    imprint: Imprint
    psi: tuple[int, ...]

    @property
    def pattern(self) -> Graph:
        return self.imprint.pattern

    @property
    def phi(self) -> tuple[int, ...]:
        return self.imprint.phi

    def to_json(self) -> dict:
        return {**self.imprint.to_json(), "psi": [members(m) for m in self.psi]}


def fortress_from_sets(params: Params, sets: list[int]) -> Fortress:
    sets = sorted(sets)
    adj = []
    for x in sets:
        row = 0
        for j, y in enumerate(sets):
            if not x & y:
                row |= 1 << j
        adj.append(row)
    return Fortress(params, tuple(sets), tuple(adj))


def build_fortress(g: Graph, s: int, cap: int = DEFAULT_CAP) -> Fortress:
    a = alpha(g).alpha
    if a != s:
        raise ValueError(f"fortress needs s = alpha(G); got s={s}, alpha={a}")
    found = enumerate_max_independent_sets(g, s, cap)
    if found.truncated:
        raise RuntimeError(f"more than {cap} maximum independent sets")
    return fortress_from_sets(Params(g.n, s), found.sets)


@dataclass(frozen=True)
class FortressChecks:
    triangle_free: bool
    bipartition: list[int] | None


def fortress_checks(f: Fortress) -> FortressChecks:
    return FortressChecks(rows_triangle_free(f.adj), rows_two_coloring(f.adj))


def _embed(pattern: Graph, adj: tuple[int, ...], candidates: int, budget: int) -> tuple[int, ...] | None:
    """First induced embedding of ``pattern`` into the graph ``adj``.

    Pattern vertices are placed in index order, each onto the lowest-index
    admissible target.  Raises BudgetExhausted after ``budget`` nodes.
    """
    k = pattern.n
    if k == 0:
        return ()
    pdeg = pattern.degrees()
    tdeg = [(row & candidates).bit_count() for row in adj]
    allowed = []
    for x in range(k):
        mask = 0
        for v in iter_bits(candidates):
            if tdeg[v] >= pdeg[x]:
                mask |= 1 << v
        allowed.append(mask)
    image = [0] * k
    nodes = 0

    def extend(x: int, used: int) -> bool:
        nonlocal nodes
        if x == k:
            return True
        pool = allowed[x] & ~used
        for y in range(x):
            if pattern.adj[x] >> y & 1:
                pool &= adj[image[y]]
            else:
                pool &= ~adj[image[y]]
        for v in iter_bits(pool):
            nodes += 1
            if nodes > budget:
                raise BudgetExhausted(f"imprint search exceeded {budget} nodes")
            image[x] = v
            if extend(x + 1, used | 1 << v):
                return True
        return False

    if extend(0, 0):
        return tuple(image)
    return None


def find_imprint(f: Fortress, pattern: Graph, budget: int = DEFAULT_NODE_BUDGET) -> Imprint | None:
    if pattern.n > len(f):
        return None
    index = _embed(pattern, f.adj, (1 << len(f)) - 1, budget)
    if index is None:
        return None
    return Imprint(pattern, index, tuple(f.members[i] for i in index))


def _check_mould_params(g: Graph, params: Params) -> None:
    if g.n != params.n:
        raise ValueError(f"graph has {g.n} vertices, params say n={params.n}")
    if 3 * params.s <= params.n:
        raise ValueError("moulds need s > n/3")


def neighbourhood_pools(g: Graph) -> dict[int, int]:
    """Map each neighbourhood mask to the set of vertices having it."""
    pools: dict[int, int] = {}
    for v, row in enumerate(g.adj):
        pools[row] = pools.get(row, 0) | 1 << v
    return pools


def find_mould(g: Graph, params: Params, pattern: Graph, fortress: Fortress | None = None,
               budget: int = DEFAULT_NODE_BUDGET) -> Mould | None:
    """First H-mould in canonical search order, or None if none exists.

    A fortress member X is usable as an image only if at least 3s-n vertices
    have neighbourhood exactly X; psi takes the lowest-index such vertices.
    """
    _check_mould_params(g, params)
    f = fortress if fortress is not None else build_fortress(g, params.s)
    need = params.small
    pools = neighbourhood_pools(g)
    usable = 0
    for i, x in enumerate(f.members):
        if pools.get(x, 0).bit_count() >= need:
            usable |= 1 << i
    if pattern.n > usable.bit_count():
        return None
    index = _embed(pattern, f.adj, usable, budget)
    if index is None:
        return None
    phi = tuple(f.members[i] for i in index)
    psi = []
    for x in phi:
        psi.append(sum(1 << v for v in members(pools[x])[:need]))
    return Mould(Imprint(pattern, index, phi), tuple(psi))


@dataclass
class MouldReport:
    """Pass/fail per check; None marks a check whose hypothesis does not apply."""

    items: dict[str, bool | None] = field(default_factory=dict)
    notes: dict[str, str] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(v is not False for v in self.items.values())

    def failed(self) -> list[str]:
        return [k for k, v in self.items.items() if v is False]

    def to_json(self) -> dict:
        return {"ok": self.ok, "items": self.items, "notes": self.notes}


def induced_claws(h: Graph) -> list[tuple[int, int, int, int]]:
    out = []
    for c in range(h.n):
        for a, b, d in combinations(members(h.adj[c]), 3):
            if not (h.has_edge(a, b) or h.has_edge(a, d) or h.has_edge(b, d)):
                out.append((c, a, b, d))
    return out


def check_mould(g: Graph, params: Params, mould: Mould, fortress: Fortress | None = None) -> MouldReport:
    """Verify a mould against its definition and its standard consequences.

    definition: (M1) induced imprint, (M2) psi classes independent of size
    3s-n, (M3) every psi vertex has neighbourhood exactly phi.
    a: psi classes pairwise disjoint.
    b: for every fortress member X and pattern vertex y,
       psi(y) <= X  <=>  psi(y) & X  <=>  phi(y) & X empty.
    c: the union of the psi classes induces the blow-up of H on them.
    d: (11s > 4n) every fortress edge XY meets some phi(i), phi(j), phi(k)
       by a fortress edge, for all distinct i, j, k.
    e: (11s > 4n) the phi-image of every induced claw of H dominates the fortress.
    """
    n, s = params.n, params.s
    h = mould.pattern
    phi, psi = mould.phi, mould.psi
    rep = MouldReport()
    f = fortress if fortress is not None else build_fortress(g, s)
    member_set = set(f.members)

    m1 = len(set(phi)) == h.n and all(x in member_set for x in phi)
    if m1:
        for x in range(h.n):
            for y in range(x + 1, h.n):
                if h.has_edge(x, y) != (not phi[x] & phi[y]):
                    m1 = False
    rep.items["M1"] = m1
    rep.items["M2"] = all(b.bit_count() == params.small and g.is_independent(b) for b in psi)
    rep.items["M3"] = all(g.adj[z] == phi[x] for x in range(h.n) for z in iter_bits(psi[x]))

    rep.items["a"] = all(not psi[x] & psi[y] for x in range(h.n) for y in range(x + 1, h.n))

    ok_b = True
    for x in f.members:
        for y in range(h.n):
            i = psi[y] & x == psi[y]
            ii = bool(psi[y] & x)
            iii = not phi[y] & x
            if not (i == ii == iii):
                ok_b = False
    rep.items["b"] = ok_b

    ok_c = all(g.is_independent(b) for b in psi)
    for x in range(h.n):
        for y in range(x + 1, h.n):
            if h.has_edge(x, y):
                ok_c &= not psi[x] & psi[y] and g.is_fully_joined(psi[x], psi[y])
            else:
                ok_c &= not any(g.adj[z] & psi[y] for z in iter_bits(psi[x]))
    rep.items["c"] = ok_c

    dense = 11 * s > 4 * n
    if not dense:
        rep.items["d"] = None
        rep.items["e"] = None
        rep.notes["d"] = rep.notes["e"] = "needs s > 4n/11"
        return rep

    img = [f.index(x) if x in member_set else -1 for x in phi]
    ok_d = True
    triples = list(combinations(range(h.n), 3))
    for u in range(len(f)):
        for v in iter_bits(f.adj[u] >> (u + 1) << (u + 1)):
            reach = f.adj[u] | f.adj[v]
            for a, b, c in triples:
                if not any(img[t] >= 0 and reach >> img[t] & 1 for t in (a, b, c)):
                    ok_d = False
    rep.items["d"] = ok_d

    claws = induced_claws(h)
    if not claws:
        rep.items["e"] = None
        rep.notes["e"] = "pattern has no induced claw"
    else:
        everyone = (1 << len(f)) - 1
        ok_e = True
        for claw in claws:
            dom = 0
            for t in claw:
                if img[t] >= 0:
                    dom |= f.adj[img[t]] | 1 << img[t]
            ok_e &= dom == everyone
        rep.items["e"] = ok_e
    return rep


@dataclass(frozen=True)
class MouldStats:
    eW: int
    eW_Wbar: int
    eWbar: int
    heavy_count: int
    bound_ok: bool

    @property
    def total(self) -> int:
        return self.eW + self.eW_Wbar + self.eWbar


def mould_stats(g: Graph, params: Params, mould: Mould) -> MouldStats:
    """Edge census of G around the union W of the classes of a Gamma_3-mould."""
    n, s = params.n, params.s
    if g.n != n:
        raise ValueError("graph and params disagree on n")
    if not (Fraction(4 * n, 11) < s < Fraction(3 * n, 8)):
        raise ValueError(f"needs 4n/11 < s < 3n/8, got n={n}, s={s}")
    if not is_isomorphic(mould.pattern, andrasfai(3)):
        raise ValueError("mould pattern is not Gamma_3")
    if alpha(g).alpha != s:
        raise ValueError("needs alpha(G) = s")
    w = 0
    for b in mould.psi:
        w |= b
    wbar = g.full & ~w
    heavy = 0
    for z in iter_bits(wbar):
        inside = g.adj[z] & w
        hit = [b for b in mould.psi if b & inside]
        if len(hit) == 3 and inside == hit[0] | hit[1] | hit[2]:
            heavy += 1
    return MouldStats(
        eW=g.edges_within(w),
        eW_Wbar=g.edges_between(w, wbar),
        eWbar=g.edges_within(wbar),
        heavy_count=heavy,
        bound_ok=g.edge_count() <= g_formula(4, n, s),
    )
