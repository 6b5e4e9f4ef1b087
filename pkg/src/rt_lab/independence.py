"""Exact maximum independent sets: alpha, a witness, and full enumeration.

Vertices with identical neighbourhoods (false twins) are folded into one
weighted vertex before searching.  A maximum independent set either takes a
whole twin class or none of it, so alpha and the family of maximum sets are
read off the weighted quotient.  Blow-ups collapse to their base graph this
way, which is what keeps 49-vertex instances cheap.
"""
from __future__ import annotations

from dataclasses import dataclass

from rt_lab.graph import Graph, iter_bits

DEFAULT_CAP = 100_000


@dataclass(frozen=True)
class AlphaResult:
    alpha: int
    witness: int
    nodes_explored: int


@dataclass(frozen=True)
class MaxSets:
    sets: list[int]
    truncated: bool

    def __len__(self) -> int:
        return len(self.sets)

    def __iter__(self):
        return iter(self.sets)


def is_independent(g: Graph, mask: int) -> bool:
    g._check_set(mask)
    return g.is_independent(mask)


@dataclass
class _Quotient:
    adj: list[int]
    weight: list[int]
    classes: list[int]

    def expand(self, qmask: int) -> int:
        out = 0
        for i in iter_bits(qmask):
            out |= self.classes[i]
        return out


def _fold(g: Graph) -> _Quotient:
    index: dict[int, int] = {}
    classes: list[int] = []
    rep_rows: list[int] = []
    owner = [0] * g.n
    for v, row in enumerate(g.adj):
        i = index.get(row)
        if i is None:
            i = index[row] = len(classes)
            classes.append(0)
            rep_rows.append(row)
        classes[i] |= 1 << v
        owner[v] = i
    adj = []
    for row in rep_rows:
        qrow = 0
        for w in iter_bits(row):
            qrow |= 1 << owner[w]
        adj.append(qrow)
    return _Quotient(adj, [c.bit_count() for c in classes], classes)


def _cover_bound(adj: list[int], weight: list[int], cand: int) -> int:
    """Weight bound from a greedy clique cover of ``cand``."""
    total = 0
    rest = cand
    while rest:
        low = rest & -rest
        v = low.bit_length() - 1
        heaviest = weight[v]
        clique = low
        common = adj[v] & rest
        while common:
            lw = common & -common
            u = lw.bit_length() - 1
            clique |= lw
            if weight[u] > heaviest:
                heaviest = weight[u]
            common &= adj[u]
        total += heaviest
        rest &= ~clique
    return total


def _pick(adj: list[int], cand: int) -> tuple[int, int]:
    """Vertex of ``cand`` with largest residual degree (lowest index on ties)."""
    best_v, best_d = -1, -1
    for v in iter_bits(cand):
        d = (adj[v] & cand).bit_count()
        if d > best_d:
            best_v, best_d = v, d
    return best_v, best_d


class _MaxWeight:
    def __init__(self, q: _Quotient):
        self.q = q
        self.best_w = 0
        self.best_set = 0
        self.nodes = 0

    def run(self, cand: int, cur_w: int, cur: int) -> None:
        self.nodes += 1
        adj, weight = self.q.adj, self.q.weight
        # vertices with no neighbour left are always taken
        free = 0
        for v in iter_bits(cand):
            if not adj[v] & cand:
                free |= 1 << v
        if free:
            cand &= ~free
            cur |= free
            cur_w += sum(weight[v] for v in iter_bits(free))
        if not cand:
            if cur_w > self.best_w:
                self.best_w, self.best_set = cur_w, cur
            return
        if cur_w + _cover_bound(adj, weight, cand) <= self.best_w:
            return
        v, _ = _pick(adj, cand)
        bit = 1 << v
        self.run(cand & ~adj[v] & ~bit, cur_w + weight[v], cur | bit)
        self.run(cand & ~bit, cur_w, cur)


def alpha(g: Graph) -> AlphaResult:
    """Independence number with a witness, by branch and bound."""
    if g.n == 0:
        return AlphaResult(0, 0, 1)
    q = _fold(g)
    search = _MaxWeight(q)
    search.run((1 << len(q.adj)) - 1, 0, 0)
    return AlphaResult(search.best_w, q.expand(search.best_set), search.nodes)


class _Collector:
    def __init__(self, adj: list[int], weight: list[int], target: int, cap: int, maximal_only: bool):
        self.adj = adj
        self.weight = weight
        self.target = target
        self.cap = cap
        self.maximal_only = maximal_only
        self.found: list[int] = []
        self.truncated = False

    def run(self, cand: int, cur_w: int, cur: int) -> None:
        if self.truncated:
            return
        adj, weight = self.adj, self.weight
        if cur_w == self.target:
            self._emit(cur)
            return
        if self.maximal_only:
            free = 0
            for v in iter_bits(cand):
                if not adj[v] & cand:
                    free |= 1 << v
            if free:
                cand &= ~free
                cur |= free
                cur_w += sum(weight[v] for v in iter_bits(free))
                if cur_w > self.target:
                    return
                if cur_w == self.target:
                    # a set of maximum weight must be maximal
                    if not cand:
                        self._emit(cur)
                    return
        if not cand or cur_w + _cover_bound(adj, weight, cand) < self.target:
            return
        v, _ = _pick(adj, cand)
        bit = 1 << v
        if cur_w + weight[v] <= self.target:
            self.run(cand & ~adj[v] & ~bit, cur_w + weight[v], cur | bit)
        self.run(cand & ~bit, cur_w, cur)

    def _emit(self, cur: int) -> None:
        if len(self.found) >= self.cap:
            self.truncated = True
            return
        self.found.append(cur)


def enumerate_max_independent_sets(g: Graph, target: int, cap: int = DEFAULT_CAP) -> MaxSets:
    """All independent sets of exactly ``target`` vertices, ascending by mask.

    When ``target`` equals alpha(g) the search runs on the twin quotient;
    otherwise it runs on g directly.  If more than ``cap`` sets exist the
    first ``cap`` found are returned with ``truncated`` set.
    """
    if cap <= 0:
        raise ValueError("cap must be positive")
    if target < 0:
        return MaxSets([], False)
    if target == 0:
        return MaxSets([0], False)
    a = alpha(g).alpha
    if target > a:
        return MaxSets([], False)
    if target == a:
        q = _fold(g)
        col = _Collector(q.adj, q.weight, target, cap, maximal_only=True)
        col.run((1 << len(q.adj)) - 1, 0, 0)
        sets = [q.expand(m) for m in col.found]
    else:
        col = _Collector(list(g.adj), [1] * g.n, target, cap, maximal_only=False)
        col.run(g.full, 0, 0)
        sets = col.found
    return MaxSets(sorted(sets), col.truncated)
