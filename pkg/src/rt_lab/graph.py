"""Bit-parallel simple graphs on at most 64 vertices.

A graph is stored as one integer bitmask per vertex; vertex sets are plain
integer masks over the same universe.  Everything here is immutable.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

MAX_VERTICES = 64


class CapacityError(ValueError):
    """Raised when a graph would need more than ``MAX_VERTICES`` vertices."""


def vset(vertices: Iterable[int]) -> int:
    """Pack an iterable of vertex indices into a mask."""
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def members(mask: int) -> list[int]:
    """Ascending list of the vertices in ``mask``."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return mask.bit_count()


def rows_triangle_free(adj: Sequence[int]) -> bool:
    """True iff the graph given by adjacency rows has no triangle.

    Works on rows of any width, so fortresses with more than 64 members can
    use it as well.
    """
    for u, row in enumerate(adj):
        for v in iter_bits(row >> (u + 1) << (u + 1)):
            if row & adj[v]:
                return False
    return True


def rows_two_coloring(adj: Sequence[int]) -> list[int] | None:
    """BFS 2-colouring of the graph given by ``adj``; None if not bipartite."""
    color = [-1] * len(adj)
    for root in range(len(adj)):
        if color[root] >= 0:
            continue
        color[root] = 0
        queue = [root]
        for u in queue:
            for w in iter_bits(adj[u]):
                if color[w] < 0:
                    color[w] = 1 - color[u]
                    queue.append(w)
                elif color[w] == color[u]:
                    return None
    return color


@dataclass(frozen=True)
class Graph:
    n: int
    adj: tuple[int, ...]

    def __post_init__(self) -> None:
        if not 0 <= self.n <= MAX_VERTICES:
            raise CapacityError(f"graph on {self.n} vertices exceeds capacity {MAX_VERTICES}")
        if len(self.adj) != self.n:
            raise ValueError("need exactly one adjacency row per vertex")
        full = (1 << self.n) - 1
        for v, row in enumerate(self.adj):
            if row & ~full:
                raise ValueError(f"row {v} has bits outside the vertex range")
            if row >> v & 1:
                raise ValueError(f"self-loop at vertex {v}")
            for w in iter_bits(row):
                if not self.adj[w] >> v & 1:
                    raise ValueError(f"asymmetric adjacency between {v} and {w}")

    # -- basic queries -------------------------------------------------
    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    def edge_count(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    def degree(self, v: int) -> int:
        self._check_vertex(v)
        return self.adj[v].bit_count()

    def degrees(self) -> list[int]:
        return [row.bit_count() for row in self.adj]

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def neighborhood(self, mask: int) -> int:
        """Union of the neighbourhoods of the vertices in ``mask``.

        The set itself is not subtracted.
        """
        self._check_set(mask)
        out = 0
        for v in iter_bits(mask):
            out |= self.adj[v]
        return out

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in iter_bits(self.adj[u] >> (u + 1) << (u + 1))]

    def induced_subgraph(self, mask: int) -> Graph:
        """Subgraph induced by ``mask``, relabelled in ascending vertex order."""
        self._check_set(mask)
        verts = members(mask)
        pos = {v: i for i, v in enumerate(verts)}
        rows = []
        for v in verts:
            rows.append(vset(pos[w] for w in iter_bits(self.adj[v] & mask)))
        return Graph(len(verts), tuple(rows))

    def edges_within(self, mask: int) -> int:
        return sum((self.adj[v] & mask).bit_count() for v in iter_bits(mask)) // 2

    def edges_between(self, a: int, b: int) -> int:
        if a & b:
            raise ValueError("sets must be disjoint")
        return sum((self.adj[v] & b).bit_count() for v in iter_bits(a))

    def is_triangle_free(self) -> bool:
        return rows_triangle_free(self.adj)

    def is_independent(self, mask: int) -> bool:
        return all(not self.adj[v] & mask for v in iter_bits(mask))

    def is_fully_joined(self, a: int, b: int) -> bool:
        """True iff every vertex of ``a`` is adjacent to every vertex of ``b``."""
        self._check_set(a)
        self._check_set(b)
        if a & b:
            raise ValueError("sets must be disjoint")
        return all(self.adj[v] & b == b for v in iter_bits(a))

    def relabel(self, perm: Sequence[int]) -> Graph:
        """Graph with vertex ``v`` renamed to ``perm[v]``."""
        rows = [0] * self.n
        for v in range(self.n):
            rows[perm[v]] = vset(perm[w] for w in iter_bits(self.adj[v]))
        return Graph(self.n, tuple(rows))

    # -- interchange ----------------------------------------------------
    def to_graph6(self) -> str:
        from rt_lab.graph6 import encode

        return encode(self)

    @classmethod
    def from_graph6(cls, line: str) -> Graph:
        from rt_lab.graph6 import decode

        return decode(line)

    def _check_vertex(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise ValueError(f"vertex {v} out of range for n={self.n}")

    def _check_set(self, mask: int) -> None:
        if mask < 0 or mask >> self.n:
            raise ValueError(f"vertex set {mask:#x} not contained in range({self.n})")

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, e={self.edge_count()})"


def build_graph(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    """Graph on ``range(n)`` with the given edges (symmetrised, deduplicated)."""
    if n > MAX_VERTICES:
        raise CapacityError(f"graph on {n} vertices exceeds capacity {MAX_VERTICES}")
    if n < 0:
        raise ValueError("negative vertex count")
    rows = [0] * n
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise ValueError(f"edge ({u}, {v}) has an endpoint outside range({n})")
        if u == v:
            raise ValueError(f"self-loop at vertex {u}")
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    return Graph(n, tuple(rows))


def empty_graph(n: int) -> Graph:
    return Graph(n, (0,) * n)


def complete_bipartite(a: int, b: int) -> Graph:
    left = (1 << a) - 1
    right = ((1 << b) - 1) << a
    return Graph(a + b, tuple([right] * a + [left] * b))


def complete_graph(n: int) -> Graph:
    full = (1 << n) - 1
    return Graph(n, tuple(full ^ (1 << v) for v in range(n)))


@dataclass(frozen=True)
class Params:
    """The pair (n, s) together with the quantities derived from it."""

    n: int
    s: int

    def __post_init__(self) -> None:
        if not 0 <= self.s <= self.n:
            raise ValueError(f"need 0 <= s <= n, got n={self.n}, s={self.s}")

    @property
    def t(self) -> int:
        """Size of the small classes of the canonical k=4 blow-up."""
        return 3 * self.n - 8 * self.s

    @property
    def small(self) -> int:
        """Size 3s-n of every mould class."""
        return 3 * self.s - self.n

    @property
    def lowdeg(self) -> int:
        return 4 * self.n - 10 * self.s

    @property
    def delta(self) -> int:
        return 11 * self.s - 4 * self.n
