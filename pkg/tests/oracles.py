"""Slow reference implementations used to cross-check the library.

Everything here is deliberately naive: subsets are enumerated outright,
matchings by brute force and embeddings by trying every injection.  The
orderly generator relies on the library's canonical form only to merge
isomorphic graphs; its per-order counts are pinned to published values
(OEIS A000088 and A006785) so a faulty canonical form would show up there.
"""
from __future__ import annotations

import itertools
import random

from rt_lab.canon import canonical_code
from rt_lab.graph import Graph

# number of graphs / triangle-free graphs on n unlabelled vertices, n = 0..10
GRAPH_COUNTS = [1, 1, 2, 4, 11, 34, 156, 1044, 12346, 274668, 12005168]
TRIANGLE_FREE_COUNTS = [1, 1, 2, 3, 7, 14, 38, 107, 410, 1897, 12172]


def _independent_table(adj) -> list[bool]:
    n = len(adj)
    ok = [True] * (1 << n)
    for mask in range(1, 1 << n):
        v = (mask & -mask).bit_length() - 1
        rest = mask & (mask - 1)
        ok[mask] = ok[rest] and not adj[v] & rest
    return ok


def naive_alpha(g: Graph) -> int:
    table = _independent_table(g.adj)
    return max(mask.bit_count() for mask in range(1 << g.n) if table[mask])


def naive_independent_sets(g: Graph, size: int) -> list[int]:
    """All independent sets of exactly ``size`` vertices, sorted by mask."""
    table = _independent_table(g.adj)
    return [mask for mask in range(1 << g.n) if table[mask] and mask.bit_count() == size]


def naive_triangle_free(g: Graph) -> bool:
    return not any(
        g.has_edge(a, b) and g.has_edge(b, c) and g.has_edge(a, c)
        for a, b, c in itertools.combinations(range(g.n), 3)
    )


def naive_graphs(nmax: int, triangle_free: bool = False):
    """Yield (n, rows) for every graph on n <= nmax vertices up to isomorphism.

    Each graph of order n is some graph of order n-1 plus a vertex of
    maximum degree, so it is enough to extend every parent by every
    neighbourhood that keeps the new vertex at maximum degree.
    """
    level = [()]
    yield 0, ()
    for n in range(1, nmax + 1):
        m = n - 1
        seen: dict[tuple[int, ...], tuple[int, ...]] = {}
        for adj in level:
            deg = [row.bit_count() for row in adj]
            for nb in range(1 << m):
                d = nb.bit_count()
                if triangle_free and any(nb >> u & 1 and adj[u] & nb for u in range(m)):
                    continue
                if any(deg[u] + (nb >> u & 1) > d for u in range(m)):
                    continue
                rows = tuple(adj[u] | (nb >> u & 1) << m for u in range(m)) + (nb,)
                seen.setdefault(canonical_code(n, rows), rows)
        level = list(seen.values())
        for rows in level:
            yield n, rows


def naive_ex(n: int, s: int, graphs_by_order) -> int | None:
    """ex(n, s) by scanning a precomputed list of triangle-free graphs."""
    best = None
    for rows in graphs_by_order[n]:
        g = Graph(n, rows)
        if naive_alpha(g) <= s:
            e = g.edge_count()
            best = e if best is None else max(best, e)
    return best


def naive_matching_size(g: Graph, left: list[int], right: list[int]) -> int:
    """Maximum matching by trying every partial injection (tiny inputs only)."""
    best = 0

    def go(i: int, used: int, size: int) -> None:
        nonlocal best
        if size + len(left) - i <= best:
            return
        if i == len(left):
            best = max(best, size)
            return
        go(i + 1, used, size)
        for w in right:
            if g.has_edge(left[i], w) and not used >> w & 1:
                go(i + 1, used | 1 << w, size + 1)

    go(0, 0, 0)
    return best


def naive_has_induced_copy(host: Graph, pattern: Graph) -> bool:
    for image in itertools.permutations(range(host.n), pattern.n):
        if all(
            host.has_edge(image[x], image[y]) == pattern.has_edge(x, y)
            for x, y in itertools.combinations(range(pattern.n), 2)
        ):
            return True
    return False


def random_graph(rng: random.Random, n: int, p: float) -> Graph:
    rows = [0] * n
    for u, v in itertools.combinations(range(n), 2):
        if rng.random() < p:
            rows[u] |= 1 << v
            rows[v] |= 1 << u
    return Graph(n, tuple(rows))


def random_triangle_free(rng: random.Random, n: int, tries: int) -> Graph:
    """Random maximal-ish triangle-free graph: insert random edges that close no triangle."""
    rows = [0] * n
    pairs = list(itertools.combinations(range(n), 2))
    rng.shuffle(pairs)
    for u, v in pairs[:tries]:
        if not rows[u] & rows[v]:
            rows[u] |= 1 << v
            rows[v] |= 1 << u
    return Graph(n, tuple(rows))
