"""Canonical labelling of small graphs by refinement and backtracking.

Equitable-partition refinement followed by an individualise-refine search
tree.  Leaves are compared by their relabelled adjacency rows; automorphisms
discovered along the way prune the tree (orbit pruning plus back-jumping to
the common ancestor of equivalent leaves).  Intended for the small graphs of
the exhaustive searches (n <= ~16); it works for any n but has no
sophisticated invariants.
"""
from __future__ import annotations

from typing import Sequence

from rt_lab.graph import Graph, iter_bits


def _refine(adj: Sequence[int], cells: list[list[int]], splitters: list[int]) -> list[list[int]]:
    queue = list(splitters)
    while queue:
        w = queue.pop(0)
        out = []
        for cell in cells:
            if len(cell) == 1:
                out.append(cell)
                continue
            groups: dict[int, list[int]] = {}
            for v in cell:
                groups.setdefault((adj[v] & w).bit_count(), []).append(v)
            if len(groups) == 1:
                out.append(cell)
                continue
            for key in sorted(groups):
                piece = groups[key]
                out.append(piece)
                mask = 0
                for v in piece:
                    mask |= 1 << v
                queue.append(mask)
        cells = out
    return cells


def _cell_mask(cell: list[int]) -> int:
    mask = 0
    for v in cell:
        mask |= 1 << v
    return mask


def equitable_partition(adj: Sequence[int], n: int) -> list[list[int]]:
    """Coarsest equitable refinement of the unit partition (ordered)."""
    if n == 0:
        return []
    return _refine(adj, [list(range(n))], [(1 << n) - 1])


def _orbits(n: int, gens: list[list[int]]) -> list[int]:
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in gens:
        for v in range(n):
            a, b = find(v), find(g[v])
            if a != b:
                parent[max(a, b)] = min(a, b)
    return [find(v) for v in range(n)]


class _Search:
    def __init__(self, n: int, adj: Sequence[int]):
        self.n = n
        self.adj = adj
        self.first: tuple | None = None
        self.best: tuple | None = None
        self.gens: list[list[int]] = []

    def leaf(self, cells: list[list[int]], seq: list[int]) -> int:
        lab = [c[0] for c in cells]
        pos = [0] * self.n
        for i, v in enumerate(lab):
            pos[v] = i
        adj = self.adj
        code = []
        for v in lab:
            row = 0
            for w in iter_bits(adj[v]):
                row |= 1 << pos[w]
            code.append(row)
        code = tuple(code)
        if self.first is None:
            self.first = self.best = (code, lab, list(seq))
            return len(seq)
        for ref in (self.first, self.best):
            if code == ref[0]:
                # ref_lab[i] -> lab[i] is an automorphism
                perm = [0] * self.n
                for a, b in zip(ref[1], lab):
                    perm[a] = b
                self.gens.append(perm)
                common = 0
                for a, b in zip(seq, ref[2]):
                    if a != b:
                        break
                    common += 1
                return common
        if code > self.best[0]:
            self.best = (code, lab, list(seq))
        return len(seq)

    def visit(self, cells: list[list[int]], seq: list[int]) -> int:
        target = None
        for cell in cells:
            if len(cell) > 1 and (target is None or len(cell) < len(target)):
                target = cell
        if target is None:
            return self.leaf(cells, seq)
        depth = len(seq)
        explored: list[int] = []
        for w in target:
            if explored and self.gens:
                fixing = [g for g in self.gens if all(g[x] == x for x in seq)]
                if fixing:
                    orb = _orbits(self.n, fixing)
                    if any(orb[w] == orb[x] for x in explored):
                        continue
            explored.append(w)
            child = []
            for cell in cells:
                if cell is target:
                    rest = [v for v in cell if v != w]
                    child.append([w])
                    child.append(rest)
                else:
                    child.append(cell)
            child = _refine(self.adj, child, [1 << w])
            seq.append(w)
            r = self.visit(child, seq)
            seq.pop()
            if r < depth:
                return r
        return depth


def canonical_labeling(n: int, adj: Sequence[int]) -> tuple[tuple[int, ...], list[int]]:
    """Return ``(code, lab)``: canonical adjacency rows and the labelling.

    ``lab[i]`` is the original vertex placed at canonical position ``i``.
    Two graphs are isomorphic iff their codes are equal.
    """
    if n == 0:
        return (), []
    search = _Search(n, adj)
    search.visit(_refine(adj, [list(range(n))], [(1 << n) - 1]), [])
    code, lab, _ = search.best
    return code, lab


def canonical_code(n: int, adj: Sequence[int]) -> tuple[int, ...]:
    return canonical_labeling(n, adj)[0]


def automorphism_generators(g: Graph) -> list[list[int]]:
    search = _Search(g.n, g.adj)
    if g.n:
        search.visit(_refine(g.adj, [list(range(g.n))], [g.full]), [])
    return search.gens


def canonical_form(g: Graph) -> Graph:
    """The canonical representative of the isomorphism class of ``g``."""
    code, _ = canonical_labeling(g.n, g.adj)
    return Graph(g.n, code)


def is_isomorphic(g: Graph, h: Graph) -> bool:
    if g.n != h.n or g.edge_count() != h.edge_count():
        return False
    if sorted(g.degrees()) != sorted(h.degrees()):
        return False
    return canonical_code(g.n, g.adj) == canonical_code(h.n, h.adj)
