"""Andrásfai graphs, blow-ups and the closed-form edge counts."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from rt_lab.graph import MAX_VERTICES, CapacityError, Graph, iter_bits


@dataclass(frozen=True)
class BlowupSpec:
    base: Graph
    sizes: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.sizes) != self.base.n:
            raise ValueError("need one class size per base vertex")
        if any(m < 0 for m in self.sizes):
            raise ValueError(f"negative class size in {self.sizes}")


@dataclass(frozen=True)
class BlowupGraph:
    graph: Graph
    class_of: tuple[int, ...]
    classes: tuple[int, ...]

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(c.bit_count() for c in self.classes)


def andrasfai(k: int) -> Graph:
    """Cayley graph on Z/(3k-1) with connection set {k, ..., 2k-1}."""
    if k < 1:
        raise ValueError("k must be positive")
    m = 3 * k - 1
    if m > MAX_VERTICES:
        raise CapacityError(f"Andrásfai graph for k={k} needs {m} vertices")
    rows = []
    for i in range(m):
        row = 0
        for d in range(k, 2 * k):
            row |= 1 << ((i + d) % m)
        rows.append(row)
    return Graph(m, tuple(rows))


def blowup(spec: BlowupSpec | Graph, sizes=None) -> BlowupGraph:
    """Replace base vertex i by an independent class of ``sizes[i]`` vertices.

    Classes are laid out contiguously in base-vertex order.
    """
    if isinstance(spec, Graph):
        spec = BlowupSpec(spec, tuple(sizes))
    total = sum(spec.sizes)
    if total > MAX_VERTICES:
        raise CapacityError(f"blow-up needs {total} vertices")
    classes = []
    class_of = []
    start = 0
    for i, m in enumerate(spec.sizes):
        classes.append(((1 << m) - 1) << start)
        class_of.extend([i] * m)
        start += m
    rows = []
    for v in range(total):
        row = 0
        for j in iter_bits(spec.base.adj[class_of[v]]):
            row |= classes[j]
        rows.append(row)
    return BlowupGraph(Graph(total, tuple(rows)), tuple(class_of), tuple(classes))


def canonical_sizes(n: int, k: int, s: int) -> tuple[int, ...]:
    """Class sizes of G(n;k,s), indexed by the residues of Z/(3k-1)."""
    if k < 2:
        raise ValueError("the canonical blow-up needs k >= 2")
    if not (Fraction(k * n, 3 * k - 1) <= s <= Fraction((k - 1) * n, 3 * k - 4)):
        raise ValueError(f"s={s} outside the admissible band for n={n}, k={k}")
    small = (k - 1) * n - (3 * k - 4) * s
    large = 3 * s - n
    if small < 0 or large < 0:
        raise ValueError(f"negative class size for n={n}, k={k}, s={s}")
    positions = {1 % (3 * k - 1), k, 2 * k}
    return tuple(small if i in positions else large for i in range(3 * k - 1))


def canonical_blowup(n: int, k: int, s: int) -> BlowupGraph:
    """G(n;k,s): small classes at residues 1, k, 2k, large classes elsewhere."""
    return blowup(BlowupSpec(andrasfai(k), canonical_sizes(n, k, s)))


def g_formula(k: int, n: int, s: int) -> int:
    """g_k(n,s) = k(k-1)n^2/2 - k(3k-4)ns + (3k-4)(3k-1)s^2/2, exactly."""
    if k < 1:
        raise ValueError("k must be positive")
    doubled = k * (k - 1) * n * n - 2 * k * (3 * k - 4) * n * s + (3 * k - 4) * (3 * k - 1) * s * s
    assert doubled % 2 == 0, "odd doubled value: arithmetic bug"
    return doubled // 2


def in_band(n: int, k: int, s: int, closed: bool = True) -> bool:
    """Whether s/n lies in [k/(3k-1), (k-1)/(3k-4)] (open interval if not closed)."""
    lo = Fraction(k * n, 3 * k - 1)
    hi = Fraction((k - 1) * n, 3 * k - 4)
    if closed:
        return lo <= s <= hi
    return lo < s < hi


@dataclass(frozen=True)
class Bounds:
    trivial: int
    g_cap: int | None
    g_cap_k: int | None


def bounds(n: int, s: int) -> Bounds:
    """Trivial bound floor(sn/2) and the least g_k over all k >= 2 whose open band misses s."""
    if not 0 <= s <= n:
        raise ValueError("need 0 <= s <= n")
    cap = None
    cap_k = None
    for k in range(2, max(2, n) + 1):
        if in_band(n, k, s, closed=False):
            continue
        value = g_formula(k, n, s)
        if cap is None or value < cap:
            cap, cap_k = value, k
    return Bounds(s * n // 2, cap, cap_k)


def perturb_canonical(n: int, s: int, j: int) -> BlowupGraph:
    """G(n;4,s) with j vertices moved from class V5 to class V4."""
    sizes = list(canonical_sizes(n, 4, s))
    sizes[4] += j
    sizes[5] -= j
    lo, hi = 3 * n - 8 * s, 3 * s - n
    for i in (4, 5):
        if not lo <= sizes[i] <= hi:
            raise ValueError(f"class {i} would have {sizes[i]} vertices, outside [{lo}, {hi}]")
    return blowup(BlowupSpec(andrasfai(4), tuple(sizes)))


def closed_form(n: int, s: int) -> tuple[str, int] | None:
    """The formula claimed for ex(n,s), if (n, s) lies in a covered regime.

    Mantel for 2s >= n, otherwise g_k for k in 2..4 on its closed band.
    """
    if n == 0:
        return None
    if 2 * s >= n:
        return "mantel", n * n // 4
    for k in (2, 3, 4):
        if in_band(n, k, s):
            return f"g{k}", g_formula(k, n, s)
    return None
