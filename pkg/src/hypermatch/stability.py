"""Closeness-to-extremal diagnostics and the bound-crossover analysis.

Closeness to a target family is measured one-sidedly as the number of
target edges missing from the graph, normalized by n^k. The partition that
realizes the measure is chosen either heuristically (highest-degree
vertices) or by exhaustive search over all placements at small n.

The crossover functions track where the Hilton-Milner-type count and the
clique count trade places as s/n grows: the gap density is

    g(x) = (1 - (1-x)^3)/6 - 9 x^3 / 2,   g'(x) = (1 - 2x - 26 x^2)/2,

positive for small x, with a single root (sqrt(321) - 3)/52 in (0, 1/3).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations

from .constructions import PartitionSpec, clique_count, cover_count, hm_count
from .core import BudgetExceeded, Hypergraph

EXHAUSTIVE_GUARD_N = 16


@dataclass
class ClosenessReport:
    target: str  # "cover" or "clique"
    partition: tuple[int, ...]  # the chosen W (cover) or U (clique)
    missing_edges: int
    epsilon_effective: float
    exhaustive: bool
    n: int = 0

    def partition_spec(self) -> PartitionSpec:
        """The full two-block split realizing the report."""
        if self.target == "cover":
            return PartitionSpec(self.n, frozenset(self.partition))
        core = frozenset(self.partition)
        return PartitionSpec(self.n, frozenset(range(1, self.n + 1)) - core)


@dataclass
class GoodnessReport:
    theta: float
    good: frozenset[int]
    bad: frozenset[int]
    deficiency: dict[int, int] = field(default_factory=dict)


def missing_edges(h: Hypergraph, target: Hypergraph) -> int:
    """|E(target) \\ E(h)|, the one-sided closeness distance."""
    if h.n != target.n or h.k != target.k:
        raise ValueError("graphs must share n and k")
    return len(target.edge_set - h.edge_set)


def _top_degree_vertices(h: Hypergraph, count: int) -> tuple[int, ...]:
    ranked = sorted(h.vertices(), key=lambda v: (-h.degree(v), v))
    return tuple(sorted(ranked[:count]))


def _cover_missing(h: Hypergraph, wset: frozenset[int]) -> int:
    hits = sum(1 for e in h.edges if wset.intersection(e))
    return cover_count(h.n, h.k, len(wset)) - hits


def _clique_missing(h: Hypergraph, uset: frozenset[int]) -> int:
    s = (len(uset) + 1) // h.k - 1
    inside = sum(1 for e in h.edges if uset.issuperset(e))
    return clique_count(h.k, s) - inside


def closeness_to_cover(h: Hypergraph, s: int, search: str = "heuristic") -> ClosenessReport:
    """Fewest cover-family edges missing over placements of the s-set W."""
    if not 0 <= s <= h.n:
        raise ValueError(f"s={s} outside 0..{h.n}")
    if search == "heuristic":
        w = _top_degree_vertices(h, s)
        miss = _cover_missing(h, frozenset(w))
        return ClosenessReport("cover", w, miss, miss / h.n**h.k, False, h.n)
    if search != "exhaustive":
        raise ValueError(f"unknown search mode {search!r}")
    if h.n > EXHAUSTIVE_GUARD_N:
        raise BudgetExceeded(f"exhaustive closeness capped at n={EXHAUSTIVE_GUARD_N}")
    best_w: tuple[int, ...] | None = None
    best = None
    for w in combinations(range(1, h.n + 1), s):
        miss = _cover_missing(h, frozenset(w))
        if best is None or miss < best:
            best, best_w = miss, w
    assert best is not None and best_w is not None
    return ClosenessReport("cover", best_w, best, best / h.n**h.k, True, h.n)


def closeness_to_clique(h: Hypergraph, s: int, search: str = "heuristic") -> ClosenessReport:
    """Fewest clique-family edges missing over placements of the core set U."""
    size = h.k * (s + 1) - 1
    if size > h.n:
        raise ValueError(f"clique core k(s+1)-1 = {size} exceeds n={h.n}")
    if search == "heuristic":
        u = _top_degree_vertices(h, size)
        miss = _clique_missing(h, frozenset(u))
        return ClosenessReport("clique", u, miss, miss / h.n**h.k, False, h.n)
    if search != "exhaustive":
        raise ValueError(f"unknown search mode {search!r}")
    if h.n > EXHAUSTIVE_GUARD_N:
        raise BudgetExceeded(f"exhaustive closeness capped at n={EXHAUSTIVE_GUARD_N}")
    best_u: tuple[int, ...] | None = None
    best = None
    for u in combinations(range(1, h.n + 1), size):
        miss = _clique_missing(h, frozenset(u))
        if best is None or miss < best:
            best, best_u = miss, u
    assert best is not None and best_u is not None
    return ClosenessReport("clique", best_u, best, best / h.n**h.k, True, h.n)


def goodness_partition(h: Hypergraph, target: Hypergraph, theta: float) -> GoodnessReport:
    """Split vertices by neighborhood deficiency against the target.

    A vertex is good when it sits in at most theta * n^(k-1) edges of
    target-minus-h; the deficiencies sum to k times the missing-edge count.
    """
    if h.n != target.n or h.k != target.k:
        raise ValueError("graphs must share n and k")
    if theta < 0:
        raise ValueError("theta must be nonnegative")
    deficiency = {v: 0 for v in h.vertices()}
    for e in target.edge_set - h.edge_set:
        for v in e:
            deficiency[v] += 1
    cut = theta * h.n ** (h.k - 1)
    good = frozenset(v for v in h.vertices() if deficiency[v] <= cut)
    bad = frozenset(v for v in h.vertices() if v not in good)
    return GoodnessReport(theta, good, bad, deficiency)


# -- crossover of the two bounds ----------------------------------------------


def crossover_gap(x: float) -> float:
    """Leading-order density of (Hilton-Milner count) - (clique count) at s = xn."""
    if not 0 <= x <= 1 / 3:
        raise ValueError(f"x={x} outside [0, 1/3]")
    return (1 - (1 - x) ** 3) / 6 - 4.5 * x**3


def crossover_gap_derivative(x: float) -> float:
    if not 0 <= x <= 1 / 3:
        raise ValueError(f"x={x} outside [0, 1/3]")
    return (1 - 2 * x - 26 * x**2) / 2


def crossover_root(tol: float = 1e-12) -> float:
    """The positive root of the gap density in (0, 1/3), by bisection."""
    lo, hi = 0.1, 1 / 3  # gap > 0 at 0.1, < 0 at 1/3
    while hi - lo > tol:
        mid = (lo + hi) / 2
        if crossover_gap(mid) > 0:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2


def crossover_root_closed_form() -> float:
    return (math.sqrt(321) - 3) / 52


@dataclass
class BoundRow:
    s: int
    cover_bound: int
    clique_bound: int
    hm_bound: int
    argmax: str  # which of hm/clique attains the max


def bound_table(n: int, k: int = 3, s_range=None) -> list[BoundRow]:
    """Exact-integer bound values per s, with which bound wins."""
    if s_range is None:
        s_range = range(1, (n - k + 1) // k + 1)
    rows = []
    for s in s_range:
        cov = cover_count(n, k, s)
        clq = clique_count(k, s)
        hm = hm_count(n, k, s)
        rows.append(BoundRow(s, cov, clq, hm, "clique" if clq > hm else "hm"))
    return rows


def clique_overtakes_at(n: int, k: int = 3) -> int | None:
    """Smallest s with clique count strictly above the Hilton-Milner count."""
    for row in bound_table(n, k):
        if row.clique_bound > row.hm_bound:
            return row.s
    return None
