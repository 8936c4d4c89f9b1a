"""Exact and fractional matching/cover solvers.

Exact values come from branch-and-bound with greedy bounds; a pure
enumeration oracle (no pruning at all) sits behind ``exhaustive=True`` and
is the ground truth in tests. Fractional values come from LPs solved either
over exact rationals or in floats (HiGHS).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Iterable, Mapping

from . import lp
from .core import BudgetExceeded, Edge, Hypergraph, edge_mask

ORACLE_GUARD = 20_000_000


class DualityError(RuntimeError):
    """The two fractional optima disagree: a solver bug by construction."""


@dataclass(frozen=True)
class Matching:
    edges: tuple[Edge, ...]

    @property
    def size(self) -> int:
        return len(self.edges)

    def validate(self, h: Hypergraph) -> None:
        used: set[int] = set()
        for e in self.edges:
            if e not in h:
                raise ValueError(f"matching edge {e} not in the graph")
            if used.intersection(e):
                raise ValueError(f"matching edge {e} reuses a vertex")
            used.update(e)


@dataclass(frozen=True)
class VertexCover:
    vertices: frozenset[int]

    @property
    def size(self) -> int:
        return len(self.vertices)

    def validate(self, h: Hypergraph) -> None:
        for v in self.vertices:
            if not 1 <= v <= h.n:
                raise ValueError(f"cover vertex {v} outside 1..{h.n}")
        for e in h.edges:
            if not self.vertices.intersection(e):
                raise ValueError(f"edge {e} escapes the cover")


@dataclass
class FractionalAssignment:
    """Weights on edges (kind='matching') or vertices (kind='cover')."""

    kind: str
    weights: dict
    value: Fraction | float
    mode: str = "rational"
    residual: float | None = None

    def weight(self, key):
        return self.weights.get(key, Fraction(0) if self.mode == "rational" else 0.0)

    def validate(self, h: Hypergraph, tol: float = 1e-9) -> None:
        slack = 0 if self.mode == "rational" else tol
        for key, w in self.weights.items():
            if w < -slack or w > 1 + slack:
                raise ValueError(f"weight {w} on {key} outside [0, 1]")
        if self.kind == "matching":
            for key in self.weights:
                if key not in h:
                    raise ValueError(f"weighted edge {key} not in the graph")
            load = {v: 0 for v in h.vertices()}
            for e, w in self.weights.items():
                for v in e:
                    load[v] += w
            for v, tot in load.items():
                if tot > 1 + slack:
                    raise ValueError(f"vertex {v} carries weight {tot} > 1")
        elif self.kind == "cover":
            for key in self.weights:
                if not 1 <= key <= h.n:
                    raise ValueError(f"weighted vertex {key} outside 1..{h.n}")
            for e in h.edges:
                tot = sum(self.weights.get(v, 0) for v in e)
                if tot < 1 - slack:
                    raise ValueError(f"edge {e} has cover weight {tot} < 1")
        elif self.kind == "sampling":
            # per-edge probabilities; only the [0, 1] bounds above apply
            for key in self.weights:
                if key not in h:
                    raise ValueError(f"weighted edge {key} not in the graph")
        else:
            raise ValueError(f"unknown kind {self.kind!r}")


# -- exact matching ----------------------------------------------------------


class _Done(Exception):
    pass


def max_matching(
    h: Hypergraph, limit: int | None = None, exhaustive: bool = False
) -> tuple[int, Matching]:
    """Largest set of pairwise disjoint edges.

    With ``limit`` the search stops as soon as `limit` disjoint edges are
    found (the reported value is min(nu, limit)).
    """
    if exhaustive:
        return _matching_oracle(h, limit)
    masks = h.masks
    edges = h.edges
    k = h.k
    cap = h.n // k
    if limit is not None:
        cap = min(cap, limit)
    if not edges or cap == 0:
        return 0, Matching(())

    best_n = 0
    best: list[int] = []

    def greedy(cand: list[int]) -> list[int]:
        used = 0
        sel = []
        for i in cand:
            if masks[i] & used == 0:
                used |= masks[i]
                sel.append(i)
        return sel

    def dfs(cand: list[int], chosen: list[int], avail: int) -> None:
        nonlocal best_n, best
        sel = greedy(cand)
        del sel[max(0, cap - len(chosen)):]  # honor the requested ceiling
        if len(chosen) + len(sel) > best_n:
            best_n = len(chosen) + len(sel)
            best = chosen + sel
            if best_n >= cap:
                raise _Done
        if not cand:
            return
        if len(chosen) + min(avail.bit_count() // k, len(cand)) <= best_n:
            return
        v0 = edges[cand[0]][0]
        head = 0
        while head < len(cand) and edges[cand[head]][0] == v0:
            head += 1
        for idx in range(head):
            i = cand[idx]
            mi = masks[i]
            dfs(
                [j for j in cand if masks[j] & mi == 0],
                chosen + [i],
                avail & ~mi,
            )
        bit = 1 << (v0 - 1)
        dfs(cand[head:], chosen, avail & ~bit)

    try:
        dfs(list(range(len(edges))), [], (1 << h.n) - 1)
    except _Done:
        pass
    return best_n, Matching(tuple(edges[i] for i in sorted(best)))


def _matching_oracle(h: Hypergraph, limit: int | None) -> tuple[int, Matching]:
    masks = h.masks
    cap = h.n // h.k
    if limit is not None:
        cap = min(cap, limit)
    for size in range(cap, 0, -1):
        if comb(len(masks), size) > ORACLE_GUARD:
            raise BudgetExceeded(f"oracle would scan C({len(masks)},{size}) subsets")
        for combo in combinations(range(len(masks)), size):
            used = 0
            for i in combo:
                if masks[i] & used:
                    break
                used |= masks[i]
            else:
                return size, Matching(tuple(h.edges[i] for i in combo))
    return 0, Matching(())


# -- exact cover and independence --------------------------------------------


def _greedy_cover(h: Hypergraph) -> set[int]:
    uncovered = list(range(h.e()))
    chosen: set[int] = set()
    while uncovered:
        counts: dict[int, int] = {}
        for i in uncovered:
            for v in h.edges[i]:
                counts[v] = counts.get(v, 0) + 1
        v = min(counts, key=lambda u: (-counts[u], u))
        chosen.add(v)
        uncovered = [i for i in uncovered if v not in h.edges[i]]
    return chosen


def min_vertex_cover(
    h: Hypergraph, limit: int | None = None, exhaustive: bool = False
) -> tuple[int, VertexCover | None]:
    """Smallest vertex set meeting every edge.

    With ``limit``: if tau <= limit the exact value and witness come back,
    otherwise (limit+1, None) signals tau > limit.
    """
    if exhaustive:
        return _cover_oracle(h, limit)
    if not h.edges:
        return 0, VertexCover(frozenset())
    edges = h.edges
    masks = h.masks

    greedy = _greedy_cover(h)
    best_n = len(greedy)
    best: set[int] | None = set(greedy)
    cap = h.n + 1 if limit is None else limit + 1

    def lower_bound(uncov: list[int]) -> int:
        used = 0
        cnt = 0
        for i in uncov:
            if masks[i] & used == 0:
                used |= masks[i]
                cnt += 1
        return cnt

    def dfs(uncov: list[int], chosen: set[int]) -> None:
        nonlocal best_n, best
        if not uncov:
            if len(chosen) < best_n:
                best_n = len(chosen)
                best = set(chosen)
            return
        bound = min(best_n, cap)
        if len(chosen) + lower_bound(uncov) >= bound:
            return
        e = edges[uncov[0]]
        by_cover = sorted(
            e, key=lambda v: (-sum(1 for i in uncov if v in edges[i]), v)
        )
        for v in by_cover:
            dfs([i for i in uncov if v not in edges[i]], chosen | {v})

    dfs(list(range(len(edges))), set())
    if best_n >= cap:
        return cap, None
    assert best is not None
    return best_n, VertexCover(frozenset(best))


def _cover_oracle(h: Hypergraph, limit: int | None) -> tuple[int, VertexCover | None]:
    if not h.edges:
        return 0, VertexCover(frozenset())
    cap = h.n if limit is None else min(limit, h.n)
    scanned = 0
    for size in range(0, cap + 1):
        scanned += comb(h.n, size)
        if scanned > ORACLE_GUARD:
            raise BudgetExceeded(f"oracle would scan {scanned} vertex subsets")
        for combo in combinations(range(1, h.n + 1), size):
            cm = edge_mask(combo)
            if all(m & cm for m in h.masks):
                return size, VertexCover(frozenset(combo))
    return cap + 1, None


def max_independent_set(
    h: Hypergraph, exhaustive: bool = False
) -> tuple[int, frozenset[int]]:
    """Largest vertex set containing no edge: the complement of a minimum cover."""
    tau, cover = min_vertex_cover(h, exhaustive=exhaustive)
    assert cover is not None
    witness = frozenset(v for v in h.vertices() if v not in cover.vertices)
    return h.n - tau, witness


# -- fractional solvers -------------------------------------------------------


def fractional_matching(h: Hypergraph, mode: str = "rational") -> FractionalAssignment:
    """Optimal fractional matching; its value is the fractional matching number."""
    m = h.e()
    if m == 0:
        zero = Fraction(0) if mode == "rational" else 0.0
        return FractionalAssignment("matching", {}, zero, mode, 0.0)
    live = [v for v in h.vertices() if h.degree(v) > 0]
    if mode == "rational":
        rows = [[Fraction(int(v in e)) for e in h.edges] for v in live]
        status, x, value = lp.simplex_rational(
            [Fraction(1)] * m, rows, ["<="] * len(live), [Fraction(1)] * len(live),
            maximize=True,
        )
        if status != lp.OPTIMAL:
            raise RuntimeError(f"matching LP came back {status}")
        weights = {e: xi for e, xi in zip(h.edges, x) if xi != 0}
        return FractionalAssignment("matching", weights, value, "rational", 0.0)
    rows = [[1.0 if v in e else 0.0 for e in h.edges] for v in live]
    status, x, value, resid = lp.linprog_float(
        [1.0] * m, a_ub=rows, b_ub=[1.0] * len(live), maximize=True
    )
    if status != lp.OPTIMAL:
        raise RuntimeError(f"matching LP came back {status}")
    weights = {e: float(xi) for e, xi in zip(h.edges, x) if xi > 1e-12}
    return FractionalAssignment("matching", weights, value, "float", resid)


def fractional_cover(h: Hypergraph, mode: str = "rational") -> FractionalAssignment:
    """Optimal fractional vertex cover; its value equals the matching LP optimum."""
    n, k = h.n, h.k
    if h.e() == 0:
        zero = Fraction(0) if mode == "rational" else 0.0
        weights = {v: zero for v in h.vertices()}
        return FractionalAssignment("cover", weights, zero, mode, 0.0)
    if mode == "rational":
        # substitute w = 1 - u so the feasible start is the slack basis:
        # min sum(w) == n - max sum(u) with sum_{v in e} u_v <= k-1, u <= 1
        rows = [[Fraction(int(v in e)) for v in h.vertices()] for e in h.edges]
        senses = ["<="] * h.e()
        rhs = [Fraction(k - 1)] * h.e()
        for v in h.vertices():
            rows.append([Fraction(int(u == v)) for u in h.vertices()])
            senses.append("<=")
            rhs.append(Fraction(1))
        status, u, value = lp.simplex_rational(
            [Fraction(1)] * n, rows, senses, rhs, maximize=True
        )
        if status != lp.OPTIMAL:
            raise RuntimeError(f"cover LP came back {status}")
        weights = {v: Fraction(1) - ui for v, ui in zip(h.vertices(), u)}
        return FractionalAssignment("cover", weights, Fraction(n) - value, "rational", 0.0)
    rows = [[-1.0 if v in e else 0.0 for v in h.vertices()] for e in h.edges]
    status, w, value, resid = lp.linprog_float(
        [1.0] * n, a_ub=rows, b_ub=[-1.0] * h.e(), maximize=False
    )
    if status != lp.OPTIMAL:
        raise RuntimeError(f"cover LP came back {status}")
    weights = {v: float(wi) for v, wi in zip(h.vertices(), w)}
    return FractionalAssignment("cover", weights, value, "float", resid)


@dataclass
class DualityReport:
    nu_star: Fraction | float
    tau_star: Fraction | float
    gap: Fraction | float
    mode: str
    matching: FractionalAssignment
    cover: FractionalAssignment


def check_lp_duality(h: Hypergraph, mode: str = "rational", tol: float = 1e-9) -> DualityReport:
    """Solve both fractional programs independently and insist they agree."""
    fm = fractional_matching(h, mode)
    fc = fractional_cover(h, mode)
    gap = fc.value - fm.value
    bad = gap != 0 if mode == "rational" else abs(gap) > tol
    if bad:
        raise DualityError(
            f"fractional optima disagree: matching {fm.value} vs cover {fc.value}"
        )
    return DualityReport(fm.value, fc.value, gap, mode, fm, fc)


def fractional_perfect_matching(
    h: Hypergraph,
    mode: str = "float",
    objective: Mapping[Edge, float] | None = None,
    maximize_objective: bool = False,
) -> FractionalAssignment | None:
    """A fractional matching with every vertex constraint tight, or None.

    An optional edge objective picks among the (many) solutions.
    """
    m = h.e()
    if m == 0 or h.n == 0:
        return None
    k = h.k
    if mode == "rational":
        rows = [[Fraction(int(v in e)) for e in h.edges] for v in h.vertices()]
        c = [Fraction(0)] * m
        if objective:
            c = [Fraction(objective.get(e, 0)) for e in h.edges]
        status, x, _val = lp.simplex_rational(
            c, rows, ["="] * h.n, [Fraction(1)] * h.n, maximize=maximize_objective
        )
        if status != lp.OPTIMAL:
            return None
        weights = {e: xi for e, xi in zip(h.edges, x) if xi != 0}
        return FractionalAssignment(
            "matching", weights, Fraction(h.n, k), "rational", 0.0
        )
    rows = [[1.0 if v in e else 0.0 for e in h.edges] for v in h.vertices()]
    c = [0.0] * m
    if objective:
        c = [float(objective.get(e, 0.0)) for e in h.edges]
    status, x, _val, resid = lp.linprog_float(
        c, a_eq=rows, b_eq=[1.0] * h.n, maximize=maximize_objective
    )
    if status != lp.OPTIMAL:
        return None
    weights = {e: float(xi) for e, xi in zip(h.edges, x) if xi > 1e-12}
    return FractionalAssignment("matching", weights, h.n / k, "float", resid)


# -- proof-procedure operations ----------------------------------------------


def greedy_rainbow_matching(
    h: Hypergraph, anchors: Iterable[int], exact: bool = False
) -> Matching:
    """A matching whose every edge meets the anchor set in exactly one vertex.

    exact=True searches for the maximum such matching; otherwise anchors are
    served in ascending order, each taking the lexicographically first edge
    that avoids used vertices.
    """
    aset = set(anchors)
    for v in aset:
        if not 1 <= v <= h.n:
            raise ValueError(f"anchor {v} outside 1..{h.n}")
    rainbow = [e for e in h.edges if len(aset.intersection(e)) == 1]
    if exact:
        sub = Hypergraph(h.n, h.k, rainbow)
        _, witness = max_matching(sub)
        return witness
    used = 0
    picked: list[Edge] = []
    for v in sorted(aset):
        for e in rainbow:
            if v in e:
                m = edge_mask(e)
                if m & used == 0:
                    picked.append(e)
                    used |= m
                    break
    return Matching(tuple(picked))


def threshold_cover_graph(
    h: Hypergraph, cover: FractionalAssignment, tol: float = 1e-9
) -> tuple[Hypergraph, dict[int, int]]:
    """Relabel by nonincreasing cover weight and keep every k-set of weight >= 1.

    The result contains the (relabeled) input graph, inherits its fractional
    cover, and is a down-set under the new labels, hence shift-stable.
    """
    if cover.kind != "cover":
        raise ValueError("need a cover-kind assignment")
    cover.validate(h, tol)
    order = sorted(h.vertices(), key=lambda v: (-cover.weight(v), v))
    old_to_new = {v: i + 1 for i, v in enumerate(order)}
    w_new = {old_to_new[v]: cover.weight(v) for v in h.vertices()}
    floor = 1 if cover.mode == "rational" else 1 - tol
    edges = [
        e
        for e in combinations(range(1, h.n + 1), h.k)
        if sum(w_new[v] for v in e) >= floor
    ]
    out = Hypergraph(h.n, h.k, edges)
    for e in h.edges:
        img = tuple(sorted(old_to_new[v] for v in e))
        if img not in out:
            raise ValueError(f"edge {e} fell below the threshold; cover invalid")
    return out, old_to_new
