"""Compression by (i, j)-shifts, full stabilization, and stability tests.

The shift with i < j replaces j by i inside an edge whenever i is absent
and the replacement is not already an edge; applied simultaneously it
preserves the edge count and never increases the matching number. A graph
fixed by all shifts is exactly a down-set under componentwise domination
of sorted edges, and stabilization reaches such a fixpoint because each
moved edge strictly lowers the vertex-label sum.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .core import Edge, Hypergraph


@dataclass
class ShiftTrace:
    """Per-step (i, j, moved edge count) log plus the number of full sweeps."""

    steps: list[tuple[int, int, int]] = field(default_factory=list)
    rounds: int = 0


def _shift_image(e: Edge, i: int, j: int, edge_set) -> Edge:
    if j not in e or i in e:
        return e
    replaced = tuple(sorted([v for v in e if v != j] + [i]))
    return e if replaced in edge_set else replaced


def shift_edge(h: Hypergraph, i: int, j: int, e) -> Edge:
    """Image of one edge under the (i, j)-shift of h."""
    if not 1 <= i < j <= h.n:
        raise ValueError(f"need 1 <= i < j <= n, got ({i}, {j})")
    t = tuple(sorted(e))
    if t not in h:
        raise ValueError(f"{t} is not an edge of the graph")
    return _shift_image(t, i, j, h.edge_set)


def shift_graph(h: Hypergraph, i: int, j: int) -> Hypergraph:
    """Simultaneous image of every edge; edge count is preserved."""
    if not 1 <= i < j <= h.n:
        raise ValueError(f"need 1 <= i < j <= n, got ({i}, {j})")
    images = [_shift_image(e, i, j, h.edge_set) for e in h.edges]
    out = Hypergraph(h.n, h.k, images)
    assert out.e() == h.e(), "shift must preserve the edge count"
    return out


def _label_sum(h: Hypergraph) -> int:
    return sum(sum(e) for e in h.edges)


def stabilize(h: Hypergraph) -> tuple[Hypergraph, ShiftTrace]:
    """Sweep all (i, j) in lexicographic order until nothing moves.

    The label-sum potential strictly decreases whenever a sweep step moves
    an edge, so termination is unconditional.
    """
    trace = ShiftTrace()
    cur = h
    while True:
        trace.rounds += 1
        moved_this_round = 0
        for i in range(1, cur.n):
            for j in range(i + 1, cur.n + 1):
                nxt = shift_graph(cur, i, j)
                moved = len(set(nxt.edges) - set(cur.edges))
                trace.steps.append((i, j, moved))
                if moved:
                    assert _label_sum(nxt) < _label_sum(cur), "potential must drop"
                    moved_this_round += moved
                    cur = nxt
        if moved_this_round == 0:
            return cur, trace


def is_stable(h: Hypergraph) -> bool:
    """True iff every (i, j)-shift is the identity."""
    for e in h.edges:
        present = set(e)
        for j in e:
            for i in range(1, j):
                if i not in present:
                    replaced = tuple(sorted([v for v in e if v != j] + [i]))
                    if replaced not in h:
                        return False
    return True


def is_downset(h: Hypergraph) -> bool:
    """True iff edges are closed under lowering any single vertex by one.

    Single-step closure is equivalent to closure under full componentwise
    domination of sorted edges, and to stability.
    """
    for e in h.edges:
        present = set(e)
        for v in e:
            u = v - 1
            if u >= 1 and u not in present:
                lowered = tuple(sorted([x for x in e if x != v] + [u]))
                if lowered not in h:
                    return False
    return True


def dominated_edges(e: Edge, n: int):
    """All sorted k-tuples u with u[t] <= e[t] for every coordinate."""
    k = len(e)
    for u in combinations(range(1, n + 1), k):
        if all(a <= b for a, b in zip(u, e)):
            yield u
