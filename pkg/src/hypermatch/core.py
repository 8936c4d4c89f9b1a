"""Immutable k-uniform hypergraphs on the vertex set {1, ..., n}.

Edges are ascending k-tuples kept in lexicographic order. Every edge also
carries a vertex bitmask (bit v-1 for vertex v) so disjointness and
containment tests are single integer operations; Python integers keep this
exact for any n.
"""

from __future__ import annotations

import json
import random
from itertools import combinations
from typing import Iterable

Edge = tuple[int, ...]


class BudgetExceeded(RuntimeError):
    """Raised when an exhaustive search refuses to run past its guard."""


def edge_mask(e: Iterable[int]) -> int:
    m = 0
    for v in e:
        m |= 1 << (v - 1)
    return m


def _canonical_edge(e: Iterable[int], k: int, n: int) -> Edge:
    t = tuple(sorted(e))
    if len(t) != k:
        raise ValueError(f"edge {t!r} does not have {k} vertices")
    if len(set(t)) != k:
        raise ValueError(f"edge {t!r} repeats a vertex")
    if t[0] < 1 or t[-1] > n:
        raise ValueError(f"edge {t!r} leaves the vertex range 1..{n}")
    return t


class Hypergraph:
    """A k-uniform hypergraph on [n] with canonical, deduplicated edges."""

    __slots__ = ("n", "k", "edges", "masks", "edge_set")

    def __init__(self, n: int, k: int, edges: Iterable[Iterable[int]] = ()):
        if k < 2:
            raise ValueError(f"uniformity k={k} must be at least 2")
        if k > n:
            raise ValueError(f"uniformity k={k} exceeds vertex count n={n}")
        canon = sorted({_canonical_edge(e, k, n) for e in edges})
        self.n = n
        self.k = k
        self.edges: tuple[Edge, ...] = tuple(canon)
        self.masks: tuple[int, ...] = tuple(edge_mask(e) for e in canon)
        self.edge_set: frozenset[Edge] = frozenset(canon)

    # -- basic queries ----------------------------------------------------

    def e(self) -> int:
        """Number of edges."""
        return len(self.edges)

    def vertices(self) -> range:
        return range(1, self.n + 1)

    def __contains__(self, e) -> bool:
        return tuple(sorted(e)) in self.edge_set

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Hypergraph)
            and self.n == other.n
            and self.k == other.k
            and self.edges == other.edges
        )

    def __hash__(self) -> int:
        return hash((self.n, self.k, self.edges))

    def __repr__(self) -> str:
        return f"Hypergraph(n={self.n}, k={self.k}, e={self.e()})"

    def degree(self, v: int) -> int:
        """Number of edges containing vertex v."""
        if not 1 <= v <= self.n:
            raise ValueError(f"vertex {v} outside 1..{self.n}")
        bit = 1 << (v - 1)
        return sum(1 for m in self.masks if m & bit)

    def set_degree(self, t: Iterable[int]) -> int:
        """Number of edges containing every vertex of t (t may be empty)."""
        ts = set(t)
        if len(ts) > self.k:
            raise ValueError(f"set of size {len(ts)} cannot fit in a {self.k}-edge")
        for v in ts:
            if not 1 <= v <= self.n:
                raise ValueError(f"vertex {v} outside 1..{self.n}")
        tm = edge_mask(ts)
        return sum(1 for m in self.masks if m & tm == tm)

    def max_set_degree(self, l: int) -> int:
        """Maximum degree over all l-subsets of vertices."""
        if not 1 <= l <= self.k:
            raise ValueError(f"subset size {l} outside 1..{self.k}")
        counts: dict[Edge, int] = {}
        for e in self.edges:
            for t in combinations(e, l):
                counts[t] = counts.get(t, 0) + 1
        return max(counts.values(), default=0)

    # -- derived graphs ----------------------------------------------------

    def induced(self, s: Iterable[int]) -> tuple["Hypergraph", dict[int, int]]:
        """Subgraph on s, relabeled to 1..|s| in ascending order.

        Returns the graph and the old-to-new vertex map.
        """
        keep = sorted(set(s))
        for v in keep:
            if not 1 <= v <= self.n:
                raise ValueError(f"vertex {v} outside 1..{self.n}")
        relabel = {v: i + 1 for i, v in enumerate(keep)}
        keep_set = set(keep)
        new_edges = [
            tuple(relabel[v] for v in e)
            for e in self.edges
            if keep_set.issuperset(e)
        ]
        return Hypergraph(len(keep), self.k, new_edges), relabel

    def delete_vertices(self, s: Iterable[int]) -> tuple["Hypergraph", dict[int, int]]:
        """Remove s and all incident edges; survivors are relabeled to 1..n-|s|."""
        drop = set(s)
        return self.induced(v for v in self.vertices() if v not in drop)

    def delete_edges(self, f: Iterable[Iterable[int]]) -> tuple["Hypergraph", int]:
        """Remove the listed edges; returns the graph and how many were absent."""
        requested = {tuple(sorted(e)) for e in f}
        ignored = len(requested - self.edge_set)
        remaining = [e for e in self.edges if e not in requested]
        return Hypergraph(self.n, self.k, remaining), ignored


def build(n: int, k: int, edges: Iterable[Iterable[int]] = ()) -> Hypergraph:
    """Validated construction; duplicates collapse, bad edges raise."""
    return Hypergraph(n, k, edges)


def complete_graph(n: int, k: int) -> Hypergraph:
    return Hypergraph(n, k, combinations(range(1, n + 1), k))


def relabel_graph(h: Hypergraph, mapping: dict[int, int]) -> Hypergraph:
    """Apply a vertex bijection on [n] (useful for re-homing constructions)."""
    if sorted(mapping) != list(h.vertices()) or sorted(mapping.values()) != list(h.vertices()):
        raise ValueError("mapping must be a bijection on 1..n")
    return Hypergraph(h.n, h.k, [tuple(mapping[v] for v in e) for e in h.edges])


def random_hypergraph(n: int, k: int, p: float, seed: int) -> Hypergraph:
    """Each k-set appears independently with probability p; fixed by seed."""
    if not 0 <= p <= 1:
        raise ValueError(f"probability {p} outside [0, 1]")
    rng = random.Random(seed)
    edges = [e for e in combinations(range(1, n + 1), k) if rng.random() < p]
    return Hypergraph(n, k, edges)


# -- file formats ---------------------------------------------------------
#
# Text format (".hg"): '#' comment lines, then a "k n m" header line, then
# m lines of k strictly ascending 1-based vertex ids, newline-terminated.


def write_hg(h: Hypergraph, path: str) -> None:
    with open(path, "w") as fh:
        fh.write(f"{h.k} {h.n} {h.e()}\n")
        for e in h.edges:
            fh.write(" ".join(map(str, e)) + "\n")


def read_hg(path: str) -> Hypergraph:
    with open(path) as fh:
        lines = [
            ln.strip()
            for ln in fh
            if ln.strip() and not ln.lstrip().startswith("#")
        ]
    if not lines:
        raise ValueError(f"{path}: no header line")
    header = lines[0].split()
    if len(header) != 3:
        raise ValueError(f"{path}: header must be 'k n m', got {lines[0]!r}")
    try:
        k, n, m = (int(x) for x in header)
    except ValueError as exc:
        raise ValueError(f"{path}: non-integer header {lines[0]!r}") from exc
    body = lines[1:]
    if len(body) != m:
        raise ValueError(f"{path}: header promises {m} edges, found {len(body)}")
    edges = []
    for ln in body:
        parts = ln.split()
        if len(parts) != k:
            raise ValueError(f"{path}: edge line {ln!r} does not have {k} ids")
        ids = [int(x) for x in parts]
        if any(b <= a for a, b in zip(ids, ids[1:])):
            raise ValueError(f"{path}: edge line {ln!r} is not strictly ascending")
        if ids[0] < 1 or ids[-1] > n:
            raise ValueError(f"{path}: edge line {ln!r} leaves 1..{n}")
        edges.append(tuple(ids))
    return Hypergraph(n, k, edges)


def to_json_dict(h: Hypergraph) -> dict:
    return {"k": h.k, "n": h.n, "edges": [list(e) for e in h.edges]}


def from_json_dict(d: dict) -> Hypergraph:
    return Hypergraph(int(d["n"]), int(d["k"]), [tuple(e) for e in d["edges"]])


def write_json(h: Hypergraph, path: str) -> None:
    with open(path, "w") as fh:
        json.dump(to_json_dict(h), fh)
        fh.write("\n")


def read_json(path: str) -> Hypergraph:
    with open(path) as fh:
        return from_json_dict(json.load(fh))
