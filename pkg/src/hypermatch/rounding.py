"""Fractional-to-integral matching rounding.

The stages, in order:

1. extract a family of fractional perfect matchings, removing any edge whose
   pair accumulates weight cap/2 so that no pair ever reaches cap;
2. mix the family and halve it, giving an edge probability in [0, 1] with
   vertex sums t/2;
3. sample each edge independently with that probability and compare realized
   degrees and pair degrees against Chernoff windows;
4. pull a large integral matching out of the sample (greedy min-conflict or
   a semi-random nibble).

Round-by-round feasibility is an empirical matter at desk scale: when a
stage stalls, the family or pipeline reports it rather than masking it.
"""

from __future__ import annotations

import math
import random
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb

from .constructions import augment_universal
from .core import Edge, Hypergraph, edge_mask
from .optimize import FractionalAssignment, Matching, fractional_perfect_matching

_EPS = 1e-12


@dataclass
class FPMFamily:
    """Fractional perfect matchings with capped accumulated pair weight."""

    members: list[FractionalAssignment]
    pair_load: dict[tuple[int, int], Fraction | float]
    cap: float
    threshold: Fraction | float
    status: str
    rounds_requested: int
    mode: str
    heavy_total: list[int] = field(default_factory=list)
    removed_total: list[int] = field(default_factory=list)

    @property
    def complete(self) -> bool:
        return self.status == "complete"

    def heavy_pairs_by_vertex(self) -> Counter:
        """How many threshold-crossing pairs each vertex belongs to."""
        cnt: Counter = Counter()
        for (x, y), load in self.pair_load.items():
            if load >= self.threshold - _EPS:
                cnt[x] += 1
                cnt[y] += 1
        return cnt

    def max_pair_load(self):
        return max(self.pair_load.values(), default=0)


def _uniform_round_budget(n: int, k: int, threshold) -> int:
    # uniform weight 1/C(n-1,k-1) puts (k-1)/(n-1) on every pair per round
    inc = Fraction(k - 1, n - 1)
    u = 0
    while (u + 1) * inc < Fraction(threshold):
        u += 1
    return u


def _find_perfect_matching(
    n: int, edges: list[Edge], masks: list[int], k: int, budget: int = 200_000
) -> list[int] | None:
    """Lex-first DFS for an integral perfect matching among the given edges."""
    if n % k != 0:
        return None
    target = n // k
    by_vertex: dict[int, list[int]] = {v: [] for v in range(1, n + 1)}
    for idx, e in enumerate(edges):
        by_vertex[e[0]].append(idx)  # group by minimum vertex
    full = (1 << n) - 1
    nodes = 0

    def dfs(covered: int, chosen: list[int]) -> list[int] | None:
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            return None
        if len(chosen) == target:
            return chosen
        free = ~covered & full
        v = (free & -free).bit_length()  # lowest uncovered vertex
        for idx in by_vertex[v]:
            if masks[idx] & covered == 0:
                got = dfs(covered | masks[idx], chosen + [idx])
                if got is not None:
                    return got
        return None

    return dfs(0, [])


def _pick_gadget_vertices(
    n: int,
    g: int,
    dead: set,
    heavy_by_vertex: Counter,
    alive_edge_set: set,
    banned_mask: int = 0,
) -> tuple[int, ...] | None:
    """A g-set whose C(g,3) triples are all alive, biased to calm vertices."""
    ranked = [
        v
        for v in sorted(range(1, n + 1), key=lambda u: (heavy_by_vertex[u], u))
        if not banned_mask & (1 << (v - 1))
    ]
    tried = 0
    for cand in combinations(ranked, g):
        tried += 1
        if tried > 5000:
            return None
        if any(tuple(sorted(p)) in dead for p in combinations(cand, 2)):
            continue
        if all(tuple(sorted(tr)) in alive_edge_set for tr in combinations(cand, 3)):
            return cand
    return None


def _near_integral_round(
    h: Hypergraph,
    alive: list[int],
    dead: set,
    heavy_by_vertex: Counter,
    rational: bool,
    rng: random.Random | None,
) -> dict[Edge, Fraction | float] | None:
    """An integral matching on most vertices plus uniform 4-blocks on the rest.

    For 3 | n this is a plain perfect matching. Otherwise one (n % 3 == 1) or
    two (n % 3 == 2) disjoint 4-sets carry their four triples at weight 1/3,
    which tops those vertex sums up to one. 4-blocks rather than one 5-block:
    the survivors of a round must be transversal to the round's vertex blocks,
    and block profiles (3,...,3,4) and (3,...,3,4,4) keep that system solvable
    while (3,...,3,5) does not. With fewer than four blocks total no profile
    with unequal sizes works, so small non-divisible n get no gadget at all.
    """
    k = h.k
    if k != 3:
        return None
    rem = h.n % 3
    blocks = [4] * rem
    if (h.n - 4 * rem) // 3 + rem < 4 and rem:
        return None  # too few blocks for a feasible follow-up round
    sub_edges = [h.edges[i] for i in alive]
    sub_masks = [h.masks[i] for i in alive]
    if rng is not None:
        order = list(range(len(sub_edges)))
        rng.shuffle(order)
        sub_edges = [sub_edges[i] for i in order]
        sub_masks = [sub_masks[i] for i in order]
    one = Fraction(1) if rational else 1.0
    if not blocks:
        pm = _find_perfect_matching(h.n, sub_edges, sub_masks, 3)
        if pm is None:
            return None
        return {sub_edges[i]: one for i in pm}
    alive_set = set(sub_edges)
    weights: dict[Edge, Fraction | float] = {}
    gmask = 0
    gw = Fraction(1, 3) if rational else 1.0 / 3.0
    for g in blocks:
        gadget = _pick_gadget_vertices(
            h.n, g, dead, heavy_by_vertex, alive_set, banned_mask=gmask
        )
        if gadget is None:
            return None
        gmask |= edge_mask(gadget)
        for tr in combinations(gadget, 3):
            weights[tuple(sorted(tr))] = gw
    rest_edges = [e for e, m in zip(sub_edges, sub_masks) if m & gmask == 0]
    rest_masks = [m for m in sub_masks if m & gmask == 0]
    pm = _find_perfect_matching_partial(h.n, rest_edges, rest_masks, 3, gmask)
    if pm is None:
        return None
    for i in pm:
        weights[rest_edges[i]] = one
    return weights


def _find_perfect_matching_partial(
    n: int,
    edges: list[Edge],
    masks: list[int],
    k: int,
    covered0: int,
    budget: int = 200_000,
) -> list[int] | None:
    """DFS for a matching covering exactly the vertices outside covered0."""
    remaining = n - covered0.bit_count()
    if remaining % k != 0:
        return None
    target = remaining // k
    full = (1 << n) - 1
    by_first: dict[int, list[int]] = {}
    for idx, e in enumerate(edges):
        by_first.setdefault(e[0], []).append(idx)
    nodes = 0

    def dfs(covered: int, chosen: list[int]) -> list[int] | None:
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            return None
        if len(chosen) == target:
            return chosen
        free = ~covered & full
        v = (free & -free).bit_length()
        for idx in by_first.get(v, ()):
            if masks[idx] & covered == 0:
                got = dfs(covered | masks[idx], chosen + [idx])
                if got is not None:
                    return got
        return None

    return dfs(covered0, [])


def extract_fpm_family(
    h: Hypergraph,
    t: int,
    cap: float = 2.0,
    mode: str = "float",
    strategy: str = "staged",
    seed: int = 0,
    attempts: int = 6,
) -> FPMFamily:
    """Pull up to t fractional perfect matchings with all pair loads below cap.

    Each round solves on the surviving graph; pairs reaching cap/2 kill every
    edge containing them before the next round. ``staged`` plays uniform
    weights while the graph is still complete, then near-integral matchings,
    then a load-focused LP; ``lp`` solves a bare feasibility LP every round.
    A failed staged run is retried with reshuffled matching searches, up to
    ``attempts`` times, all derived from the seed.
    """
    if t < 1:
        raise ValueError("need t >= 1 rounds")
    if strategy not in ("staged", "lp"):
        raise ValueError(f"unknown strategy {strategy!r}")
    best: FPMFamily | None = None
    tries = attempts if strategy == "staged" else 1
    for attempt in range(max(1, tries)):
        rng = None if attempt == 0 else random.Random(f"{seed}:{attempt}")
        fam = _extract_once(h, t, cap, mode, strategy, rng)
        if fam.complete:
            return fam
        if best is None or len(fam.members) > len(best.members):
            best = fam
    assert best is not None
    return best


def _extract_once(
    h: Hypergraph,
    t: int,
    cap: float,
    mode: str,
    strategy: str,
    rng: random.Random | None,
) -> FPMFamily:
    rational = mode == "rational"
    threshold = Fraction(cap) / 2 if rational else cap / 2.0
    zero = Fraction(0) if rational else 0.0

    k = h.k
    alive = list(range(h.e()))
    pair_load: dict[tuple[int, int], Fraction | float] = {}
    dead: set[tuple[int, int]] = set()
    heavy_by_vertex: Counter = Counter()
    members: list[FractionalAssignment] = []
    heavy_total: list[int] = []
    removed_total: list[int] = []
    status = "complete"

    u_planned = 0
    if strategy == "staged" and h.e() == comb(h.n, h.k):
        u_planned = min(t, _uniform_round_budget(h.n, h.k, threshold))

    for rnd in range(1, t + 1):
        if not alive:
            status = f"infeasible at round {rnd}"
            break
        weights: dict[Edge, Fraction | float] | None = None
        if rnd <= u_planned and not dead:
            w = Fraction(1, comb(h.n - 1, k - 1))
            if not rational:
                w = 1.0 / comb(h.n - 1, k - 1)
            weights = {h.edges[i]: w for i in alive}
        else:
            if strategy == "staged":
                weights = _near_integral_round(
                    h, alive, dead, heavy_by_vertex, rational, rng
                )
            if weights is None:
                sub_edges = [h.edges[i] for i in alive]
                sub = Hypergraph(h.n, h.k, sub_edges)
                objective = None
                if strategy == "staged" and pair_load:
                    objective = {
                        e: sum(
                            (pair_load.get(p, zero) for p in combinations(e, 2)),
                            zero,
                        )
                        for e in sub_edges
                    }
                fpm = fractional_perfect_matching(
                    sub, mode=mode, objective=objective,
                    maximize_objective=objective is not None,
                )
                if fpm is None:
                    status = f"infeasible at round {rnd}"
                    break
                weights = dict(fpm.weights)

        value = Fraction(h.n, k) if rational else h.n / k
        members.append(FractionalAssignment("matching", weights, value, mode))
        for e, w in weights.items():
            if not w:
                continue
            for p in combinations(e, 2):
                load = pair_load.get(p, zero) + w
                pair_load[p] = load
                if load >= cap + 1e-9:
                    raise AssertionError(f"pair {p} reached load {load} >= cap {cap}")
        newly = {
            p
            for p, load in pair_load.items()
            if p not in dead and load >= threshold - _EPS
        }
        dead.update(newly)
        for x, y in newly:
            heavy_by_vertex[x] += 1
            heavy_by_vertex[y] += 1
        before = len(alive)
        if newly:
            newmasks = [edge_mask(p) for p in newly]
            alive = [
                i
                for i in alive
                if not any(h.masks[i] & pm == pm for pm in newmasks)
            ]
        heavy_total.append(len(dead))
        removed_total.append(removed_total[-1] + before - len(alive) if removed_total else before - len(alive))

    return FPMFamily(
        members=members,
        pair_load=pair_load,
        cap=cap,
        threshold=threshold,
        status=status,
        rounds_requested=t,
        mode=mode,
        heavy_total=heavy_total,
        removed_total=removed_total,
    )


def mix_and_halve(family: FPMFamily) -> FractionalAssignment:
    """Half the sum of the family: an edge probability with vertex sums t/2."""
    if not family.members:
        raise ValueError("cannot mix an empty family")
    rational = family.mode == "rational"
    half = Fraction(1, 2) if rational else 0.5
    zero = Fraction(0) if rational else 0.0
    mixed: dict[Edge, Fraction | float] = {}
    for member in family.members:
        for e, w in member.weights.items():
            mixed[e] = mixed.get(e, zero) + w
    out: dict[Edge, Fraction | float] = {}
    for e, w in mixed.items():
        p = w * half
        if p < -1e-9 or p > 1 + 1e-9:
            raise AssertionError(f"mixed weight {p} on {e} escapes [0, 1]")
        if p:
            out[e] = p
    total = sum(out.values(), zero)
    return FractionalAssignment("sampling", out, total, family.mode)


@dataclass
class SampleReport:
    """One binomial edge sample plus its concentration diagnostics."""

    sampled: Hypergraph
    seed: int
    expected_degrees: dict[int, float]
    realized_degrees: dict[int, int]
    degree_deviations: dict[int, float]
    alpha: float
    vertex_violations: int
    vertex_violation_budget: float  # sum of 2 exp(-alpha^2 E/3) over vertices
    max_pair_degree: int
    max_expected_pair_degree: float
    pair_threshold: float
    vertex_ok: bool
    pair_ok: bool


def sample_binomial_subgraph(
    h: Hypergraph,
    f: FractionalAssignment,
    seed: int,
    alpha: float = 1.0,
    pair_threshold: float = 7.0,
) -> SampleReport:
    """Keep each edge independently with probability f(e), fixed by the seed.

    The report compares every realized degree against the small-deviation
    window |d - E| < alpha * E (violation budget 2 exp(-alpha^2 E / 3) per
    vertex) and the largest pair degree against the large-deviation cutoff.
    """
    for e, w in f.weights.items():
        if e not in h:
            raise ValueError(f"weighted edge {e} not in the graph")
        if w < -1e-9 or w > 1 + 1e-9:
            raise ValueError(f"probability {w} on {e} outside [0, 1]")
    rng = random.Random(seed)
    kept = [e for e in h.edges if rng.random() < float(f.weights.get(e, 0.0))]
    sampled = Hypergraph(h.n, h.k, kept)

    expected = {v: 0.0 for v in h.vertices()}
    pair_expected: dict[tuple[int, int], float] = {}
    for e, w in f.weights.items():
        wf = float(w)
        for v in e:
            expected[v] += wf
        for p in combinations(e, 2):
            pair_expected[p] = pair_expected.get(p, 0.0) + wf
    realized = {v: sampled.degree(v) for v in h.vertices()}
    deviations = {v: realized[v] - expected[v] for v in h.vertices()}

    violations = 0
    budget = 0.0
    for v in h.vertices():
        ev = expected[v]
        if ev <= 0:
            continue
        budget += 2 * math.exp(-(alpha**2) * ev / 3)
        if abs(deviations[v]) >= alpha * ev:
            violations += 1

    max_pair = sampled.max_set_degree(2) if sampled.e() else 0
    max_expected_pair = max(pair_expected.values(), default=0.0)
    return SampleReport(
        sampled=sampled,
        seed=seed,
        expected_degrees=expected,
        realized_degrees=realized,
        degree_deviations=deviations,
        alpha=alpha,
        vertex_violations=violations,
        vertex_violation_budget=budget,
        max_pair_degree=max_pair,
        max_expected_pair_degree=max_expected_pair,
        pair_threshold=pair_threshold,
        vertex_ok=violations <= budget,
        pair_ok=max_pair < pair_threshold,
    )


def _subset_degree_tables(edges: list[Edge], alive: list[int], k: int) -> Counter:
    deg: Counter = Counter()
    for i in alive:
        e = edges[i]
        for r in range(1, k + 1):
            for tup in combinations(e, r):
                deg[tup] += 1
    return deg


def _kill_count(e: Edge, deg: Counter, k: int) -> int:
    # inclusion-exclusion: edges meeting e = sum over nonempty T subset of e
    total = 0
    for r in range(1, k + 1):
        sign = 1 if r % 2 == 1 else -1
        total += sign * sum(deg[tup] for tup in combinations(e, r))
    return total


def near_perfect_matching(
    h: Hypergraph,
    strategy: str = "greedy",
    seed: int = 0,
    bite_fraction: float = 0.1,
    max_rounds: int | None = None,
    leave_fraction: float = 0.0,
) -> Matching:
    """A large matching: min-conflict greedy, or random bites plus cleanup.

    Stops early once uncovered vertices drop to leave_fraction * n. No
    near-perfectness is promised; the caller inspects the size.
    """
    edges = list(h.edges)
    masks = list(h.masks)
    alive = list(range(len(edges)))
    chosen: list[int] = []
    covered = 0
    stop_at = h.n - leave_fraction * h.n

    def take(i: int) -> None:
        nonlocal covered, alive
        chosen.append(i)
        covered |= masks[i]
        mi = masks[i]
        alive = [j for j in alive if masks[j] & mi == 0]

    if strategy == "greedy":
        while alive and covered.bit_count() < stop_at:
            deg = _subset_degree_tables(edges, alive, h.k)
            best_i = None
            best_kill = None
            for i in alive:
                kill = _kill_count(edges[i], deg, h.k)
                if best_kill is None or kill < best_kill:
                    best_i, best_kill = i, kill
            take(best_i)
    elif strategy == "nibble":
        rng = random.Random(seed)
        rounds = max_rounds or math.ceil(10 * math.log(max(h.n, 2)))
        for _ in range(rounds):
            if not alive or covered.bit_count() >= stop_at:
                break
            bite = [i for i in alive if rng.random() < bite_fraction]
            rng.shuffle(bite)  # first-come in random order settles conflicts
            for i in bite:
                if masks[i] & covered == 0:
                    take(i)
        for i in list(alive):  # lex-first cleanup pass
            if masks[i] & covered == 0:
                take(i)
    else:
        raise ValueError(f"unknown strategy {strategy!r}")

    return Matching(tuple(sorted(edges[i] for i in chosen)))


# -- end-to-end ---------------------------------------------------------------


def choose_augmentation(n: int, s: int, eta: float = 0.1) -> int:
    """Pick r: universal vertices added so n+r is divisible by 3.

    Prefers 2r inside [n-3s-2*eta*n, n-3s-eta*n]; when that window holds no
    aligned integer, falls back to the smallest aligned r that still leaves
    room for s+r+1 disjoint triples on n+r vertices.
    """
    lo = n - 3 * s - 2 * eta * n
    hi = n - 3 * s - eta * n
    for r in range(0, 2 * n + 1):
        if (n + r) % 3 == 0 and lo <= 2 * r <= hi:
            return r
    for r in range(0, 2 * n + 1):
        if (n + r) % 3 == 0 and 2 * r <= n - 3 * s - 3:
            return r
    return (-n) % 3


@dataclass
class PipelineResult:
    status: str  # "ok" or "failed at <stage>"
    success: bool
    matching: Matching
    s: int
    r: int
    t: int
    seed: int
    diagnostics: dict = field(default_factory=dict)


def pipeline(
    h: Hypergraph,
    s: int,
    t: int | None = None,
    seed: int = 0,
    eta: float = 0.1,
    r: int | None = None,
    cap: float = 2.0,
    mode: str = "float",
    extract_strategy: str = "staged",
    matching_strategy: str = "greedy",
    bite_fraction: float = 0.1,
) -> PipelineResult:
    """Augment, extract, mix, sample, match; keep the part inside the input.

    Succeeds when the matching left inside the original graph exceeds s.
    """
    if h.k != 3:
        raise ValueError("the rounding pipeline is for 3-graphs")
    if r is None:
        r = choose_augmentation(h.n, s, eta)
    hr = augment_universal(h, r)
    if t is None:
        t = max(2, round(hr.n**0.2))
    diag: dict = {"r": r, "t": t, "n_augmented": hr.n}

    fam = extract_fpm_family(hr, t, cap=cap, mode=mode, strategy=extract_strategy)
    diag["extract_status"] = fam.status
    diag["extract_members"] = len(fam.members)
    diag["max_pair_load"] = float(fam.max_pair_load())
    if not fam.complete:
        return PipelineResult(
            f"failed at extract: {fam.status}", False, Matching(()), s, r, t, seed, diag
        )

    mixed = mix_and_halve(fam)
    diag["mixed_total_weight"] = float(mixed.value)

    report = sample_binomial_subgraph(hr, mixed, seed)
    diag["sample_edges"] = report.sampled.e()
    diag["sample_vertex_ok"] = report.vertex_ok
    diag["sample_max_pair_degree"] = report.max_pair_degree

    matching_seed = seed * 1_000_003 + 1
    m_aug = near_perfect_matching(
        report.sampled,
        strategy=matching_strategy,
        seed=matching_seed,
        bite_fraction=bite_fraction,
    )
    diag["matching_in_augmented"] = m_aug.size
    inside = tuple(e for e in m_aug.edges if e[-1] <= h.n)
    matching = Matching(inside)
    matching.validate(h)
    diag["matching_in_input"] = matching.size
    success = matching.size > s
    status = "ok" if success else "failed at matching: best inside has size " + str(
        matching.size
    )
    return PipelineResult(status, success, matching, s, r, t, seed, diag)
