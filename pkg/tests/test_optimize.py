from fractions import Fraction
from itertools import combinations

import pytest

from hypermatch.constructions import (
    cover_family,
    hilton_milner_family,
    prefix_overlap_family,
)
from hypermatch.core import build, complete_graph
from hypermatch.optimize import (
    check_lp_duality,
    fractional_cover,
    fractional_matching,
    fractional_perfect_matching,
    greedy_rainbow_matching,
    max_independent_set,
    max_matching,
    min_vertex_cover,
    threshold_cover_graph,
)

from conftest import seeded_graph


class TestMaxMatching:
    def test_complete_eight(self):
        assert max_matching(complete_graph(8, 3))[0] == 2

    def test_hilton_milner(self):
        h = hilton_milner_family(10, 3, 2)
        value, witness = max_matching(h)
        assert value == 2
        witness.validate(h)

    def test_cover_family(self):
        h = cover_family(9, 3, 2, w=(1, 2))
        value, witness = max_matching(h)
        assert value == 2 == max_matching(h, exhaustive=True)[0]
        witness.validate(h)

    def test_limit_early_exit(self):
        h = complete_graph(9, 3)
        value, witness = max_matching(h, limit=2)
        assert value == 2 and witness.size == 2

    def test_empty(self):
        assert max_matching(build(5, 3, []))[0] == 0

    @pytest.mark.parametrize("seed", range(25))
    def test_agrees_with_oracle(self, seed):
        h = seeded_graph(seed, n_lo=4, n_hi=8)
        assert max_matching(h)[0] == max_matching(h, exhaustive=True)[0]

    @pytest.mark.parametrize("seed", range(10))
    def test_witness_has_no_disjoint_extension(self, seed):
        h = seeded_graph(seed, n_lo=5, n_hi=9)
        value, witness = max_matching(h)
        used = set()
        for e in witness.edges:
            used.update(e)
        assert not any(not used.intersection(e) for e in h.edges)
        assert value == witness.size


class TestMinVertexCover:
    def test_hilton_milner(self):
        h = hilton_milner_family(10, 3, 2)
        value, witness = min_vertex_cover(h)
        assert value == 3
        witness.validate(h)

    def test_empty(self):
        value, witness = min_vertex_cover(build(6, 3, []))
        assert value == 0 and witness.size == 0

    def test_prefix_overlap(self):
        h = prefix_overlap_family(10, 3, 2, 2)
        assert min_vertex_cover(h)[0] == min_vertex_cover(h, exhaustive=True)[0] == 4

    def test_limit_signals_above(self):
        h = complete_graph(6, 3)  # tau = 4: any 3 vertices leave an edge
        value, witness = min_vertex_cover(h, limit=2)
        assert value == 3 and witness is None

    def test_limit_still_exact_when_below(self):
        h = hilton_milner_family(10, 3, 2)
        value, witness = min_vertex_cover(h, limit=5)
        assert value == 3 and witness is not None

    @pytest.mark.parametrize("seed", range(25))
    def test_agrees_with_oracle(self, seed):
        h = seeded_graph(seed, n_lo=4, n_hi=8)
        assert min_vertex_cover(h)[0] == min_vertex_cover(h, exhaustive=True)[0]


class TestIndependence:
    def test_complete_five(self):
        value, witness = max_independent_set(complete_graph(5, 3))
        assert value == 2
        assert not any(set(e) <= witness for e in complete_graph(5, 3).edges)

    def test_cover_family(self):
        h = cover_family(9, 3, 2, w=(1, 2))
        value, witness = max_independent_set(h)
        assert value == 7
        assert witness == frozenset(range(3, 10))

    def test_empty_graph(self):
        assert max_independent_set(build(6, 3, []))[0] == 6


class TestFractional:
    def test_matching_k4(self):
        fa = fractional_matching(complete_graph(4, 3), "rational")
        assert fa.value == Fraction(4, 3)
        fa.validate(complete_graph(4, 3))

    def test_matching_single_edge(self):
        h = build(3, 3, [(1, 2, 3)])
        assert fractional_matching(h, "rational").value == 1

    def test_matching_empty(self):
        assert fractional_matching(build(4, 3, []), "rational").value == 0

    def test_cover_k4(self):
        fa = fractional_cover(complete_graph(4, 3), "rational")
        assert fa.value == Fraction(4, 3)
        fa.validate(complete_graph(4, 3))

    def test_cover_single_edge(self):
        h = build(4, 3, [(1, 2, 3)])
        fa = fractional_cover(h, "rational")
        assert fa.value == 1

    def test_cover_empty(self):
        assert fractional_cover(build(4, 3, []), "rational").value == 0

    def test_float_mode_close(self):
        h = complete_graph(4, 3)
        fm = fractional_matching(h, "float")
        assert abs(fm.value - 4 / 3) < 1e-9
        assert fm.residual is not None and fm.residual < 1e-9

    def test_duality_examples(self):
        assert check_lp_duality(build(5, 3, []), "rational").nu_star == 0
        rep = check_lp_duality(complete_graph(4, 3), "rational")
        assert rep.nu_star == Fraction(4, 3) and rep.gap == 0

    @pytest.mark.parametrize("seed", range(15))
    def test_duality_and_sandwich(self, seed):
        h = seeded_graph(seed, n_lo=4, n_hi=8)
        rep = check_lp_duality(h, "rational")
        nu = max_matching(h)[0]
        tau = min_vertex_cover(h)[0]
        assert nu <= rep.nu_star <= tau <= h.k * nu

    @pytest.mark.parametrize("seed", [2, 5, 9])
    def test_duality_float(self, seed):
        h = seeded_graph(seed, n_lo=8, n_hi=12)
        rep = check_lp_duality(h, "float")
        assert abs(rep.gap) <= 1e-9

    @pytest.mark.parametrize("n,p,seed", [(20, 0.2, 0), (25, 0.15, 1), (30, 0.1, 2)])
    def test_duality_float_dense(self, n, p, seed):
        from hypermatch.core import random_hypergraph

        h = random_hypergraph(n, 3, p, seed)
        rep = check_lp_duality(h, "float")
        assert abs(rep.gap) <= 1e-9
        assert max_matching(h)[0] <= rep.nu_star + 1e-9


class TestFractionalPerfectMatching:
    def test_complete_six(self):
        h = complete_graph(6, 3)
        fa = fractional_perfect_matching(h, "rational")
        assert fa is not None and fa.value == 2
        sums = {v: Fraction(0) for v in h.vertices()}
        for e, w in fa.weights.items():
            for v in e:
                sums[v] += w
        assert all(s == 1 for s in sums.values())

    def test_isolated_vertex_infeasible(self):
        h = build(7, 3, [(1, 2, 3), (4, 5, 6)])  # vertex 7 uncoverable
        assert fractional_perfect_matching(h, "rational") is None
        assert fractional_perfect_matching(h, "float") is None

    def test_nonmultiple_n_still_possible(self):
        # complete graph on 4 vertices: uniform 1/3 weights are tight everywhere
        fa = fractional_perfect_matching(complete_graph(4, 3), "rational")
        assert fa is not None and fa.value == Fraction(4, 3)


class TestRainbowMatching:
    def test_empty_anchor_set(self):
        assert greedy_rainbow_matching(complete_graph(6, 3), set()).size == 0

    def test_cover_family_exact(self):
        h = cover_family(9, 3, 2, w=(1, 2))
        m = greedy_rainbow_matching(h, {1, 2}, exact=True)
        assert m.size == 2
        m.validate(h)
        assert all(len({1, 2} & set(e)) == 1 for e in m.edges)

    def test_edge_meeting_twice_unusable(self):
        h = build(3, 3, [(1, 2, 3)])
        assert greedy_rainbow_matching(h, {1, 2}).size == 0

    def test_exact_matches_brute_force(self):
        for seed in range(10):
            h = seeded_graph(seed, n_lo=5, n_hi=8)
            anchors = {1, 2, 3}
            rainbow = [e for e in h.edges if len(anchors & set(e)) == 1]
            best = 0  # brute force over all rainbow subsets
            for size in range(len(rainbow), 0, -1):
                if best:
                    break
                for combo in combinations(rainbow, size):
                    used = set()
                    ok = True
                    for e in combo:
                        if used & set(e):
                            ok = False
                            break
                        used.update(e)
                    if ok:
                        best = size
                        break
            exact = greedy_rainbow_matching(h, anchors, exact=True).size
            greedy = greedy_rainbow_matching(h, anchors).size
            assert exact == best
            assert greedy <= exact


class TestThresholdCoverGraph:
    def test_all_ones_gives_complete(self):
        h = build(5, 3, [(1, 2, 3)])
        from hypermatch.optimize import FractionalAssignment

        omega = FractionalAssignment(
            "cover", {v: Fraction(1) for v in h.vertices()}, Fraction(5)
        )
        out, _ = threshold_cover_graph(h, omega)
        assert out == complete_graph(5, 3)

    def test_zero_cover_only_for_empty(self):
        h = build(4, 3, [])
        from hypermatch.optimize import FractionalAssignment

        omega = FractionalAssignment(
            "cover", {v: Fraction(0) for v in h.vertices()}, Fraction(0)
        )
        out, _ = threshold_cover_graph(h, omega)
        assert out.e() == 0

    def test_k4_optimal_cover_fixed_point(self):
        h = complete_graph(4, 3)
        omega = fractional_cover(h, "rational")
        out, _ = threshold_cover_graph(h, omega)
        assert out == h
        assert fractional_matching(out, "rational").value == Fraction(4, 3)

    def test_invalid_cover_rejected(self):
        h = complete_graph(4, 3)
        from hypermatch.optimize import FractionalAssignment

        bad = FractionalAssignment(
            "cover", {v: Fraction(0) for v in h.vertices()}, Fraction(0)
        )
        with pytest.raises(ValueError):
            threshold_cover_graph(h, bad)

    @pytest.mark.parametrize("seed", range(10))
    def test_preserves_fractional_optimum(self, seed):
        from hypermatch.shifting import is_stable

        h = seeded_graph(seed, n_lo=4, n_hi=7)
        omega = fractional_cover(h, "rational")
        out, relabel = threshold_cover_graph(h, omega)
        # the input rides along
        for e in h.edges:
            assert tuple(sorted(relabel[v] for v in e)) in out
        # the cover transfers and the optimum is unchanged
        w_new = {relabel[v]: omega.weight(v) for v in h.vertices()}
        for e in out.edges:
            assert sum(w_new[v] for v in e) >= 1
        assert fractional_matching(out, "rational").value == fractional_matching(
            h, "rational"
        ).value
        assert is_stable(out)
