from dataclasses import replace
from fractions import Fraction

import pytest

from spectral_cliques import (find_stability_witness, niro_premise,
                              random_graph, stability_premise,
                              stability_report, turan_graph, verify_witness,
                              witness_thresholds)
from spectral_cliques.stability import StabilityWitness, alpha_limit


class TestPremise:
    def test_t28(self):
        assert stability_premise(turan_graph(2, 8), 2, 0)

    def test_c5_fails(self, c5):
        assert not stability_premise(c5, 2, 0)

    def test_k4_not_kfree(self, k4):
        assert not stability_premise(k4, 2, 0)

    def test_alpha_out_of_range(self):
        g = turan_graph(2, 8)
        assert not stability_premise(g, 2, alpha_limit(2) * 2)
        assert not stability_premise(g, 2, -0.1)

    def test_bad_r(self, c5):
        with pytest.raises(ValueError):
            stability_premise(c5, 1, 0)


class TestThresholds:
    def test_t36_values(self):
        a = 2 ** -10 * 3 ** -6
        order_min, degree_min = witness_thresholds(6, 3, a)
        c = a ** (1 / 3)
        assert order_min == pytest.approx((1 - 3 * c) * 6)
        assert degree_min == pytest.approx((2 / 3 - 6 * c) * 6)
        assert 5.7 < order_min < 6.0
        assert 3.5 < degree_min < 4.0


class TestWitnessSearch:
    def test_t36_whole_graph(self, t36):
        a = 2 ** -10 * 3 ** -6
        w = find_stability_witness(t36, 3, a, "exhaustive")
        assert w is not None
        assert w.order == 6 and w.min_degree == 4
        assert verify_witness(t36, 3, a, w)

    def test_t36_heuristic(self, t36):
        a = 2 ** -10 * 3 ** -6
        w = find_stability_witness(t36, 3, a, "heuristic")
        assert w is not None and w.order == 6
        assert verify_witness(t36, 3, a, w)

    def test_premise_enforced(self, c5):
        with pytest.raises(ValueError):
            find_stability_witness(c5, 2, 1e-5)

    def test_exhaustive_budget(self):
        g = turan_graph(2, 18)
        with pytest.raises(ValueError):
            find_stability_witness(g, 2, 0, "exhaustive")

    def test_alpha_zero_boundary(self):
        g = turan_graph(2, 8)
        w = find_stability_witness(g, 2, 0, "exhaustive")
        assert w is not None and w.order == 8
        assert verify_witness(g, 2, 0, w)
        rep = stability_report(g, 2, 0)
        assert rep.boundary and rep.verdict == "witnessed"

    @pytest.mark.parametrize("r,n", [(2, 6), (2, 8), (2, 10), (2, 12),
                                     (3, 6), (3, 9), (3, 12)])
    def test_turan_family(self, r, n):
        g = turan_graph(r, n)
        a = alpha_limit(r)
        assert stability_premise(g, r, a)
        w = find_stability_witness(g, r, a, "exhaustive")
        assert w is not None
        assert verify_witness(g, r, a, w)

    def test_heuristic_never_beats_exhaustive(self):
        for r, n in [(2, 6), (2, 8), (3, 6), (3, 9)]:
            g = turan_graph(r, n)
            a = alpha_limit(r)
            we = find_stability_witness(g, r, a, "exhaustive")
            wh = find_stability_witness(g, r, a, "heuristic")
            if wh is not None:
                assert wh.order <= we.order


class TestVerifyWitness:
    def _witness(self, t36):
        a = 2 ** -10 * 3 ** -6
        return a, find_stability_witness(t36, 3, a, "exhaustive")

    def test_tampered_partition_fails(self, t36):
        a, w = self._witness(t36)
        # swap two vertices across classes so a class gains an internal edge
        bad = replace(w, partition=((0, 2), (1, 3), (4, 5)))
        assert not verify_witness(t36, 3, a, bad)

    def test_short_witness_fails(self, t36):
        a, _ = self._witness(t36)
        small = StabilityWitness(vertices=0b1111, partition=((0, 1), (2, 3)),
                                 order=4, min_degree=2)
        assert not verify_witness(t36, 3, a, small)

    def test_vertices_outside_graph(self, t36):
        a, w = self._witness(t36)
        bad = replace(w, vertices=w.vertices | 1 << 10)
        with pytest.raises(ValueError):
            verify_witness(t36, 3, a, bad)

    def test_classes_not_covering(self, t36):
        a, w = self._witness(t36)
        bad = replace(w, partition=w.partition[:-1])
        with pytest.raises(ValueError):
            verify_witness(t36, 3, a, bad)

    def test_too_many_classes(self, t36):
        a, w = self._witness(t36)
        # a 4-class partition is not a 3-partition
        bad = replace(w, partition=((0, 1), (2,), (3,), (4, 5)))
        assert not verify_witness(t36, 3, a, bad)


class TestNiro:
    def test_t28(self):
        assert niro_premise(turan_graph(2, 8), 2, Fraction(1, 2 ** 9 * 2 ** 6))

    def test_c5(self, c5):
        assert not niro_premise(c5, 2, Fraction(1, 2 ** 9 * 2 ** 6))

    def test_k4_not_free(self, k4):
        assert not niro_premise(k4, 3, Fraction(1, 10 ** 6))

    def test_beta_range(self):
        g = turan_graph(2, 8)
        assert not niro_premise(g, 2, 0)
        assert not niro_premise(g, 2, Fraction(1, 100))


class TestReport:
    def test_premise_failed_report(self, c5):
        rep = stability_report(c5, 2, 1e-5)
        assert not rep.premise_ok and rep.verdict == "premise-failed"
        assert rep.witness is None

    def test_witnessed_report_serializes(self, t36):
        rep = stability_report(t36, 3, 2 ** -10 * 3 ** -6)
        d = rep.to_dict()
        assert d["verdict"] == "witnessed"
        assert d["witness"]["order"] == 6
        assert d["thresholds"]["order_min"] < 6

    def test_no_exhaustive_miss_on_premise_satisfying_samples(self):
        # bipartite-ish near-extremal inputs for r = 2
        for seed in range(40):
            g = random_graph(8, 0.5, seed)
            for r in (2, 3):
                a = alpha_limit(r)
                if stability_premise(g, r, a):
                    assert find_stability_witness(g, r, a, "exhaustive") is not None
