from fractions import Fraction

import pytest

from qc import (
    EXT_RATIONAL,
    INF,
    VSpace,
    ball,
    classify,
    has_vanishing_asymmetry,
    quasi_uniformity_of,
    topology_of,
    topology_of_relation,
    uva_equivalence_report,
    va_equivalence_report,
)

E = EXT_RATIONAL


class TestTopology:
    def test_sierpinski_forward(self, x2n):
        assert topology_of(x2n).open_sets() == ((), ("b",), ("a", "b"))

    def test_sierpinski_backward(self, x2n):
        assert topology_of(x2n, "backward").open_sets() == ((), ("a",), ("a", "b"))

    def test_symmetric_two_points_discrete(self, x2s):
        assert topology_of(x2s).is_discrete

    def test_closure_under_union_and_intersection(self, x3z):
        top = topology_of(x3z)
        opens = list(top.opens)
        for a in opens:
            for b in opens:
                assert a | b in top.opens
                assert a & b in top.opens
        assert 0 in top.opens and x3z.full_mask in top.opens

    def test_degenerate_indiscrete(self, xq1):
        assert topology_of(xq1).open_sets() == ((), ("p", "q"))

    def test_zero_identified_points_share_opens(self, x3z):
        top = topology_of(x3z)
        for names in top.open_sets():
            assert ("a" in names) == ("b" in names)


class TestQuasiUniformity:
    def test_x2a_diagonal(self, x2a):
        assert quasi_uniformity_of(x2a).core == ((True, False), (False, True))

    def test_x2n_extra_pair(self, x2n):
        core = quasi_uniformity_of(x2n).core
        assert core == ((True, True), (False, True))
        assert quasi_uniformity_of(x2n).related("a", "b")

    def test_symmetric_sides_agree(self, x2s, x3z):
        for space in (x2s, x3z):
            assert (
                quasi_uniformity_of(space).core
                == quasi_uniformity_of(space, "backward").core
            )

    def test_degenerate_full_relation(self, xq1):
        assert quasi_uniformity_of(xq1).core == ((True, True), (True, True))

    def test_relation_topology_matches_ball_topology(self, x2a, x2n, x3z, xq1):
        for space in (x2a, x2n, x3z, xq1):
            for side in ("forward", "backward"):
                uni = quasi_uniformity_of(space, side)
                assert (
                    topology_of_relation(space.points, uni.core).opens
                    == topology_of(space, side).opens
                )


class TestEquivalenceReports:
    def test_x2a_all_true(self, x2a):
        report = uva_equivalence_report(x2a)
        assert report.holds
        assert all(bool(v) for v in report.conditions.values())

    def test_x2n_all_false_with_witnesses(self, x2n):
        report = uva_equivalence_report(x2n)
        assert not report.holds
        assert not any(bool(v) for v in report.conditions.values())
        assert report.conditions["uniform_modulus"].witness["epsilon"] == "1/2"
        assert report.conditions["identity_uniformly_continuous"].witness is not None
        assert report.conditions["uniformities_equal"].witness == {"pair": ("a", "b")}

    def test_va_symmetric_space(self, x2s):
        report = va_equivalence_report(x2s)
        assert report.holds

    def test_va_x2n_false(self, x2n):
        report = va_equivalence_report(x2n)
        assert not report.holds
        assert not any(bool(v) for v in report.conditions.values())

    def test_degenerate_reports(self, xq1):
        assert va_equivalence_report(xq1).holds
        assert uva_equivalence_report(xq1).holds


class TestClosedBalls:
    def test_backward_balls_closed_in_forward_topology(self, x2a, x2n, x3z):
        for space in (x2a, x2n, x3z):
            top = topology_of(space)
            for p in space.points:
                for eps in space.test_values:
                    b = ball(space, p, eps, "backward")
                    complement = frozenset(space.points) - b
                    assert top.is_open(complement)

    def test_forward_balls_closed_when_va(self, x2a, x2s, x3z):
        for space in (x2a, x2s, x3z):
            assert has_vanishing_asymmetry(space).ok
            top = topology_of(space)
            for p in space.points:
                for eps in space.test_values:
                    b = ball(space, p, eps, "forward")
                    complement = frozenset(space.points) - b
                    assert top.is_open(complement)

    def test_forward_ball_open_counterexample_without_va(self, x2n):
        # B_{1/2}(b) = {b} but {a} is not open: the literal same-orientation
        # statement needs vanishing asymmetry
        top = topology_of(x2n)
        assert ball(x2n, "b", Fraction(1, 2)) == frozenset({"b"})
        assert not top.is_open({"a"})


class TestHausdorff:
    def test_separated_va_implies_discrete(self, x2a, x2s):
        for space in (x2a, x2s):
            assert classify(space)["separated"]
            assert has_vanishing_asymmetry(space).ok
            assert topology_of(space).is_discrete

    def test_non_separated_not_discrete(self, x3z):
        assert not topology_of(x3z).is_discrete
