from fractions import Fraction

import pytest

from qc import (
    BUILTIN_QUANTALES,
    EXT_RATIONAL,
    INF,
    InstanceGenerator,
    PreconditionError,
    VSpace,
    check_category_laws,
    enumerate_filter_families,
    has_uniformly_vanishing_asymmetry,
    oracle_collapsed_formulas,
    oracle_epsilon_reduction,
    oracle_filters,
    run_theorem_suite,
    search_counterexamples,
    triangle_repair,
    validate_vspace,
)
from qc.verify import _dense_values, _violation

E = EXT_RATIONAL


class TestGenerator:
    def test_determinism(self):
        gen = InstanceGenerator(seed=99)
        first = list(gen.instances(8))
        second = list(gen.instances(8))
        assert [s for _, s in first] == [s for _, s in second]
        assert [c for c, _ in first] == [c for c, _ in second]

    def test_seed_changes_stream(self):
        a = [s for _, s in InstanceGenerator(seed=1).instances(5)]
        b = [s for _, s in InstanceGenerator(seed=2).instances(5)]
        assert a != b

    def test_generated_spaces_valid(self):
        for _, space in InstanceGenerator(seed=5).instances(20):
            assert validate_vspace(space).ok
            assert 2 <= space.size <= 5

    def test_force_uva(self):
        gen = InstanceGenerator(seed=5, force_uva=True)
        for _, space in gen.instances(20):
            assert has_uniformly_vanishing_asymmetry(space).ok

    def test_force_separated(self):
        from qc import classify

        gen = InstanceGenerator(seed=5, force_separated=True)
        for _, space in gen.instances(20):
            assert classify(space)["separated"]

    def test_force_symmetric(self):
        from qc import classify

        gen = InstanceGenerator(seed=5, force_symmetric=True)
        for _, space in gen.instances(20):
            assert classify(space)["symmetric"]

    def test_finite_quantale_generation(self):
        gen = InstanceGenerator(seed=5, quantale=BUILTIN_QUANTALES["Q3"])
        for _, space in gen.instances(10):
            assert validate_vspace(space).ok
            assert space.quantale == BUILTIN_QUANTALES["Q3"]


class TestTriangleRepair:
    def test_never_increases_and_bounded(self):
        import random

        rng = random.Random(4)
        for _ in range(30):
            n = rng.randint(2, 5)
            raw = [
                [
                    Fraction(0)
                    if i == j
                    else Fraction(rng.randint(0, 5), rng.randint(1, 3))
                    for j in range(n)
                ]
                for i in range(n)
            ]
            repaired, rounds = triangle_repair(E, raw)
            assert rounds <= n * n * n
            for i in range(n):
                for j in range(n):
                    assert E.leq(repaired[i][j], raw[i][j])
            assert validate_vspace(
                VSpace(E, [f"p{i}" for i in range(n)], repaired)
            ).ok

    def test_fixpoint_state(self, x2a):
        repaired, rounds = triangle_repair(E, x2a.dmat)
        assert [list(r) for r in x2a.dmat] == repaired


class TestFamilyOracle:
    @pytest.mark.parametrize("n,count", [(1, 2), (2, 4), (3, 8)])
    def test_family_counts(self, n, count):
        assert len(list(enumerate_filter_families(n))) == count

    def test_enumeration_capped(self):
        with pytest.raises(PreconditionError):
            list(enumerate_filter_families(4))

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_oracle_filters_pass(self, n):
        report = oracle_filters(n)
        assert report.ok
        assert report.passes == report.instances

    def test_collapsed_formulas_pass_at_four(self):
        report = oracle_collapsed_formulas(4)
        assert report.ok


class TestEpsilonOracle:
    @pytest.mark.parametrize(
        "predicate",
        ["has_va", "has_uva", "is_cauchy", "is_round", "converges", "point_filter"],
    )
    def test_reduction_on_fixtures(self, predicate, x2a, x2n, x3z):
        for space in (x2a, x2n, x3z):
            report = oracle_epsilon_reduction(space, predicate, samples=300, seed=2)
            assert report.ok, report.failures

    def test_finite_quantale_refused(self, Q3):
        space = VSpace(Q3, ["a"], [[0]])
        with pytest.raises(PreconditionError):
            oracle_epsilon_reduction(space, "has_va")

    def test_dense_values_are_exact_positives(self, x2a):
        values = _dense_values(x2a, 200, seed=1)
        assert values[-1] == INF
        for v in values[:-1]:
            assert isinstance(v, Fraction) and v > 0

    def test_unknown_predicate(self, x2a):
        with pytest.raises(PreconditionError):
            oracle_epsilon_reduction(x2a, "nonsense")


class TestTheoremSuite:
    def test_uva_run_passes(self):
        reports = run_theorem_suite(InstanceGenerator(seed=13, force_uva=True), 12)
        assert all(r.ok for r in reports), [r.id for r in reports if not r.ok]
        ran = {r.id for r in reports if r.instances}
        assert "completion.universal_property" in ran
        assert "filters.minimal_iff_cauchy_round_under_uva" in ran

    def test_unconstrained_run_passes(self):
        reports = run_theorem_suite(InstanceGenerator(seed=14), 12)
        assert all(r.ok for r in reports), [r.id for r in reports if not r.ok]

    def test_q3_run_passes(self):
        gen = InstanceGenerator(
            seed=15, quantale=BUILTIN_QUANTALES["Q3"], force_uva=True
        )
        reports = run_theorem_suite(gen, 10)
        assert all(r.ok for r in reports)

    def test_q1_run_exercises_degenerate_checks(self):
        gen = InstanceGenerator(seed=16, quantale=BUILTIN_QUANTALES["Q1"])
        reports = run_theorem_suite(gen, 8)
        assert all(r.ok for r in reports)
        by_id = {r.id: r for r in reports}
        assert by_id["degenerate.completion_single_point"].instances == 8
        assert by_id["degenerate.uva_everywhere"].instances == 8
        # roundness lemmas need a positive cone and must not run over Q1
        assert by_id["filters.roundify_round_under_uva"].instances == 0

    def test_reports_are_replayable(self):
        gen = InstanceGenerator(seed=17, force_uva=True)
        reports = run_theorem_suite(gen, 3)
        payloads = [r.payload() for r in reports]
        for p in payloads:
            assert set(p) == {"id", "instances", "passes", "failures"}

    def test_determinism_of_payloads(self):
        gen = InstanceGenerator(seed=18, force_uva=True)
        a = [r.payload() for r in run_theorem_suite(gen, 5)]
        b = [r.payload() for r in run_theorem_suite(gen, 5)]
        assert a == b


class TestCategoryLaws:
    def test_laws_hold(self):
        reports = check_category_laws(InstanceGenerator(seed=21), 15)
        assert all(r.ok for r in reports), [r.id for r in reports if not r.ok]
        assert {r.id for r in reports} == {
            "category.identity_morphism",
            "category.powerset_left_adjoint",
            "category.carrier_right_adjoint",
            "category.roundify_functorial",
            "category.roundify_adjunction",
            "category.composition",
        }

    def test_carriers_capped_at_three(self):
        gen = InstanceGenerator(seed=22, max_points=5)
        reports = check_category_laws(gen, 5)
        assert all(r.instances == 5 for r in reports)


class TestCounterexampleSearch:
    def test_zero_budget(self):
        result = search_counterexamples(
            "roundify-round-without-UVA", InstanceGenerator(seed=23), 0
        )
        assert result.examined == 0 and result.findings == ()

    def test_roundify_round_finding_on_known_space(self, x2n):
        witness = _violation(x2n, "roundify-round-without-UVA")
        assert witness == {"core": ("b",)}

    def test_embedding_isometry_finding_on_known_space(self, x2n):
        witness = _violation(x2n, "embedding-isometry-without-UVA")
        assert witness is not None
        assert witness["pair"] == ("b", "a")
        assert witness["filter_distance"] == "0"
        assert witness["distance"] == "1"

    def test_search_produces_shrunk_findings(self):
        result = search_counterexamples(
            "roundify-round-without-UVA", InstanceGenerator(seed=24), 40
        )
        assert result.findings
        for finding in result.findings:
            assert finding["shrunk_witness"] is not None
            assert len(finding["shrunk"]["points"]) <= len(
                finding["instance"]["points"]
            )
            # findings replay: the recorded seed regenerates the instance
            gen = InstanceGenerator(seed=24)
            replayed = gen.space_from_seed(finding["seed"])
            from qc import serialize

            assert serialize.space_to_payload(replayed) == finding["instance"]
            break

    def test_minimal_iff_search(self):
        result = search_counterexamples(
            "minimal-iff-without-UVA", InstanceGenerator(seed=25), 40
        )
        # findings are reports, not guarantees; when present they must replay
        for finding in result.findings:
            assert finding["witness"] is not None

    def test_unknown_target(self):
        with pytest.raises(PreconditionError):
            search_counterexamples("nonsense", InstanceGenerator(seed=1), 1)

    def test_uva_instances_never_counted_as_findings(self):
        result = search_counterexamples(
            "roundify-round-without-UVA",
            InstanceGenerator(seed=26, force_uva=True),
            20,
        )
        assert result.findings == ()


class TestCrossSpaceReduction:
    def test_uc_between_different_spaces_matches_dense(self, x2a, x3z):
        # the combined test set must decide uniform continuity exactly as a
        # dense stratified sample over both spaces' threshold cells does
        import random

        from qc.vspace import _uc_over, combined_test_values
        from helpers import all_maps

        rng = random.Random(9)
        dense = sorted(
            {
                Fraction(rng.randint(1, 40), rng.randint(1, 12))
                for _ in range(400)
            }
        ) + [INF]
        tv = combined_test_values(x2a, x3z)
        for fmap in all_maps(list(x2a.points), list(x3z.points)):
            fidx = tuple(x3z.index(fmap[p]) for p in x2a.points)
            assert bool(_uc_over(fidx, x2a, x3z, tv, tv)) == bool(
                _uc_over(fidx, x2a, x3z, dense, dense)
            )


class TestFailureReporting:
    def test_failing_check_recorded_as_data(self):
        from qc.verify import TheoremCheck, run_theorem_suite

        def bad(ctx):
            return {"boom": True}

        gen = InstanceGenerator(seed=31, force_uva=True)
        reports = run_theorem_suite(gen, 3, checks=(TheoremCheck("test.always_fails", bad),))
        report = [r for r in reports if r.id == "test.always_fails"][0]
        assert report.instances == 3 and report.passes == 0
        assert len(report.failures) == 3
        for record in report.failures:
            assert set(record) == {"seed", "instance", "witness"}
            assert record["witness"] == {"boom": True}
            assert record["instance"]["points"]

    def test_raising_check_becomes_witness(self):
        from qc import PreconditionError as PE
        from qc.verify import TheoremCheck, run_theorem_suite

        def explodes(ctx):
            raise PE("deliberate")

        gen = InstanceGenerator(seed=32, force_uva=True)
        reports = run_theorem_suite(gen, 2, checks=(TheoremCheck("test.raises", explodes),))
        report = [r for r in reports if r.id == "test.raises"][0]
        assert report.failures
        assert report.failures[0]["witness"] == {"error": "deliberate"}


class TestNonChainSuite:
    def test_theorem_suite_over_pinched_diamond(self, pinched):
        gen = InstanceGenerator(seed=606, quantale=pinched, force_uva=True)
        reports = run_theorem_suite(gen, 10)
        assert all(r.ok for r in reports), [r.id for r in reports if not r.ok]

    def test_category_laws_over_pinched_diamond(self, pinched):
        reports = check_category_laws(InstanceGenerator(seed=608, quantale=pinched), 6)
        assert all(r.ok for r in reports)
