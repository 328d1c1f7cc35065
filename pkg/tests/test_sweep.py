import numpy as np

from formreduce.sweep import (
    evaluate_instance,
    generate_instance,
    run_selftest,
)

from oracles import match_multisets


class TestGenerator:
    def test_conjugate_closed_and_even(self, rng):
        for _ in range(300):
            roots, n, eps = generate_instance(rng)
            assert n in (4, 6, 8, 10)
            assert len(roots) == n
            assert eps > 0
            conj = [r.conjugate() for r in roots]
            assert match_multisets(roots, conj) == 0.0

    def test_deterministic(self):
        a = [generate_instance(np.random.default_rng(5))[0] for _ in range(10)]
        b = [generate_instance(np.random.default_rng(5))[0] for _ in range(10)]
        assert a == b


class TestEvaluate:
    def test_reports_on_plain_instance(self):
        label, reports = evaluate_instance([1, -1, 1j, -1j], eps=1e-4)
        assert label.value == "NoCluster"
        names = {r.name for r in reports}
        assert "count_lower" in names and "count_upper" in names
        assert "smallest_half_disk_bound" in names
        assert all(r.holds for r in reports)

    def test_majority_instance_reports(self):
        roots = [0.3 + 1e-6 * w for w in (1, -1, 1j, -1j)]
        label, reports = evaluate_instance(roots, eps=1e-4)
        assert label.value == "Majority"
        names = {r.name for r in reports}
        assert "majority_u_linear" in names
        assert "majority_center_distance" in names
        assert "normalized_center_lower" in names

    def test_half_split_reports(self):
        roots = [-1e-6, 1e-6, 5 - 0.05, 5 + 0.05]
        label, reports = evaluate_instance(roots, eps=1e-4)
        names = {r.name for r in reports}
        assert "half_u_far_disk" in names
        assert "half_u_product_window" in names


class TestSelftest:
    def test_small_run_deterministic(self):
        a = run_selftest(60, seed=11)
        b = run_selftest(60, seed=11)
        assert a.reports_evaluated == b.reports_evaluated
        assert len(a.violations) == len(b.violations)
        assert a.label_counts == b.label_counts
        assert a.solver_failures == 0

    def test_violation_reporting_shape(self):
        result = run_selftest(250, seed=42)
        assert result.solver_failures == 0
        data = result.to_dict()
        assert data["count"] == 250
        for v in data["violations"]:
            assert set(v) == {"index", "roots", "eps", "report"}
            assert v["report"]["holds"] is False
        # any violations must come from the four catalog statements that
        # are falsifiable on extreme configurations
        assert set(data["violation_names"]) <= {
            "half_u_near_disk",
            "half_u_product_window",
            "u_from_ratio_tiny_disks",
            "u_from_ratio_far_centers",
        }

    def test_solid_statements_never_violated(self):
        result = run_selftest(400, seed=7)
        solid_prefixes = (
            "count_", "at_least", "at_most", "half_within", "smallest_half",
            "majority_", "normalized_", "radius_ratio", "half_u_far_disk",
            "ratio_small", "far_gap", "near_center", "center_distance",
            "product_bounded", "u_from_product", "u_all_roots_tiny",
        )
        for v in result.violations:
            assert not v.report.name.startswith(solid_prefixes), v.report
