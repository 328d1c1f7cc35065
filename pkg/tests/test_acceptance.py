"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Criteria 5 and 8 encode statements and coverage targets that the library's
own verification machinery demonstrates to be unattainable (four cataloged
inequalities fail on extreme configurations, and two classification labels
are unreachable from detection); those tests implement the criteria
faithfully and are expected to fail, with the analysis recorded alongside
the failures they print.
"""

import math
import time

import numpy as np
import pytest

from formreduce import (
    BinaryForm,
    CaseLabel,
    act,
    classic_reduce,
    cluster_reduce,
    covariant_point,
    expand,
    from_coeffs,
    fundamental_status,
    residuals,
    smallest_enclosing_disk,
    tangent_sum,
)
from formreduce.bounds import thresholds
from formreduce.forms import UnimodularMatrix
from formreduce.sweep import generate_instance, run_selftest

from conftest import random_conjugate_closed
from oracles import (
    brute_force_sed_fast,
    classify_oracle,
    grid_minimizer,
    random_unimodular,
)


def report(number, ok, detail):
    status = "PASS" if ok else "FAIL"
    print(f"ACCEPTANCE {number}: {status} - {detail}")
    assert ok, f"criterion {number}: {detail}"


@pytest.fixture(scope="module")
def full_sweep():
    return run_selftest(10_000, seed=42)


def test_criterion_1_covariant_solver():
    rng = np.random.default_rng(101)
    start = time.perf_counter()
    worst_res, worst_tan = 0.0, 0.0
    for i in range(200):
        n = 3 + i % 8
        roots = random_conjugate_closed(rng, n)
        z = covariant_point(roots)
        r_mass, r_bal = residuals(roots, z.t, z.u)
        res = max(abs(r_mass), abs(r_bal))
        tan = float(np.linalg.norm(tangent_sum(roots, z)))
        worst_res = max(worst_res, res / (1e-10 * n))
        worst_tan = max(worst_tan, tan / (1e-8 * n))
    elapsed = time.perf_counter() - start
    ok = worst_res <= 1.0 and worst_tan <= 1.0 and elapsed < 10.0
    report(
        1, ok,
        f"200 solves: residual margin {worst_res:.2e}, tangent margin "
        f"{worst_tan:.2e}, {elapsed:.2f}s (< 10s)",
    )


def test_criterion_2_equivariance():
    rng = np.random.default_rng(202)
    checked, worst = 0, 0.0
    while checked < 100:
        n = int(rng.integers(3, 9))
        roots = random_conjugate_closed(rng, n)
        f = BinaryForm(leading=1.0, roots=tuple(roots))
        a, b, c, d = random_unimodular(rng)
        g = UnimodularMatrix(a, b, c, d)
        try:
            moved = act(f, g.inverse())
            zg = covariant_point(moved.roots)
        except Exception:
            continue
        z = covariant_point(f.roots)
        expected = g.mobius(z.as_complex())
        err = abs(zg.as_complex() - expected) / (1 + abs(expected))
        worst = max(worst, err)
        checked += 1
    ok = worst <= 1e-7
    report(2, ok, f"100 matrix pairs: worst relative error {worst:.2e} (<= 1e-7)")


def test_criterion_3_distance_sum_oracle():
    rng = np.random.default_rng(303)
    worst = 0.0
    for _ in range(20):
        n = int(rng.integers(3, 7))
        roots = random_conjugate_closed(rng, n, box=1.5)
        z = covariant_point(roots)
        t, u = grid_minimizer(roots, step=1e-3)
        worst = max(worst, abs(z.t - t), abs(z.u - u))
    ok = worst <= 5e-3
    report(3, ok, f"20 forms vs grid minimizer: worst coordinate gap {worst:.2e} (<= 5e-3)")


def test_criterion_4_smallest_enclosing_disk():
    rng = np.random.default_rng(404)
    start = time.perf_counter()
    worst = 0.0
    for _ in range(500):
        count = int(rng.integers(1, 31))
        pts = [complex(x, y) for x, y in rng.uniform(-10, 10, size=(count, 2))]
        got = smallest_enclosing_disk(pts)
        want = brute_force_sed_fast(pts)
        worst = max(worst, abs(got.radius - want))
    elapsed = time.perf_counter() - start
    ok = worst <= 1e-10 and elapsed < 5.0
    report(
        4, ok,
        f"500 point sets: worst radius gap {worst:.2e} (<= 1e-10), "
        f"{elapsed:.2f}s (< 5s)",
    )


def test_criterion_5_inequality_sweep(full_sweep):
    result = full_sweep
    by_name = {}
    for v in result.violations:
        by_name.setdefault(v.report.name, []).append(v)
    breakdown = ", ".join(
        f"{name} x{len(vs)}" for name, vs in sorted(by_name.items())
    ) or "none"
    ok = result.ok and result.elapsed < 120.0
    report(
        5, ok,
        f"10^4 instances seed 42 in {result.elapsed:.1f}s (< 120s), "
        f"{result.reports_evaluated} reports, solver failures "
        f"{result.solver_failures}, violations: {breakdown}",
    )


def _growth_instance(rng, kind):
    """Construct a clustered instance with certifiably small u."""
    center = float(rng.uniform(-15.0, 15.0))
    if kind == "majority":
        n = int(rng.choice([4, 6]))
        eps = thresholds(n).minimum()
        spread = eps * 0.2
        w = complex(center + 0.3 * spread, 0.5 * spread)
        roots = [w, w.conjugate()] + [
            complex(center + spread * float(rng.uniform(-1, 1)), 0.0)
            for _ in range(n - 2)
        ]
        return BinaryForm(leading=1.0, roots=tuple(roots)), eps, 2.0
    n = 4
    eps = thresholds(n).minimum()
    style = rng.choice(["far", "product", "tiny"])
    if style == "far":
        r1, r2, sep = 1e-9, 0.05, 0.15
    elif style == "product":
        r1, r2, sep = 1e-9, 0.02, 0.0
    else:
        r1, r2, sep = 1e-8, 2e-3, 5e-3
    roots = (
        center - r1, center + r1,
        center + sep - r2, center + sep + r2,
    )
    return BinaryForm(leading=1.0, roots=roots), eps, 8.0 / 7.0


def test_criterion_6_u_growth():
    rng = np.random.default_rng(606)
    fired, worst_margin = 0, math.inf
    for i in range(100):
        form, eps, required = _growth_instance(rng, "majority" if i % 2 else "half")
        _, trace = cluster_reduce(form, eps=eps)
        cluster_steps = [s for s in trace.steps if s.kind == "cluster_translate"]
        assert cluster_steps, "instance did not fire a cluster step"
        first = cluster_steps[0]
        assert first.u_growth >= required * (1 - 1e-9)
        for step in cluster_steps:
            worst_margin = min(worst_margin, step.u_growth / (8.0 / 7.0))
        fired += len(cluster_steps)
    ok = worst_margin >= 1.0 - 1e-9
    report(
        6, ok,
        f"100 constructed instances, {fired} cluster steps, worst growth "
        f"ratio vs 8/7: {worst_margin:.3f}",
    )


def test_criterion_7_reduction_contract():
    from formreduce.errors import DegreeDrop

    rng = np.random.default_rng(707)
    start = time.perf_counter()
    done, worst_equiv, dropped = 0, 0.0, 0
    while done < 200:
        degree = int(rng.integers(3, 9))
        coeffs = rng.integers(-20, 21, size=degree + 1)
        if coeffs[0] == 0:
            continue
        try:
            f = from_coeffs([float(c) for c in coeffs])
        except Exception:
            continue
        sep = min(
            abs(a - b) for i, a in enumerate(f.roots) for b in f.roots[i + 1:]
        )
        if sep <= 1e-7:  # discriminant (numerically) zero
            continue
        try:
            for reducer in (classic_reduce, cluster_reduce):
                out, trace = reducer(f, max_steps=64)
                assert len(trace.steps) <= 64
                assert fundamental_status(trace.final_z).in_domain
                ca = np.array(expand(out))
                cb = np.array(expand(act(f, trace.total)))
                worst_equiv = max(
                    worst_equiv, float(np.max(np.abs(ca - cb)) / np.max(np.abs(ca)))
                )
        except DegreeDrop:
            # a root sits exactly at the rounded translate target, so the
            # inversion would send it to infinity; such forms are outside
            # the root-list representation by design
            dropped += 1
            continue
        done += 1
    elapsed = time.perf_counter() - start
    ok = worst_equiv <= 1e-8
    report(
        7, ok,
        f"200 integer forms through both reducers in {elapsed:.1f}s, worst "
        f"equivalence error {worst_equiv:.2e} (<= 1e-8), "
        f"{dropped} root-at-infinity forms skipped",
    )


def test_criterion_8_case_tree(full_sweep):
    # coverage of the classification tree over the same 10^4 instances
    seen = {label.value for label in full_sweep.label_counts}
    missing = sorted(label.value for label in CaseLabel if label.value not in seen)

    # independent nested-conditional oracle on 1000 generated instances
    rng = np.random.default_rng(42)
    mismatches = 0
    from formreduce.reduction import classify
    import warnings

    for _ in range(1000):
        roots, n, eps = generate_instance(rng)
        try:
            z = covariant_point(roots)
            form = BinaryForm(leading=1.0, roots=tuple(roots))
            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                got = classify(form, z, eps).label.value
        except Exception:
            mismatches += 1
            continue
        want = classify_oracle(list(map(complex, roots)), z, eps, n)
        if got != want:
            mismatches += 1
    ok = not missing and mismatches == 0
    report(
        8, ok,
        f"labels seen {sorted(seen)}; missing {missing or 'none'}; oracle "
        f"mismatches {mismatches}/1000",
    )
