"""Randomized instance generator and the bound-verification sweep.

Instances are conjugate-closed root multisets of even degree n in
{4, 6, 8, 10}.  With probability 1/2 an instance is built from two
clusters with log-uniform radii r1 in [1e-9, 1e-2], r2 in [r1, 10] and a
center separation log-uniform in [r2/10, 100 r2]; otherwise the roots are
drawn from the box [-10, 10]^2.  Cluster instances mix several sub-modes
(real centers, mirrored conjugate clusters, a stacked near-duplicate for
refined-majority configurations, an unpaired near-axis root) so that every
branch of the classification tree that is geometrically reachable gets
exercised.

Each instance gets solved for its covariant point and every applicable
bound report is evaluated; reports that do not hold are collected as
violations.
"""

from __future__ import annotations

import math
import time
import warnings
from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from .bounds import (
    BoundReport,
    c0_window,
    count_bounds,
    half_split_u,
    ratio_bounds,
    smallness_case_bounds,
    t_center_majority,
    thresholds,
    u_upper_majority,
)
from .covariant import covariant_point
from .errors import FormReduceError, NotApplicable
from .forms import BinaryForm
from .geometry import detect_majority_cluster
from .reduction import classify

DEGREES = (4, 6, 8, 10)


def _conj_closed_points(rng, count, center, radius):
    """Sample `count` points in a disk with a real center, closed under
    conjugation: complex-conjugate pairs plus real leftovers."""
    pts = []
    while len(pts) + 2 <= count:
        rho = radius * math.sqrt(rng.uniform(0.0, 1.0))
        phi = rng.uniform(0.0, math.pi)
        w = center + rho * complex(math.cos(phi), math.sin(phi))
        pts.extend([w, w.conjugate()])
    while len(pts) < count:
        pts.append(complex(center + radius * rng.uniform(-1.0, 1.0), 0.0))
    return pts


def _free_points(rng, count, center, radius):
    """Sample `count` unconstrained points in a disk (complex center)."""
    pts = []
    for _ in range(count):
        rho = radius * math.sqrt(rng.uniform(0.0, 1.0))
        phi = rng.uniform(0.0, 2.0 * math.pi)
        pts.append(center + rho * complex(math.cos(phi), math.sin(phi)))
    return pts


def _cluster_instance(rng, n, eps):
    """Two-cluster conjugate-closed instance; returns the root list."""
    half = n // 2
    r1 = 10.0 ** rng.uniform(-9.0, -2.0)
    r2 = 10.0 ** rng.uniform(math.log10(r1), 1.0)
    sep = r2 * 10.0 ** rng.uniform(-1.0, 2.0)
    mode = rng.uniform(0.0, 1.0)
    if mode < 0.35:
        # mirrored conjugate clusters; equal radii by symmetry
        x = rng.uniform(-10.0, 10.0)
        c1 = complex(x, 0.5 * sep)
        upper = _free_points(rng, half, c1, r1)
        return upper + [w.conjugate() for w in upper]
    x1 = rng.uniform(-10.0, 10.0)
    x2 = x1 + sep * (1.0 if rng.uniform(0.0, 1.0) < 0.5 else -1.0)
    if mode < 0.45 and sep < r2:
        # one far-cluster root parked as a real point just outside the
        # tight cluster; a doubled detection radius then sees a majority
        return (
            _conj_closed_points(rng, half, x1, r1)
            + _conj_closed_points(rng, half - 1, x2, r2)
            + [complex(x1 + 3.0 * eps, 0.0)]
        )
    if mode < 0.55 and n >= 8:
        # repeated roots: the tight cluster carries a doubled conjugate pair
        w = complex(x1 + 0.3 * r1, max(0.5 * r1, 1e-12))
        return (
            [w, w.conjugate(), w, w.conjugate()]
            + _conj_closed_points(rng, half - 4, x1, r1)
            + _conj_closed_points(rng, half, x2, r2)
        )
    return (
        _conj_closed_points(rng, half, x1, r1)
        + _conj_closed_points(rng, half, x2, r2)
    )


def _box_instance(rng, n):
    pts = []
    while len(pts) + 2 <= n:
        if rng.uniform(0.0, 1.0) < 0.25:
            pts.extend([complex(rng.uniform(-10.0, 10.0), 0.0) for _ in range(2)])
        else:
            w = complex(rng.uniform(-10.0, 10.0), rng.uniform(0.0, 10.0))
            pts.extend([w, w.conjugate()])
    while len(pts) < n:
        pts.append(complex(rng.uniform(-10.0, 10.0), 0.0))
    return pts


def generate_instance(rng):
    """Draw (roots, n, eps) for one sweep instance.

    eps alternates between the tightest smallness threshold (exercising the
    gated smallness statements) and the growth-lemma scale (reaching the
    large-product classification branches).
    """
    n = int(rng.choice(DEGREES))
    thr = thresholds(n)
    if rng.uniform(0.0, 1.0) < 0.5:
        eps = thr.minimum()
    else:
        eps = min(thr.growth_majority, thr.growth_half)
    if rng.uniform(0.0, 1.0) < 0.5:
        roots = _cluster_instance(rng, n, eps)
    else:
        roots = _box_instance(rng, n)
    return roots, n, eps


def _half_disk_min_radius(roots):
    """Radius of the smallest disk containing at least half of the roots.

    The optimal disk is determined by one, two, or three of its points, so
    scanning those candidate disks is exact.
    """
    pts = [complex(r) for r in roots]
    n = len(pts)
    need = (n + 1) // 2
    best = math.inf

    def covered(c, r):
        rr = r + 1e-12 * (1.0 + r)
        return sum(1 for p in pts if abs(p - c) <= rr)

    for i, p in enumerate(pts):
        if covered(p, 0.0) >= need:
            return 0.0
    for i in range(n):
        for j in range(i + 1, n):
            c = 0.5 * (pts[i] + pts[j])
            r = abs(pts[i] - c)
            if r < best and covered(c, r) >= need:
                best = r
            for k in range(j + 1, n):
                disk = _circum(pts[i], pts[j], pts[k])
                if disk is not None and disk[1] < best and covered(*disk) >= need:
                    best = disk[1]
    return best


def _circum(a, b, c):
    o = (a + b + c) / 3.0
    ax, ay = (a - o).real, (a - o).imag
    bx, by = (b - o).real, (b - o).imag
    cx, cy = (c - o).real, (c - o).imag
    d = 2.0 * (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by))
    if d == 0.0:
        return None
    ux = ((ax * ax + ay * ay) * (by - cy) + (bx * bx + by * by) * (cy - ay)
          + (cx * cx + cy * cy) * (ay - by)) / d
    uy = ((ax * ax + ay * ay) * (cx - bx) + (bx * bx + by * by) * (ax - cx)
          + (cx * cx + cy * cy) * (bx - ax)) / d
    center = complex(ux, uy) + o
    return center, max(abs(a - center), abs(b - center), abs(c - center))


def evaluate_instance(roots, eps):
    """Covariant solve plus every applicable bound report on one instance.

    Returns (case label, reports).
    """
    n = len(roots)
    z = covariant_point(roots)
    t, u = z.t, z.u
    reports = []

    spread = max(abs(complex(r) - complex(t, 0.0)) for r in roots)
    sqrt_n = math.sqrt(n)
    radii = sorted(
        {u * f for f in (0.25, 0.5, 1.0, 2.0, 4.0, sqrt_n, 1.0 / sqrt_n)}
        | {spread * f for f in (0.5, 1.5)}
    )

    def k_within(radius):
        return sum(1 for r in roots if abs(complex(r) - complex(t, 0.0)) <= radius)

    for radius in radii:
        if radius <= 0.0:
            continue
        k = k_within(radius)
        lo, hi = count_bounds(n, k, radius, u)
        reports.extend([lo, hi])

    k_big = k_within(u * sqrt_n)
    reports.append(BoundReport.make(
        "at_least_half_within_u_sqrt_n", 0.5 * n, k_big, n=n, u=u))
    k_small = k_within(u / sqrt_n * (1.0 - 1e-12))
    reports.append(BoundReport.make(
        "at_most_half_within_u_over_sqrt_n", k_small, 0.5 * n, n=n, u=u))
    if u < eps:
        reports.append(BoundReport.make(
            "half_within_eps_radius", 0.5 * n, k_within(eps * sqrt_n), n=n, u=u, eps=eps))
    reports.append(BoundReport.make(
        "smallest_half_disk_bound", _half_disk_min_radius(roots), u * sqrt_n, n=n, u=u))

    form = BinaryForm(leading=1.0, roots=tuple(roots))
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        cls = classify(form, z, eps)

    hit = detect_majority_cluster(roots, eps)
    if hit is not None and 2 * hit.count > n:
        c, r = hit.disk.center, hit.disk.radius
        t_minus_c = abs(complex(t, 0.0) - c)
        if r > 0.0:
            reports.extend(u_upper_majority(n, hit.count, r, t_minus_c, u))
        reports.append(t_center_majority(n, r, t_minus_c))
        c0 = (complex(t, 0.0) - c) / u
        lo, hi = c0_window(n, r / u)
        reports.append(BoundReport.make(
            "normalized_center_lower", lo, abs(c0), n=n, r0=r / u))
        reports.append(BoundReport.make(
            "normalized_center_upper", abs(c0), hi, n=n, r0=r / u))

    if cls.split is not None:
        split = cls.split
        reports.extend(half_split_u(n, split, u))
        try:
            reports.extend(ratio_bounds(n, split, u))
        except NotApplicable:
            pass
        reports.extend(smallness_case_bounds(n, eps, split, u))

    return cls.label, reports


@dataclass
class Violation:
    index: int
    roots: list
    eps: float
    report: object

    def to_dict(self):
        return {
            "index": self.index,
            "roots": [[r.real, r.imag] for r in self.roots],
            "eps": self.eps,
            "report": self.report.to_dict(),
        }


@dataclass
class SelftestResult:
    count: int
    seed: int
    violations: list = field(default_factory=list)
    label_counts: Counter = field(default_factory=Counter)
    reports_evaluated: int = 0
    solver_failures: int = 0
    elapsed: float = 0.0

    @property
    def ok(self):
        return not self.violations and self.solver_failures == 0

    def to_dict(self):
        return {
            "count": self.count,
            "seed": self.seed,
            "ok": self.ok,
            "violations": [v.to_dict() for v in self.violations],
            "violation_names": sorted({v.report.name for v in self.violations}),
            "label_counts": {k.value: v for k, v in self.label_counts.items()},
            "reports_evaluated": self.reports_evaluated,
            "solver_failures": self.solver_failures,
            "elapsed_seconds": self.elapsed,
        }


def run_selftest(count, seed, max_violations=1000):
    """Run the randomized sweep; deterministic for a fixed (count, seed)."""
    rng = np.random.default_rng(seed)
    result = SelftestResult(count=count, seed=seed)
    start = time.perf_counter()
    for index in range(count):
        roots, n, eps = generate_instance(rng)
        try:
            label, reports = evaluate_instance(roots, eps)
        except FormReduceError:
            result.solver_failures += 1
            continue
        result.label_counts[label] += 1
        result.reports_evaluated += len(reports)
        for rep in reports:
            if not rep.holds and len(result.violations) < max_violations:
                result.violations.append(
                    Violation(index=index, roots=list(map(complex, roots)),
                              eps=eps, report=rep)
                )
    result.elapsed = time.perf_counter() - start
    return result
