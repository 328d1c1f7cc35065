"""Evaluable inequality catalog relating root clusters to the covariant point.

Every inequality is encoded as a named BoundReport with the measured
left/right values and the symbol values it was evaluated on.  Statements
with hypotheses are gated: when the hypotheses fail on an instance the
statement is skipped rather than reported as violated.  Comparisons carry a
relative slack of 1e-9 that only widens the allowed region, absorbing
floating-point noise without hiding real violations.

Note: the catalog encodes the statements exactly as formulated, including
two half-split bounds (half_u_near_disk, half_u_product_window) and two
height-smallness conclusions (u_from_ratio_tiny_disks, u_from_ratio_far_centers)
that the verification sweep demonstrably falsifies on extreme
configurations; see the test suite for the recorded counterexamples.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import HypothesesNotMet, NotApplicable, NotMajority
from .geometry import require_distances

_SLACK = 1e-9


def _leq(lhs, rhs, strict=False):
    slack = _SLACK * max(abs(lhs), abs(rhs))
    return (lhs < rhs + slack) if strict else (lhs <= rhs + slack)


@dataclass(frozen=True)
class BoundReport:
    """One evaluated inequality: holds iff lhs <= rhs (or <, when strict)."""

    name: str
    lhs: float
    rhs: float
    holds: bool
    strict: bool = False
    context: dict = field(default_factory=dict)

    @classmethod
    def make(cls, name, lhs, rhs, strict=False, **context):
        return cls(
            name=name,
            lhs=float(lhs),
            rhs=float(rhs),
            holds=_leq(float(lhs), float(rhs), strict),
            strict=strict,
            context={k: v for k, v in context.items()},
        )

    def to_dict(self):
        return {
            "name": self.name,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "holds": self.holds,
            "context": dict(self.context),
        }


@dataclass(frozen=True)
class EpsilonThresholds:
    """Named smallness thresholds; each gates one family of statements."""

    n: int
    ratio_far_intro: float      # 1 / (100 n^2 (2n+3))
    ratio_far: float            # 1 / (n (4n^2+1))
    center_distance: float      # 1 / (100 n (2n+3)^2)
    close_real_product: float   # 3 / (104 n^2 (n+1))
    growth_majority: float      # 1 / (32 (n+1))
    growth_half: float          # 1 / (4 n^2)

    def as_dict(self):
        return {
            "ratio_far_intro": self.ratio_far_intro,
            "ratio_far": self.ratio_far,
            "center_distance": self.center_distance,
            "close_real_product": self.close_real_product,
            "growth_majority": self.growth_majority,
            "growth_half": self.growth_half,
        }

    def minimum(self):
        return min(self.as_dict().values())


def thresholds(n):
    """All named epsilon thresholds for degree n (n >= 3)."""
    n = int(n)
    if n < 3:
        raise ValueError(f"degree {n} < 3")
    return EpsilonThresholds(
        n=n,
        ratio_far_intro=1.0 / (100.0 * n * n * (2 * n + 3)),
        ratio_far=1.0 / (n * (4.0 * n * n + 1.0)),
        center_distance=1.0 / (100.0 * n * (2 * n + 3) ** 2),
        close_real_product=3.0 / (104.0 * n * n * (n + 1)),
        growth_majority=1.0 / (32.0 * (n + 1)),
        growth_half=1.0 / (4.0 * n * n),
    )


def count_bounds(n, k, radius, u):
    """Window for the number k of roots inside the disk (t, radius).

    Strict lower bound (n/2)(1 - u^2/R^2) < k and non-strict upper bound
    k <= (n/2)(1 + R^2/u^2); returned as two reports.
    """
    if radius <= 0.0 or u <= 0.0:
        raise ValueError("radius and u must be positive")
    if not 0 <= k <= n:
        raise ValueError(f"k = {k} outside [0, {n}]")
    lower = 0.5 * n * (1.0 - (u * u) / (radius * radius))
    upper = 0.5 * n * (1.0 + (radius * radius) / (u * u))
    ctx = {"n": n, "k": k, "R": radius, "u": u}
    return (
        BoundReport.make("count_lower", lower, k, strict=True, **ctx),
        BoundReport.make("count_upper", k, upper, **ctx),
    )


def u_upper_majority(n, k, r, t_minus_c, u):
    """Height bounds when k > n/2 roots sit in a disk of radius r.

    Always u <= 2 r sqrt(n); when t is farther than r from the disk center
    the sharper u <= 4 k r / sqrt(3 n (2k - n)) applies as well.
    """
    if 2 * k <= n:
        raise NotMajority(f"k = {k} is not a strict majority of n = {n}")
    ctx = {"n": n, "k": k, "r": r, "t_minus_c": t_minus_c, "u": u}
    out = [BoundReport.make("majority_u_linear", u, 2.0 * r * math.sqrt(n), **ctx)]
    if t_minus_c > r:
        sharp = 4.0 * k * r / math.sqrt(3.0 * n * (2 * k - n))
        out.append(BoundReport.make("majority_u_offcenter", u, sharp, **ctx))
    return out


def c0_window(n, r0):
    """Admissible window for |c0| of the normalized majority-cluster center."""
    if r0 < 0.0:
        raise ValueError(f"r0 = {r0} must be nonnegative")
    return (max(1.0 / math.sqrt(n) - r0, 0.0), math.sqrt(n) + r0)


def t_center_majority(n, r, t_minus_c):
    """Distance bound |t - c| <= (2n + 3) r for a majority cluster."""
    return BoundReport.make(
        "majority_center_distance",
        t_minus_c,
        (2 * n + 3) * r,
        n=n,
        r=r,
    )


def half_split_u(n, split, u):
    """Height bounds for an exactly-half split: two linear, one product window.

    The product window reports |(d1-r1)(d2-r2)| <= u^2 <= (d1+r1)(d2+r2)
    as a single two-sided check with u^2 recorded in the context.
    """
    split = require_distances(split)
    r1, r2 = split.disk1.radius, split.disk2.radius
    d1, d2 = split.d1, split.d2
    sqrt_n = math.sqrt(n)
    ctx = {"n": n, "u": u, "r1": r1, "r2": r2, "d1": d1, "d2": d2}
    lin1 = BoundReport.make("half_u_near_disk", u, sqrt_n * (d1 + r1), **ctx)
    lin2 = BoundReport.make("half_u_far_disk", u, sqrt_n * (d2 + r2), **ctx)
    low = abs((d1 - r1) * (d2 - r2))
    high = abs((d1 + r1) * (d2 + r2))
    u2 = u * u
    window = BoundReport(
        name="half_u_product_window",
        lhs=low,
        rhs=high,
        holds=_leq(low, u2) and _leq(u2, high),
        context={**ctx, "u_sq": u2},
    )
    return [lin1, lin2, window]


def ratio_bounds(n, split, u):
    """Radius-ratio lower bounds from the sphere-lift argument.

    Applicable sides: d1 > r1 gives a lower bound on r1/r2; d2 > r2 gives a
    lower bound on r2/r1.  Raises NotApplicable when neither side's strict
    hypothesis holds.
    """
    split = require_distances(split)
    r1, r2 = split.disk1.radius, split.disk2.radius
    d1, d2 = split.d1, split.d2
    ctx = {"n": n, "u": u, "r1": r1, "r2": r2, "d1": d1, "d2": d2}
    out = []
    if d1 > r1 and r2 > 0.0 and r1 > 0.0:
        lhs = (3.0 / n) * ((d1 - r1) ** 2 + u * u) / ((d2 + r2) ** 2 + u * u)
        out.append(BoundReport.make("radius_ratio_near", lhs, r1 / r2, **ctx))
    if d2 > r2 and r1 > 0.0 and r2 > 0.0:
        lhs = (3.0 / n) * ((d2 - r2) ** 2 + u * u) / ((d1 + r1) ** 2 + u * u)
        out.append(BoundReport.make("radius_ratio_far", lhs, r2 / r1, **ctx))
    if not out:
        raise NotApplicable("neither d1 > r1 nor d2 > r2")
    return out


def _is_real(c, tol=1e-9):
    return abs(complex(c).imag) <= tol * (1.0 + abs(complex(c)))


def smallness_case_bounds(n, eps, split, u, c_dist=None, include_optional=False):
    """Hypothesis-gated smallness statements for an exactly-half split.

    Evaluates every statement whose hypotheses hold on this instance and
    returns one report per applicable statement; statements whose
    hypotheses fail are skipped, not falsified.  The hypothesis values are
    recorded in each report's context.
    """
    split = require_distances(split)
    if eps <= 0.0:
        raise ValueError(f"eps = {eps} must be positive")
    r1, r2 = split.disk1.radius, split.disk2.radius
    d1, d2 = split.d1, split.d2
    c1, c2 = split.disk1.center, split.disk2.center
    if c_dist is None:
        c_dist = abs(c1 - c2)
    thr = thresholds(n)
    sqrt_n = math.sqrt(n)
    sqrt_eps = math.sqrt(eps)
    ratio = r1 / r2 if r2 > 0.0 else math.inf
    product = r1 * r2
    ratio_cap = 10.0 * n * eps / 3.0
    ctx = {
        "n": n, "eps": eps, "u": u, "r1": r1, "r2": r2,
        "d1": d1, "d2": d2, "c_dist": c_dist, "ratio": ratio, "product": product,
    }
    out = []

    # far centers and small u force a small radius ratio
    if (eps < thr.ratio_far and r1 <= eps and u <= eps
            and c_dist >= max(4.0 * sqrt_eps, 4.0 * r2) and r2 > 0.0):
        out.append(BoundReport.make("ratio_small_when_u_small", ratio, ratio_cap, **ctx))

    # far centers, near disk off t, small ratio: gap at the far disk and
    # t within u of the near disk
    if (eps < thr.center_distance and c_dist >= 2.0 * r2
            and d1 > r1 and r2 > 0.0 and ratio < ratio_cap):
        out.append(BoundReport.make("far_gap_half_radius", 0.5 * r2, abs(d2 - r2), **ctx))
        out.append(BoundReport.make("near_center_within_u", d1, u + r1, **ctx))

    # small u keeps t close to the near center
    if eps < thr.center_distance and r1 <= eps and u <= eps:
        out.append(BoundReport.make(
            "center_distance_when_u_small", d1, 0.5 / sqrt_n + eps, **ctx))

    # small u with close centers bounds the radius product
    if (eps < thr.center_distance and u <= eps and r1 <= eps and r2 > 0.0
            and c_dist <= max(r1 + r2 + eps + sqrt_eps, 2.0 * r2 + r2 * sqrt_eps + r1)
            and abs(d1 - r1) >= u / sqrt_n
            and abs(c_dist / r2 - 1.0) >= 64.0 * n * sqrt_n * eps):
        out.append(BoundReport.make(
            "product_bounded_when_u_small", product, 1.0 / (64.0 * n * n), **ctx))

    # small ratio with far centers keeps t close to the near center
    if (eps <= thr.center_distance and c_dist >= 2.0 * r2
            and r1 <= eps and r2 > 0.0 and ratio <= ratio_cap):
        out.append(BoundReport.make(
            "center_distance_far_ratio", d1, 0.5 / sqrt_n + r1, **ctx))

    # small product with close real centers keeps t close to the near center
    if (eps <= thr.close_real_product and r1 <= eps
            and product <= 3.0 / (64.0 * n * n)
            and _is_real(c1) and _is_real(c2) and c_dist <= 2.0 * r2):
        out.append(BoundReport.make(
            "center_distance_close_product", d1, 0.5 / sqrt_n + r1, **ctx))

    # small ratio with both disks tiny forces u small
    if r1 <= eps and r2 > 0.0 and r2 <= sqrt_eps and ratio < ratio_cap:
        out.append(BoundReport.make(
            "u_from_ratio_tiny_disks", u, 20.0 * n * eps / 7.0, strict=True, **ctx))

    # small ratio with far centers forces u small
    if (eps < thr.center_distance and r1 <= eps and r2 > sqrt_eps
            and c_dist >= 2.0 * r2 and ratio <= ratio_cap):
        out.append(BoundReport.make(
            "u_from_ratio_far_centers", u, 8.0 * sqrt_n * eps, strict=True, **ctx))

    # bounded product with close centers forces u <= 4 sqrt(n r1 r2)
    if (eps < thr.center_distance and r1 <= eps and r2 > sqrt_eps
            and c_dist < 2.0 * r2 and product <= 3.0 / (64.0 * n * n)):
        out.append(BoundReport.make(
            "u_from_product_close_centers", u, 4.0 * math.sqrt(n * product), **ctx))
        if product <= eps * eps:
            out.append(BoundReport.make(
                "u_from_product_eps", u, 4.0 * eps * sqrt_n, **ctx))

    # everything tiny and close: unconditional height bound
    if r1 <= eps and r2 <= sqrt_eps and c_dist <= 2.0 * r2:
        out.append(BoundReport.make(
            "u_all_roots_tiny", u, 4.0 * math.sqrt(n * eps), **ctx))

    # optional generalized gap bound; disabled by default
    if include_optional and r1 <= eps and _is_real(c1) and _is_real(c2) and c_dist <= 2.0 * r2:
        cap = max(math.sqrt(product * 16.0 * n / 3.0), 16.0 * n * (n + 1) * eps / 3.0)
        out.append(BoundReport.make("near_gap_generalized", d1 - r1, cap, **ctx))

    return out


def u_growth_bound(n, k, eps, t, u, m, d1=None):
    """Guaranteed height-growth factor for the translate-invert step.

    The step maps u to u / ((t - m)^2 + u^2).  With a strict-majority
    cluster of radius <= eps and eps <= 1/(32(n+1)) the factor exceeds 2;
    with an exact half, eps <= 1/(4 n^2) and d1 <= 1/(2 sqrt n) + eps it is
    at least 8/7.
    """
    thr = thresholds(n)
    factor = 1.0 / ((t - m) ** 2 + u * u)
    ctx = {"n": n, "k": k, "eps": eps, "t": t, "u": u, "m": m, "factor": factor}
    if 2 * k > n:
        if eps > thr.growth_majority:
            raise HypothesesNotMet(f"eps = {eps} > {thr.growth_majority}")
        return BoundReport.make("u_growth_majority", 2.0, factor, strict=True, **ctx)
    if 2 * k == n:
        if d1 is None:
            raise HypothesesNotMet("half case needs the center distance d1")
        if eps > thr.growth_half or d1 > 0.5 / math.sqrt(n) + eps:
            raise HypothesesNotMet(
                f"need eps <= {thr.growth_half} and d1 <= {0.5 / math.sqrt(n) + eps}"
            )
        ctx["d1"] = d1
        return BoundReport.make("u_growth_half", 8.0 / 7.0, factor, **ctx)
    raise HypothesesNotMet(f"k = {k} below half of n = {n}")
