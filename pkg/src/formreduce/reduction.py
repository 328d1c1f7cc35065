"""Reduction loops: the classical translate/invert iteration and the
cluster-aware variant that translates by the rounded cluster center.

A form is reduced when its covariant point lies in the fundamental domain
|z| >= 1, |Re z| <= 1/2 (up to a 1e-9 boundary tolerance).  The classical
loop translates by round(t) and inverts while |z| < 1.  The cluster-aware
loop classifies the root configuration first: in the cases where the
cluster center certifiably approximates t and the height u is certifiably
small, it applies the combined step F(Z - mX, -X) with m = floor(Re(c) + 1/2),
which maps z to -1/(z - m) and is guaranteed to grow u by a factor of at
least 8/7 (at least 2 for strict-majority clusters).  In all other cases it
falls back to a classical step.
"""

from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass, field

from .bounds import thresholds
from .covariant import UpperHalfPoint, covariant_point
from .errors import GrowthAssertionFailed, NoConvergence, StepLimit
from .forms import UnimodularMatrix, act
from .geometry import attach_covariant, detect_majority_cluster, split_half

_BOUNDARY_TOL = 1e-9
_GROWTH_SLACK = 1e-9
# classification tolerance for center reality / mirror-symmetry tests
_REAL_TOL = 1e-9


class CaseLabel(str, enum.Enum):
    """Outcome of the cluster classification decision tree."""

    MAJORITY = "Majority"
    ALL_TINY_CLUSTER = "AllTinyCluster"
    FAR_SMALL_RATIO_SMALL = "FarSmall-RatioSmall"
    FAR_SMALL_RATIO_LARGE = "FarSmall-RatioLarge"
    FAR_LARGE_RATIO_SMALL = "FarLarge-RatioSmall"
    CLOSE_MAJORITY_REFINED = "Close-MajorityRefined"
    CLOSE_GENERIC_CENTERS = "Close-GenericCenters"
    CLOSE_CONJUGATE_EQUAL = "Close-ConjugateEqual"
    CLOSE_REAL_PRODUCT_SMALL = "Close-RealProductSmall"
    CLOSE_REAL_PRODUCT_LARGE = "Close-RealProductLarge"
    NO_CLUSTER = "NoCluster"


@dataclass(frozen=True)
class FundamentalDomainStatus:
    """Membership in the fundamental domain, with per-condition defects."""

    in_domain: bool
    abs_defect: float
    re_excess: float

    @property
    def violation(self):
        parts = []
        if self.abs_defect > _BOUNDARY_TOL:
            parts.append(f"|z| short by {self.abs_defect:.3e}")
        if self.re_excess > _BOUNDARY_TOL:
            parts.append(f"|Re z| over by {self.re_excess:.3e}")
        return "; ".join(parts) if parts else None


def fundamental_status(z):
    """Check |z| >= 1 and |Re z| <= 1/2 within the boundary tolerance."""
    mod = abs(z.as_complex())
    abs_defect = max(0.0, 1.0 - mod)
    re_excess = max(0.0, abs(z.t) - 0.5)
    return FundamentalDomainStatus(
        in_domain=(abs_defect <= _BOUNDARY_TOL and re_excess <= _BOUNDARY_TOL),
        abs_defect=abs_defect,
        re_excess=re_excess,
    )


@dataclass(frozen=True)
class Classification:
    """Case label plus the decision quantities and the firing decision."""

    label: CaseLabel
    quantities: dict = field(default_factory=dict)
    count: int | None = None
    disk: object = None
    split: object = None
    fires: bool = False
    center: complex | None = None
    required_growth: float | None = None
    needs_u_check: bool = False


def _growth_requirement(center_bound, height_bound):
    """Growth class from certified |t - Re c| and u bounds.

    The step factor is 1/((t-m)^2 + u^2) with |t - m| <= 1/2 + center_bound,
    so the certified budget is (1/2 + center_bound)^2 + height_bound^2.
    Below 1/2 the factor exceeds 2; below 7/8 it is at least 8/7.
    """
    budget = (0.5 + center_bound) ** 2 + height_bound**2
    if budget < 0.5:
        return 2.0
    if budget <= 7.0 / 8.0:
        return 8.0 / 7.0
    return None


def classify(form, z, eps):
    """Deterministic case tree over the detected root clusters.

    Emits a warning when eps exceeds the growth-lemma thresholds for the
    degree.  NoCluster means detection found nothing; far half-splits whose
    radius ratio is too large to act on keep the ratio-large label.
    """
    n = form.degree
    thr = thresholds(n)
    if eps > min(thr.growth_majority, thr.growth_half):
        warnings.warn(
            f"eps = {eps} above the growth thresholds for degree {n}",
            stacklevel=2,
        )
    roots = form.roots
    hit = detect_majority_cluster(roots, eps)
    quantities = {"eps": eps, "n": n}
    if hit is None:
        return Classification(label=CaseLabel.NO_CLUSTER, quantities=quantities)
    quantities["k"] = hit.count
    if 2 * hit.count > n:
        req = _growth_requirement((2 * n + 3) * eps, 2.0 * math.sqrt(n) * eps)
        return Classification(
            label=CaseLabel.MAJORITY,
            quantities={**quantities, "r": hit.disk.radius},
            count=hit.count,
            disk=hit.disk,
            fires=req is not None,
            center=hit.disk.center,
            required_growth=req,
        )

    split = attach_covariant(split_half(roots, hit.indices), z)
    r1, r2 = split.disk1.radius, split.disk2.radius
    c1, c2 = split.disk1.center, split.disk2.center
    gap = split.center_gap
    ratio = r1 / r2 if r2 > 0.0 else math.inf
    product = r1 * r2
    sqrt_eps = math.sqrt(eps)
    ratio_cap = 10.0 * n * eps / 3.0
    quantities.update(
        r1=r1, r2=r2, d1=split.d1, d2=split.d2,
        center_gap=gap, ratio=ratio, product=product,
    )
    common = dict(quantities=quantities, count=hit.count, split=split)

    scale = 1.0 + abs(c1) + abs(c2)
    mirror = (
        abs(c1 - c2.conjugate()) <= _REAL_TOL * scale
        and abs(r1 - r2) <= _REAL_TOL * (1.0 + r1 + r2)
    )
    real_centers = (
        abs(c1.imag) <= _REAL_TOL * (1.0 + abs(c1))
        and abs(c2.imag) <= _REAL_TOL * (1.0 + abs(c2))
    )

    if mirror and gap <= 2.0 * r2 * (1.0 + _REAL_TOL):
        # reflection-symmetric split with overlapping heights: all roots sit
        # in a small disk around the shared real part
        center = complex(c1.real, 0.0)
        r_eff = max(abs(complex(r) - center) for r in roots)
        quantities["r_eff"] = r_eff
        req = _growth_requirement((2 * n + 3) * r_eff, 2.0 * math.sqrt(n) * r_eff)
        return Classification(
            label=CaseLabel.CLOSE_CONJUGATE_EQUAL,
            fires=req is not None,
            center=center,
            required_growth=req,
            **common,
        )

    if r2 <= sqrt_eps:
        if gap <= r1 + r2 + sqrt_eps + eps:
            # both disks tiny and close: one cluster of radius ~5 sqrt(eps)
            req = _growth_requirement(
                5.0 * (2 * n + 3) * sqrt_eps, 10.0 * math.sqrt(n * eps)
            )
            return Classification(
                label=CaseLabel.ALL_TINY_CLUSTER,
                fires=req is not None,
                center=c1,
                required_growth=req,
                **common,
            )
        if ratio <= ratio_cap:
            req = _growth_requirement(
                0.5 / math.sqrt(n) + eps, 20.0 * n * eps / 7.0
            )
            return Classification(
                label=CaseLabel.FAR_SMALL_RATIO_SMALL,
                fires=req is not None,
                center=c1,
                required_growth=req,
                **common,
            )
        return Classification(label=CaseLabel.FAR_SMALL_RATIO_LARGE, **common)

    if gap >= 2.0 * r2:
        if ratio < ratio_cap:
            req = _growth_requirement(
                0.5 / math.sqrt(n) + eps, 8.0 * math.sqrt(n) * eps
            )
            return Classification(
                label=CaseLabel.FAR_LARGE_RATIO_SMALL,
                fires=req is not None,
                center=c1,
                required_growth=req,
                **common,
            )
        # large far disk with a large ratio: nothing to act on, defer
        return Classification(label=CaseLabel.FAR_SMALL_RATIO_LARGE, **common)

    # close centers with a non-small far disk
    hit2 = detect_majority_cluster(roots, 2.0 * eps)
    if hit2 is not None and 2 * hit2.count > n:
        req = _growth_requirement(
            2.0 * (2 * n + 3) * eps, 4.0 * math.sqrt(n) * eps
        )
        return Classification(
            label=CaseLabel.CLOSE_MAJORITY_REFINED,
            fires=req is not None,
            center=hit2.disk.center,
            required_growth=req,
            disk=hit2.disk,
            **common,
        )
    if real_centers:
        if product < 3.0 / (64.0 * n * n):
            req = _growth_requirement(
                0.5 / math.sqrt(n) + r1, 4.0 * math.sqrt(n * product)
            )
            return Classification(
                label=CaseLabel.CLOSE_REAL_PRODUCT_SMALL,
                fires=req is not None,
                center=c1,
                required_growth=req,
                **common,
            )
        req = _growth_requirement(0.5 / math.sqrt(n) + eps, eps)
        return Classification(
            label=CaseLabel.CLOSE_REAL_PRODUCT_LARGE,
            fires=req is not None,
            center=c1,
            required_growth=req,
            needs_u_check=True,
            **common,
        )
    return Classification(label=CaseLabel.CLOSE_GENERIC_CENTERS, **common)


@dataclass(frozen=True)
class ReductionStep:
    """One applied substitution with the covariant point before and after."""

    kind: str  # "translate" | "invert" | "cluster_translate"
    m: int | None
    case: CaseLabel | None
    z_before: UpperHalfPoint
    z_after: UpperHalfPoint
    u_growth: float

    def to_dict(self):
        return {
            "kind": self.kind,
            "m": self.m,
            "case": self.case.value if self.case is not None else None,
            "z_before": [self.z_before.t, self.z_before.u],
            "z_after": [self.z_after.t, self.z_after.u],
            "u_growth": self.u_growth,
        }


@dataclass(frozen=True)
class ReductionTrace:
    """Ordered step list, the accumulated matrix, and the final point."""

    steps: tuple
    total: UnimodularMatrix
    final_z: UpperHalfPoint

    def to_dict(self):
        return {
            "steps": [s.to_dict() for s in self.steps],
            "total": list(self.total.as_tuple()),
            "final_z": [self.final_z.t, self.final_z.u],
        }


def _round_half_up(x):
    return int(math.floor(x + 0.5))


class _Reducer:
    """Shared bookkeeping for both reduction loops."""

    def __init__(self, form, tol):
        self.form = form
        self.tol = tol
        self.total = UnimodularMatrix.identity()
        self.steps = []
        self.z = covariant_point(form.roots, tol=tol)

    def apply(self, g, kind, m, case, z_predicted, deriv=1.0):
        z_before = self.z
        self.form = act(self.form, g)
        self.total = self.total @ g
        z_after = covariant_point(self.form.roots, tol=self.tol)
        # the analytic image of z must agree with the recomputed point up to
        # the solver tolerance propagated through the map derivative
        scale = 1.0 + abs(z_predicted) + deriv * (1.0 + abs(z_before.as_complex()))
        drift = abs(z_after.as_complex() - z_predicted)
        if drift > 1e-7 * scale:
            raise NoConvergence(
                f"solver drift {drift:.3e} between predicted and recomputed z"
            )
        self.z = z_after
        self.steps.append(
            ReductionStep(
                kind=kind,
                m=m,
                case=case,
                z_before=z_before,
                z_after=z_after,
                u_growth=z_after.u / z_before.u,
            )
        )

    def classic_step(self):
        """Translate by round(t), then invert if |z| < 1.  Returns the
        number of substitutions applied."""
        applied = 0
        m = _round_half_up(self.z.t)
        if m != 0:
            g = UnimodularMatrix.translation(m)
            self.apply(g, "translate", m, None, self.z.as_complex() - m)
            applied += 1
        zc = self.z.as_complex()
        if abs(zc) < 1.0 - _BOUNDARY_TOL:
            g = UnimodularMatrix.inversion()
            self.apply(g, "invert", None, None, -1.0 / zc, deriv=1.0 / abs(zc) ** 2)
            applied += 1
        return applied

    def cluster_step(self, m, case, required):
        """Combined translate-by-m and invert: z -> -1/(z - m)."""
        z_before = self.z
        g = UnimodularMatrix.translation(m) @ UnimodularMatrix.inversion()
        shifted = self.z.as_complex() - m
        self.apply(
            g, "cluster_translate", m, case,
            -1.0 / shifted, deriv=1.0 / abs(shifted) ** 2,
        )
        factor = self.z.u / z_before.u
        if factor < required * (1.0 - _GROWTH_SLACK):
            raise GrowthAssertionFailed(
                f"cluster step grew u by {factor:.6f} < required {required:.6f} "
                f"in case {case.value}"
            )

    def trace(self):
        return ReductionTrace(steps=tuple(self.steps), total=self.total, final_z=self.z)


def classic_reduce(form, max_steps=64, tol=None):
    """Classical reduction: translate by round(t), invert while |z| < 1."""
    state = _Reducer(form, tol or 1e-11)
    applied = 0
    while applied <= max_steps:
        if fundamental_status(state.z).in_domain:
            return state.form, state.trace()
        made = state.classic_step()
        if made == 0:
            # within tolerance of the boundary; accept the representative
            return state.form, state.trace()
        applied += made
    raise StepLimit(f"not reduced after {max_steps} steps")


def cluster_reduce(form, eps=None, max_steps=64, tol=None):
    """Cluster-aware reduction with certified translate-invert steps.

    In the firing cases the step is guaranteed to grow u by the classified
    factor; a miss raises GrowthAssertionFailed, which flags a violated
    certificate on this instance.  Non-firing configurations take classical
    steps.  The 3d-style real-product-large case fires only after the
    solver confirms u <= eps.
    """
    if eps is None:
        eps = thresholds(form.degree).minimum()
    state = _Reducer(form, tol or 1e-11)
    applied = 0
    while applied <= max_steps:
        if fundamental_status(state.z).in_domain:
            return state.form, state.trace()
        cls = classify(state.form, state.z, eps)
        fire = cls.fires and (not cls.needs_u_check or state.z.u <= eps)
        if fire:
            m = _round_half_up(cls.center.real)
            state.cluster_step(m, cls.label, cls.required_growth)
            applied += 1
        else:
            made = state.classic_step()
            if made == 0:
                return state.form, state.trace()
            applied += made
    raise StepLimit(f"not reduced after {max_steps} steps")
