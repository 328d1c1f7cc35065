"""Covariant point of a real binary form and unit-sphere root geometry.

The covariant point z = (t, u), u > 0, is the unique solution of

    sum_i u^2 / (|t - alpha_i|^2 + u^2) = n / 2        (mass equation)
    sum_i (t - alpha_i) / (|t - alpha_i|^2 + u^2) = 0   (balance equation)

for a conjugate-closed root multiset.  Geometrically it is the point of the
upper half space at which the unit tangent vectors toward the roots (on the
boundary sphere) sum to zero; the normalized roots beta_i = (t - alpha_i)/u
have covariant point (0, 1).

The solver is damped Newton in (t, log u) with a monotone nested-bisection
fallback.  Internally roots are shifted by their centroid and scaled by the
RMS spread; the covariant point transforms exactly under those maps, so the
result is mapped back at the end.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    BadCovariant,
    ConjugacyViolation,
    DegenerateCluster,
    NoConvergence,
    NonPositiveU,
    UnsupportedDegree,
)

# residual acceptance: |mass residual| and |u * balance residual| below
# TOL * n.  Scaling the balance by u makes both criteria dimensionless,
# with every term bounded by 1 resp. 1/2 in magnitude.
DEFAULT_TOL = 1e-11


@dataclass(frozen=True)
class UpperHalfPoint:
    """Point (t, u) of the upper half plane, u > 0."""

    t: float
    u: float

    def __post_init__(self):
        if not self.u > 0.0:
            raise NonPositiveU(f"u = {self.u} must be positive")

    def as_complex(self):
        return complex(self.t, self.u)


@dataclass(frozen=True)
class SpherePoint:
    """Unit vector (m, n, p) on the sphere used for root tangent directions."""

    m: float
    n: float
    p: float

    def __post_init__(self):
        norm2 = self.m * self.m + self.n * self.n + self.p * self.p
        if abs(norm2 - 1.0) > 1e-10:
            raise ValueError(f"not a unit vector: |v|^2 = {norm2}")

    def as_array(self):
        return np.array([self.m, self.n, self.p])


@dataclass(frozen=True)
class NormalizedForm:
    """Root multiset beta_i = (t - alpha_i)/u with covariant point (0, 1)."""

    betas: tuple


def residuals(roots, t, u):
    """Residuals of the mass and balance equations at (t, u).

    Returns (r_mass, r_balance); r_balance is complex, and its imaginary
    part cancels for conjugate-closed root sets.
    """
    if not u > 0.0:
        raise NonPositiveU(f"u = {u} must be positive")
    alpha = np.asarray(list(roots), dtype=complex)
    n = alpha.size
    dt = t - alpha
    den = np.abs(dt) ** 2 + u * u
    r_mass = float(np.sum(u * u / den) - 0.5 * n)
    r_balance = complex(np.sum(dt / den))
    return r_mass, r_balance


def _degeneracy_check(alpha):
    """Reject multisets with >= n/2 multiplicity at one real point.

    Points are equivalence classes of roots within relative distance 1e-12.
    Concentration at a conjugate pair off the axis is fine (the covariant
    point exists on the real-t slice); a real point carrying half or more
    of the mass collapses u to zero.
    """
    n = alpha.size
    reps = []
    counts = []
    for a in alpha:
        for i, r in enumerate(reps):
            if abs(a - r) <= 1e-12 * (1.0 + abs(r)):
                counts[i] += 1
                break
        else:
            reps.append(a)
            counts.append(1)
    for r, k in zip(reps, counts):
        real = abs(r.imag) <= 1e-12 * (1.0 + abs(r))
        if real and 2 * k >= n:
            raise DegenerateCluster(
                f"{k} of {n} roots coincide at the real point {r.real}"
            )


def _system(re_a, im_a, n, t, u):
    """Scaled residuals and Jacobian in variables (t, s = log u).

    f1 = mass residual, f2 = u * real balance residual.  Plain float loops:
    the root count is small enough that array dispatch would dominate.
    """
    u2 = u * u
    f1 = -0.5 * n
    f2 = j11 = j12 = j21 = j22 = 0.0
    for re, im in zip(re_a, im_a):
        dt = t - re
        den = dt * dt + im * im + u2
        inv = 1.0 / den
        inv2 = inv * inv
        f1 += u2 * inv
        f2 += dt * inv
        j11 -= dt * inv2
        j12 += (den - u2) * inv2
        j21 += (den - 2.0 * dt * dt) * inv2
        j22 += dt * (den - 2.0 * u2) * inv2
    return f1, u * f2, 2.0 * u2 * j11, 2.0 * u2 * j12, u * j21, u * j22


def _mass(re_a, im_a, n, t, u):
    u2 = u * u
    total = -0.5 * n
    for re, im in zip(re_a, im_a):
        dt = t - re
        total += u2 / (dt * dt + im * im + u2)
    return total


def _scaled_balance(re_a, im_a, t, u):
    u2 = u * u
    total = 0.0
    for re, im in zip(re_a, im_a):
        dt = t - re
        total += dt / (dt * dt + im * im + u2)
    return u * total


def _solve_u_for_t(re_a, im_a, n, t, lo=1e-18, hi=1e12):
    """Height with mass residual zero at fixed t; mass is monotone in u."""
    if _mass(re_a, im_a, n, t, lo) >= 0.0:
        lo = 1e-18
        if _mass(re_a, im_a, n, t, lo) >= 0.0:
            raise NoConvergence("mass equation not bracketed in u")
    if _mass(re_a, im_a, n, t, hi) <= 0.0:
        hi = 1e12
        if _mass(re_a, im_a, n, t, hi) <= 0.0:
            raise NoConvergence("mass equation not bracketed in u")
    while hi > lo * (1.0 + 4e-16):
        mid = math.sqrt(lo * hi)
        if mid <= lo or mid >= hi:
            break
        if _mass(re_a, im_a, n, t, mid) < 0.0:
            lo = mid
        else:
            hi = mid
    return math.sqrt(lo * hi)


def _bisect_fallback(re_a, im_a, n, max_bisect):
    """Nested bisection: balance in t, mass in u.  Slow but monotone."""
    lo = min(re_a) - 1.0
    hi = max(re_a) + 1.0
    u_win = [1e-18, 1e12]

    def g(t):
        u = _solve_u_for_t(re_a, im_a, n, t, u_win[0], u_win[1])
        # warm-start the next height solve; u(t) moves continuously
        u_win[0], u_win[1] = u * 0.0625, u * 16.0
        return _scaled_balance(re_a, im_a, t, u)

    if not (g(lo) < 0.0 < g(hi)):
        raise NoConvergence("balance equation not bracketed in t")
    for _ in range(max_bisect):
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            break
        if g(mid) < 0.0:
            lo = mid
        else:
            hi = mid
    t = 0.5 * (lo + hi)
    return t, _solve_u_for_t(re_a, im_a, n, t, u_win[0], u_win[1])


def covariant_point(roots, tol=DEFAULT_TOL, max_newton=100, max_bisect=200):
    """Solve the mass/balance system for a conjugate-closed root multiset.

    Damped Newton in (t, log u) from t = mean re(alpha),
    u = max(RMS spread, 1e-6); nested bisection as fallback.  Raises
    DegenerateCluster if half the multiplicity sits at one real point and
    NoConvergence if the residual tolerance cannot be met.
    """
    alpha = np.asarray(list(roots), dtype=complex)
    n = alpha.size
    if n < 3:
        raise UnsupportedDegree(f"need at least 3 roots, got {n}")
    _degeneracy_check(alpha)

    # work in centered, spread-normalized coordinates; exact covariance
    shift = float(np.mean(alpha.real))
    centroid = complex(np.mean(alpha))
    rms = float(np.sqrt(np.mean(np.abs(alpha - centroid) ** 2)))
    scale = rms if rms > 0.0 else 1.0
    w = (alpha - shift) / scale
    re_a = [float(x) for x in w.real]
    im_a = [float(x) for x in w.imag]

    t = math.fsum(re_a) / n
    u = max(rms, 1e-6) / scale

    def norm_f(t_, u_):
        f1 = _mass(re_a, im_a, n, t_, u_)
        f2 = _scaled_balance(re_a, im_a, t_, u_)
        return max(abs(f1), abs(f2))

    def floor_at(t_, u_):
        # evaluation noise of the balance sum grows like eps_mach * |t| / u;
        # below that the point is float-exact even though the residual isn't
        return 4.0 * 2.220446049250313e-16 * n * (1.0 + abs(t_) / u_)

    target = tol * n
    best_t, best_u, best_norm = t, u, norm_f(t, u)
    cur = best_norm
    for _ in range(max_newton):
        if cur <= 0.05 * target:
            break
        f1, f2, j11, j12, j21, j22 = _system(re_a, im_a, n, t, u)
        det = j11 * j22 - j12 * j21
        if det == 0.0 or not math.isfinite(det):
            break
        dt_step = (-f1 * j22 + f2 * j12) / det
        ds_step = (-f2 * j11 + f1 * j21) / det
        # trust region on the log-height step
        ds_step = max(-5.0, min(5.0, ds_step))
        lam = 1.0
        improved = False
        for _ in range(60):
            t_new = t + lam * dt_step
            u_new = u * math.exp(lam * ds_step)
            if u_new > 0.0 and math.isfinite(t_new) and math.isfinite(u_new):
                new_norm = norm_f(t_new, u_new)
                if new_norm < cur:
                    t, u, cur = t_new, u_new, new_norm
                    improved = True
                    break
            lam *= 0.5
        if not improved:
            break
        if cur < best_norm:
            best_t, best_u, best_norm = t, u, cur

    if best_norm > max(target, floor_at(best_t, best_u)):
        try:
            t_b, u_b = _bisect_fallback(re_a, im_a, n, max_bisect)
            if norm_f(t_b, u_b) < best_norm:
                best_t, best_u, best_norm = t_b, u_b, norm_f(t_b, u_b)
            # polish with a few undamped Newton steps, keeping the best
            t, u = t_b, u_b
            for _ in range(8):
                f1, f2, j11, j12, j21, j22 = _system(re_a, im_a, n, t, u)
                det = j11 * j22 - j12 * j21
                if det == 0.0:
                    break
                t += (-f1 * j22 + f2 * j12) / det
                u *= math.exp(max(-1.0, min(1.0, (-f2 * j11 + f1 * j21) / det)))
                if norm_f(t, u) < best_norm:
                    best_t, best_u, best_norm = t, u, norm_f(t, u)
        except NoConvergence:
            pass

    if best_norm > max(target, floor_at(best_t, best_u)):
        raise NoConvergence(
            f"covariant residual {best_norm:.3e} above tolerance {target:.3e}"
        )

    t_out = shift + scale * best_t
    u_out = scale * best_u
    # sanity: imaginary balance residual cancels for conjugate-closed roots
    _, r_bal = residuals(alpha, t_out, u_out)
    if abs(r_bal.imag) * u_out > 1e-10 * n:
        raise ConjugacyViolation(
            f"imaginary balance residual {r_bal.imag:.3e}; roots not conjugate-closed"
        )
    return UpperHalfPoint(t=t_out, u=u_out)


def normalize(roots, z):
    """Recenter roots to beta_i = (t - alpha_i)/u; covariant point (0, 1).

    The supplied point must satisfy the covariant equations to 1e-8
    (scaled), otherwise BadCovariant is raised.
    """
    alpha = np.asarray(list(roots), dtype=complex)
    n = alpha.size
    r_mass, r_bal = residuals(alpha, z.t, z.u)
    if abs(r_mass) > 1e-8 * n or abs(r_bal) * z.u > 1e-8 * n:
        raise BadCovariant(
            f"residuals ({r_mass:.2e}, {abs(r_bal) * z.u:.2e}) too large at (t, u)"
        )
    betas = (z.t - alpha) / z.u
    return NormalizedForm(betas=tuple(complex(b) for b in betas))


def lift_to_sphere(beta):
    """Inverse stereographic projection (from the north pole) of beta.

    The image M = (m, n, p) satisfies beta = (m/(1-p), n/(1-p)).
    """
    b = complex(beta)
    r2 = b.real * b.real + b.imag * b.imag
    if math.isinf(r2):
        return SpherePoint(0.0, 0.0, 1.0)
    den = 1.0 + r2
    return SpherePoint(2.0 * b.real / den, 2.0 * b.imag / den, (r2 - 1.0) / den)


def tangent_sum(roots, z):
    """Sum of the unit tangent vectors toward the roots, lifted to the sphere.

    Vanishes (to solver precision) exactly when z is the covariant point.
    """
    if not z.u > 0.0:
        raise NonPositiveU(f"u = {z.u} must be positive")
    total = np.zeros(3)
    for a in roots:
        m = lift_to_sphere((z.t - complex(a)) / z.u)
        total += m.as_array()
    return total
