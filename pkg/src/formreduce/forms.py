"""Real binary forms and the unimodular variable substitution.

A real binary form of degree n is a0 * prod(X - alpha_i Z) with real
coefficients, so its root multiset is closed under complex conjugation.
Roots are the canonical representation here; coefficients are derived by
expansion.  Degree-2 and lower forms are rejected: the covariant point is
not well defined for them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    ConjugacyViolation,
    DegreeDrop,
    DeterminantNotOne,
    NonConvergentRoots,
    UnsupportedDegree,
    ZeroLeadingCoefficient,
)

MIN_DEGREE = 3

# relative tolerance when validating conjugate closure of stored roots
_CONJ_TOL = 1e-8


def symmetrize_roots(roots, tol=_CONJ_TOL):
    """Pair roots with their conjugates and average to exact conjugacy.

    Roots whose imaginary part is below tol (relative) are snapped to the
    real axis.  Raises ConjugacyViolation if some root has no conjugate
    partner within tolerance.
    """
    pool = sorted((complex(r) for r in roots), key=lambda z: -abs(z.imag))
    used = [False] * len(pool)
    out = []
    for i, z in enumerate(pool):
        if used[i]:
            continue
        used[i] = True
        scale = 1.0 + abs(z)
        if abs(z.imag) <= tol * scale:
            out.append(complex(z.real, 0.0))
            continue
        target = z.conjugate()
        best, best_d = -1, math.inf
        for j in range(i + 1, len(pool)):
            if not used[j]:
                d = abs(pool[j] - target)
                if d < best_d:
                    best, best_d = j, d
        if best < 0 or best_d > 2.0 * tol * scale:
            raise ConjugacyViolation(
                f"root {z} has no conjugate partner within tolerance"
            )
        used[best] = True
        w = 0.5 * (z + pool[best].conjugate())
        out.extend([w, w.conjugate()])
    return tuple(out)


def _check_conjugate_closed(roots, tol=_CONJ_TOL):
    try:
        symmetrize_roots(roots, tol)
    except ConjugacyViolation:
        raise
    return True


@dataclass(frozen=True)
class UnimodularMatrix:
    """Integer 2x2 matrix (a b; c d) with determinant one."""

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if self.a * self.d - self.b * self.c != 1:
            raise DeterminantNotOne(f"det {self.as_tuple()} != 1")

    @classmethod
    def identity(cls):
        return cls(1, 0, 0, 1)

    @classmethod
    def translation(cls, m):
        """Matrix of the substitution X -> X + m Z."""
        return cls(1, int(m), 0, 1)

    @classmethod
    def inversion(cls):
        """Matrix of the substitution (X, Z) -> (Z, -X)."""
        return cls(0, 1, -1, 0)

    def inverse(self):
        return UnimodularMatrix(self.d, -self.b, -self.c, self.a)

    def __matmul__(self, other):
        return UnimodularMatrix(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def mobius(self, z):
        """Fractional linear action (az + b) / (cz + d) on a complex number."""
        return (self.a * z + self.b) / (self.c * z + self.d)

    def as_tuple(self):
        return (self.a, self.b, self.c, self.d)


@dataclass(frozen=True)
class BinaryForm:
    """Real binary form, stored as leading coefficient plus root multiset."""

    leading: float
    roots: tuple

    def __post_init__(self):
        if self.leading == 0.0:
            raise ZeroLeadingCoefficient("leading coefficient must be nonzero")
        rt = tuple(complex(r) for r in self.roots)
        object.__setattr__(self, "roots", rt)
        object.__setattr__(self, "leading", float(self.leading))
        if len(rt) < MIN_DEGREE:
            raise UnsupportedDegree(f"degree {len(rt)} < {MIN_DEGREE}")
        _check_conjugate_closed(rt)

    @property
    def degree(self):
        return len(self.roots)

    def coeffs(self):
        return expand(self)


def _horner(coeffs, z):
    """Evaluate a dense polynomial (descending coefficients) at points z."""
    acc = np.full_like(z, coeffs[0], dtype=complex)
    for c in coeffs[1:]:
        acc = acc * z + c
    return acc


def from_coeffs(coeffs, max_iter=200, tol=1e-12):
    """Build a form from n+1 real coefficients (descending powers of X).

    Roots are found by simultaneous Ehrlich-Aberth iteration started on a
    circle of radius 1 + max|c_i / c_0|, then symmetrized into exact
    conjugate pairs.
    """
    c = np.asarray([float(x) for x in coeffs], dtype=float)
    if c.size < MIN_DEGREE + 1:
        raise UnsupportedDegree(f"need at least {MIN_DEGREE + 1} coefficients")
    if c[0] == 0.0:
        raise ZeroLeadingCoefficient("leading coefficient must be nonzero")
    n = c.size - 1
    scale = float(np.max(np.abs(c)))
    dc = c[:-1] * np.arange(n, 0, -1)

    radius = 1.0 + float(np.max(np.abs(c[1:] / c[0])))
    k = np.arange(n)
    # offset angle breaks symmetry traps for real-axis-symmetric inputs
    z = radius * np.exp(1j * (2.0 * np.pi * k / n + 0.4))

    converged = False
    for _ in range(max_iter):
        p = _horner(c, z)
        bound = tol * scale * np.maximum(1.0, np.abs(z)) ** n
        if np.all(np.abs(p) <= bound):
            converged = True
            break
        dp = _horner(dc, z)
        dp = np.where(dp == 0, 1e-300, dp)
        newton = p / dp
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, 1.0)
        s = np.sum(1.0 / diff, axis=1) - 1.0
        denom = 1.0 - newton * s
        denom = np.where(np.abs(denom) < 1e-300, 1e-300, denom)
        w = newton / denom
        z = z - w
        if np.max(np.abs(w)) <= 1e-16 * (1.0 + np.max(np.abs(z))):
            p = _horner(c, z)
            bound = tol * scale * np.maximum(1.0, np.abs(z)) ** n
            converged = bool(np.all(np.abs(p) <= 1e3 * bound))
            break
    if not converged:
        p = _horner(c, z)
        bound = tol * scale * np.maximum(1.0, np.abs(z)) ** n
        if not np.all(np.abs(p) <= 1e3 * bound):
            raise NonConvergentRoots(
                f"residual {np.max(np.abs(p)):.3e} above tolerance after {max_iter} iterations"
            )
    return BinaryForm(leading=float(c[0]), roots=symmetrize_roots(z.tolist()))


def expand(form):
    """Coefficients of a0 * prod(X - alpha_i Z), descending in X.

    The imaginary residue left by conjugate closure is checked and
    discarded.
    """
    c = np.array([form.leading], dtype=complex)
    for r in form.roots:
        c = np.convolve(c, np.array([1.0, -r], dtype=complex))
    scale = max(float(np.max(np.abs(c))), 1e-300)
    if float(np.max(np.abs(c.imag))) > 1e-8 * scale:
        raise ConjugacyViolation(
            f"imaginary residue {np.max(np.abs(c.imag)):.3e} too large in expansion"
        )
    return [float(x) for x in c.real]


def act(form, g):
    """Apply the substitution (Fg)(X, Z) = F(aX + bZ, cX + dZ).

    On roots this is alpha -> (d*alpha - b) / (-c*alpha + a); the leading
    coefficient picks up the factor prod(a - c*alpha_i).  A root at a/c
    would map to infinity and raises DegreeDrop.
    """
    a, b, c, d = g.a, g.b, g.c, g.d
    new_roots = []
    lead_factor = complex(1.0, 0.0)
    for r in form.roots:
        denom = a - c * r
        if abs(denom) <= 1e-12 * max(1.0, abs(c) * abs(r)):
            raise DegreeDrop(f"root {r} maps to infinity under {g.as_tuple()}")
        new_roots.append((d * r - b) / denom)
        lead_factor *= denom
    lead = form.leading * lead_factor
    if abs(lead.imag) > 1e-8 * max(1.0, abs(lead)):
        raise ConjugacyViolation("leading coefficient acquired an imaginary part")
    return BinaryForm(leading=lead.real, roots=symmetrize_roots(new_roots))
