import math

import numpy as np
import pytest

from formreduce import (
    UpperHalfPoint,
    covariant_point,
    lift_to_sphere,
    normalize,
    residuals,
    tangent_sum,
)
from formreduce.errors import (
    BadCovariant,
    DegenerateCluster,
    NonPositiveU,
)

from conftest import random_conjugate_closed
from oracles import grid_minimizer, random_unimodular, residuals_mp


class TestResiduals:
    def test_fourth_roots_of_unity(self):
        r_mass, r_bal = residuals([1j, -1j, 1, -1], 0.0, 1.0)
        assert r_mass == pytest.approx(0.0, abs=1e-14)
        assert abs(r_bal) == pytest.approx(0.0, abs=1e-14)

    def test_double_conjugate_pair(self):
        t0, u0 = 0.7, 1.3
        roots = [complex(t0, u0), complex(t0, -u0)] * 2
        r_mass, r_bal = residuals(roots, t0, u0)
        assert r_mass == pytest.approx(0.0, abs=1e-14)
        assert abs(r_bal) == pytest.approx(0.0, abs=1e-14)

    def test_against_extended_precision(self):
        roots, t, u = [0, 1, 2], 1.0, 0.5
        got_mass, got_bal = residuals(roots, t, u)
        exp_mass, exp_bal = residuals_mp(roots, t, u)
        assert got_mass == pytest.approx(exp_mass, abs=1e-14)
        assert got_bal == pytest.approx(exp_bal, abs=1e-14)

    def test_nonpositive_u(self):
        with pytest.raises(NonPositiveU):
            residuals([0, 1, 2], 0.0, 0.0)


class TestCovariantPoint:
    def test_roots_of_unity(self):
        roots = [np.exp(2j * math.pi * k / 5) for k in range(5)]
        z = covariant_point(roots)
        assert z.t == pytest.approx(0.0, abs=1e-12)
        assert z.u == pytest.approx(1.0, abs=1e-12)

    def test_double_conjugate_pair(self):
        roots = [0.5 + 2j, 0.5 - 2j, 0.5 + 2j, 0.5 - 2j]
        z = covariant_point(roots)
        assert z.t == pytest.approx(0.5, abs=1e-12)
        assert z.u == pytest.approx(2.0, abs=1e-12)

    def test_against_grid_minimizer(self):
        z = covariant_point([0, 1, 2, 4])
        t, u = grid_minimizer([0, 1, 2, 4], step=1e-3)
        assert z.t == pytest.approx(t, abs=5e-3)
        assert z.u == pytest.approx(u, abs=5e-3)

    def test_residual_tolerance_random(self, rng):
        for _ in range(40):
            n = int(rng.integers(3, 11))
            roots = random_conjugate_closed(rng, n)
            z = covariant_point(roots)
            r_mass, r_bal = residuals(roots, z.t, z.u)
            assert abs(r_mass) <= 1e-10 * n
            assert abs(r_bal) * z.u <= 1e-10 * n

    def test_tight_cluster_instances(self):
        # near-degenerate: two tight, far-separated clusters
        z = covariant_point([-1e-5, 1e-5, 4.95, 5.05])
        assert z.t == pytest.approx(9.998e-4, rel=1e-4)
        assert z.u == pytest.approx(0.07069300, rel=1e-6)

    def test_degenerate_half_multiplicity_real(self):
        with pytest.raises(DegenerateCluster):
            covariant_point([0, 0, 1, 5])

    def test_translation_scaling_covariance(self, rng):
        roots = random_conjugate_closed(rng, 6)
        z = covariant_point(roots)
        shifted = covariant_point([r + 3.5 for r in roots])
        assert shifted.t == pytest.approx(z.t + 3.5, abs=1e-9)
        assert shifted.u == pytest.approx(z.u, rel=1e-9)
        scaled = covariant_point([2.5 * r for r in roots])
        assert scaled.t == pytest.approx(2.5 * z.t, abs=1e-9)
        assert scaled.u == pytest.approx(2.5 * z.u, rel=1e-9)

    def test_mobius_equivariance(self, rng):
        from formreduce import BinaryForm, act
        from formreduce.forms import UnimodularMatrix

        for _ in range(15):
            roots = random_conjugate_closed(rng, int(rng.integers(3, 8)))
            f = BinaryForm(leading=1.0, roots=tuple(roots))
            a, b, c, d = random_unimodular(rng)
            g = UnimodularMatrix(a, b, c, d)
            try:
                moved = act(f, g.inverse())
            except Exception:
                continue
            z = covariant_point(f.roots)
            zg = covariant_point(moved.roots)
            expected = g.mobius(z.as_complex())
            assert abs(zg.as_complex() - expected) <= 1e-7 * (1 + abs(expected))


class TestNormalize:
    def test_fourth_roots(self):
        roots = [1j, -1j, 1, -1]
        z = UpperHalfPoint(0.0, 1.0)
        nf = normalize(roots, z)
        expected = [-1j, 1j, -1, 1]
        from oracles import match_multisets

        assert match_multisets(nf.betas, expected) < 1e-14

    def test_normalized_residuals(self, rng):
        roots = random_conjugate_closed(rng, 6)
        z = covariant_point(roots)
        nf = normalize(roots, z)
        # mass/balance for the betas at (0, 1)
        mass = sum(1.0 / (1.0 + abs(b) ** 2) for b in nf.betas)
        bal = sum(b / (1.0 + abs(b) ** 2) for b in nf.betas)
        assert mass == pytest.approx(len(roots) / 2, abs=1e-8)
        assert abs(bal) <= 1e-8

    def test_direct_formula_extended_precision(self, rng):
        roots = [0, 1, 2, 4]
        z = covariant_point(roots)
        nf = normalize(roots, z)
        import mpmath as mp

        with mp.workdps(40):
            for got, a in zip(nf.betas, roots):
                want = (mp.mpf(z.t) - a) / mp.mpf(z.u)
                assert abs(got - complex(want)) <= 1e-12 * (1 + abs(got))

    def test_bad_point_rejected(self):
        with pytest.raises(BadCovariant):
            normalize([1j, -1j, 1, -1], UpperHalfPoint(0.5, 3.0))


class TestSphere:
    def test_origin_to_south_pole(self):
        m = lift_to_sphere(0)
        assert (m.m, m.n, m.p) == (0.0, 0.0, -1.0)

    def test_unit_circle_to_equator(self):
        m = lift_to_sphere(np.exp(0.3j))
        assert m.p == pytest.approx(0.0, abs=1e-15)

    def test_projection_inverse(self, rng):
        for _ in range(20):
            b = complex(rng.uniform(-3, 3), rng.uniform(-3, 3))
            m = lift_to_sphere(b)
            back = complex(m.m / (1 - m.p), m.n / (1 - m.p))
            assert abs(back - b) <= 1e-12 * (1 + abs(b))

    def test_chord_identity(self, rng):
        # |b_i - b_j|^2 == 2 (1 - cos theta_ij) / ((1-p_i)(1-p_j))
        for _ in range(30):
            b1 = complex(rng.uniform(-4, 4), rng.uniform(-4, 4))
            b2 = complex(rng.uniform(-4, 4), rng.uniform(-4, 4))
            m1, m2 = lift_to_sphere(b1), lift_to_sphere(b2)
            cos_theta = m1.m * m2.m + m1.n * m2.n + m1.p * m2.p
            rhs = 2.0 * (1.0 - cos_theta) / ((1.0 - m1.p) * (1.0 - m2.p))
            assert abs(b1 - b2) ** 2 == pytest.approx(rhs, abs=1e-10, rel=1e-10)


class TestTangentSum:
    def test_fourth_roots(self):
        v = tangent_sum([1j, -1j, 1, -1], UpperHalfPoint(0.0, 1.0))
        assert np.linalg.norm(v) <= 1e-14

    def test_double_pair(self):
        z = UpperHalfPoint(0.5, 2.0)
        v = tangent_sum([0.5 + 2j, 0.5 - 2j, 0.5 + 2j, 0.5 - 2j], z)
        assert np.linalg.norm(v) <= 1e-14

    def test_at_computed_point(self, rng):
        for _ in range(10):
            n = int(rng.integers(3, 9))
            roots = random_conjugate_closed(rng, n)
            z = covariant_point(roots)
            assert np.linalg.norm(tangent_sum(roots, z)) <= 1e-8 * n

    def test_specific_quartet(self):
        z = covariant_point([0, 1, 2, 4])
        assert np.linalg.norm(tangent_sum([0, 1, 2, 4], z)) <= 1e-8


def test_smallest_half_disk_bound(rng):
    # the smallest disk with half the roots has radius at most u sqrt(n)
    from oracles import brute_force_half_disk_radius

    for _ in range(10):
        n = int(rng.integers(4, 9))
        roots = random_conjugate_closed(rng, n)
        z = covariant_point(roots)
        r = brute_force_half_disk_radius(roots)
        assert r <= z.u * math.sqrt(n) * (1 + 1e-9)
