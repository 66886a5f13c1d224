"""Crack symbol and its Cauchy-integral factorization.

The factorization machinery is checked against an exactly factorizable
rational kernel (closed-form factors and boundary phase) in addition to the
physical symbol's own identities.
"""
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from crackwave.errors import DomainError, PoleError, RegimeError
from crackwave.kernel import (CauchyFactorization, FactorizedKernel,
                              KernelParams, factorize, kernel_eval, sqrt_minus,
                              sqrt_plus)
from crackwave.material import critical_speed, zeta

RATIONAL_A, RATIONAL_B = 2.0, 1.0


def rational_kernel(t):
    t = np.asarray(t, dtype=float)
    return (t * t + RATIONAL_A**2) / (t * t + RATIONAL_B**2)


def rational_kplus(z):
    return (z + 1j * RATIONAL_B) / (z + 1j * RATIONAL_A)


def rational_kminus(z):
    return (z - 1j * RATIONAL_A) / (z - 1j * RATIONAL_B)


@pytest.fixture(scope="module")
def rational():
    return CauchyFactorization(rational_kernel, xi_hi=4e3)


class TestBranches:
    def test_branch_values(self):
        assert sqrt_plus(-1j) == pytest.approx(np.exp(-0.25j * np.pi))
        assert sqrt_plus(-4.0) == pytest.approx(2j)
        assert sqrt_minus(-4.0) == pytest.approx(-2j)
        assert sqrt_minus(-1j * 9.0) == pytest.approx(3.0 * np.exp(-0.25j * np.pi))

    def test_product_is_modulus_on_axis(self):
        xi = np.concatenate([-np.geomspace(1e-3, 1e3, 500),
                             np.geomspace(1e-3, 1e3, 500)])
        prod = sqrt_plus(xi) * sqrt_minus(xi)
        assert np.abs(prod - np.abs(xi)).max() < 1e-12 * np.abs(xi).max()

    @given(st.complex_numbers(max_magnitude=50.0, allow_subnormal=False))
    @settings(max_examples=200, deadline=None)
    def test_squares(self, z):
        if abs(z) < 1e-12:
            return
        assert sqrt_plus(z) ** 2 == pytest.approx(z, rel=1e-10)
        assert sqrt_minus(z) ** 2 == pytest.approx(z, rel=1e-10)


class TestKernelParams:
    def test_super_shear_rejected(self):
        with pytest.raises(RegimeError):
            KernelParams(m=1.0, eta=0.0, h0=0.0)

    def test_super_rayleigh_rejected(self):
        mc = critical_speed(-0.9, 0.707)
        with pytest.raises(RegimeError):
            KernelParams(m=0.6, eta=-0.9, h0=0.707)
        KernelParams(m=0.99 * mc, eta=-0.9, h0=0.707)  # fine below

    def test_derived(self):
        p = KernelParams(m=0.0, eta=0.0, h0=0.5)
        assert p.nu == 1.0
        assert p.u == 1.0
        assert p.zeta == pytest.approx(zeta(0.0, 0.5, 0.0))


class TestKernelEval:
    def test_origin(self):
        kv = kernel_eval(0.0, KernelParams(m=0.3, eta=0.5, h0=0.6))
        assert kv.chi == pytest.approx(1.0)
        assert kv.alpha == pytest.approx(math.sqrt(2.0))
        assert kv.beta == pytest.approx(0.0)
        assert kv.psi == pytest.approx(2.0 * math.sqrt(1.0 - 0.09))
        assert kv.k == pytest.approx(1.0)

    def test_static_collapse(self):
        p = KernelParams(m=0.0, eta=0.5, h0=0.3)
        for xi in (0.5, 3.0, 40.0):
            kv = kernel_eval(xi, p)
            assert kv.chi == pytest.approx(1.0)
            assert kv.alpha == pytest.approx(math.sqrt(2.0 + xi * xi))
            assert kv.beta == pytest.approx(abs(xi))

    def test_large_xi_near_unity(self):
        p = KernelParams(m=0.3, eta=0.5, h0=0.6)
        assert abs(kernel_eval(1e3, p).k - 1.0) <= 1e-2
        assert abs(kernel_eval(-1e3, p).k - 1.0) <= 1e-2

    def test_pole_detected(self):
        p = KernelParams(m=0.3, eta=0.5, h0=0.6)
        with pytest.raises(PoleError):
            kernel_eval(1j * p.zeta, p)

    def test_psi_zero_matches_zeta(self, kernel_factory):
        k = kernel_factory(0.3, 0.9, 0.707)
        zv = zeta(0.9, 0.707, 0.3)
        psi = k.params.upsilon * (1j * zv) ** 2 + 2.0 * k.params.nu
        assert abs(psi) < 1e-10

    def test_evenness(self, kernel_factory):
        k = kernel_factory(0.3, 0.9, 0.707)
        xi = np.geomspace(1e-3, 1e3, 1000)
        assert np.abs(k.k_real(xi) - k.k_real(-xi)).max() < 1e-12


class TestRationalReconstruction:
    def test_factors_off_axis(self, rational):
        rng = np.random.default_rng(7)
        for _ in range(40):
            z = complex(rng.uniform(-30, 30), rng.uniform(0.02, 30))
            assert rational.k_plus(z) == pytest.approx(rational_kplus(z), abs=1e-9)
            assert rational.k_minus(np.conj(z)) == pytest.approx(
                rational_kminus(np.conj(z)), abs=1e-9)

    def test_boundary_values(self, rational):
        for x in np.geomspace(1e-2, 1e3, 25):
            assert rational.k_plus(x) == pytest.approx(rational_kplus(x), abs=1e-8)
            assert rational.k_minus(x) == pytest.approx(rational_kminus(x), abs=1e-8)

    def test_boundary_phase_closed_form(self, rational):
        for x in (0.03, 0.7, 3.0, 40.0, 900.0):
            closed = math.atan2(RATIONAL_B, x) - math.atan2(RATIONAL_A, x)
            assert rational.theta_exact(x) == pytest.approx(closed, abs=1e-11)
            assert rational.theta(x) == pytest.approx(closed, abs=1e-7)

    def test_unit_kernel(self):
        cf = CauchyFactorization(lambda t: np.ones_like(np.asarray(t, float)),
                                 xi_hi=4e3)
        for z in (0.5 + 0.5j, 3.0, 1j):
            assert cf.k_plus(z) == pytest.approx(1.0, abs=1e-12)
        for z in (0.5 - 0.5j, 3.0, -2j):
            assert cf.k_minus(z) == pytest.approx(1.0, abs=1e-12)


class TestPhysicalFactorization:
    def test_identity_on_real_axis(self, kernel_factory):
        k = kernel_factory(0.3, 0.9, 0.707)
        xi = np.geomspace(1e-2, 1e3, 200)
        worst = max(abs(k.k_minus(x) / k.k_plus(x) - k.k_real(x)) / k.k_real(x)
                    for x in xi)
        assert worst < 1e-8

    def test_schwarz_symmetry(self, kernel_factory):
        k = kernel_factory(0.3, 0.9, 0.707)
        rng = np.random.default_rng(11)
        for _ in range(100):
            z = complex(rng.uniform(-50, 50), rng.uniform(0.05, 50))
            assert k.k_plus(-np.conj(z)) == pytest.approx(
                np.conj(k.k_plus(z)), rel=1e-10, abs=1e-12)

    def test_normalization_at_origin_and_infinity(self, kernel_factory):
        k = kernel_factory(0.3, 0.9, 0.707)
        kp0 = k.k_plus(0.0)
        assert kp0.imag == pytest.approx(0.0, abs=1e-14)
        assert kp0.real > 0.0
        assert abs(k.k_plus(1e5j) - 1.0) < 1e-4
        assert abs(k.k_minus(-1e5j) - 1.0) < 1e-4

    def test_theta_spline_accuracy(self, kernel_factory):
        k = kernel_factory(0.3, 0.9, 0.707)
        for x in np.geomspace(2e-6, 3e3, 40):
            assert abs(k.theta(x) - k.theta_exact(x)) < 1e-8

    def test_theta_odd(self, kernel_factory):
        k = kernel_factory(0.3, 0.9, 0.707)
        xi = np.geomspace(1e-3, 100.0, 50)
        assert np.abs(k.theta(xi) + k.theta(-xi)).max() < 1e-15

    def test_positivity_guard(self):
        # Super-Rayleigh parameters never reach factorization (regime check
        # fires first).
        with pytest.raises(RegimeError):
            factorize(KernelParams(m=0.6, eta=-0.9, h0=0.707))

    def test_wrong_halfplane(self, kernel_factory):
        k = kernel_factory(0.3, 0.9, 0.707)
        with pytest.raises(DomainError):
            k.k_plus(1.0 - 1j)
        with pytest.raises(DomainError):
            k.k_minus(1.0 + 1j)
