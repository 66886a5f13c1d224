"""Loading family, split coefficients, split functions and the Liouville
constant with its independent cross-check."""
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import integrate

from crackwave.classical import h_coefficients
from crackwave.errors import DomainError, PoleError
from crackwave.kernel import sqrt_plus
from crackwave.loading import (LoadProfile, g_minus, g_plus, limit_constant,
                               split_coefficients, traction,
                               traction_half_power_moment, traction_transform)
from crackwave.material import zeta as zeta_fn


class _UnitKernel:
    @staticmethod
    def k_plus(z):
        return 1.0 + 0.0j


class TestTraction:
    @pytest.mark.parametrize("p", [0, 1, 2, 3])
    @pytest.mark.parametrize("L", [0.5, 1.0, 10.0])
    def test_resultant(self, p, L):
        prof = LoadProfile(T0=2.5, L=L, p=p)
        val, _ = integrate.quad(lambda X: traction(X, prof), -np.inf, 0.0,
                                limit=300)
        assert val == pytest.approx(2.5, abs=1e-10 * 2.5)

    @pytest.mark.parametrize("p", [1, 2, 3])
    def test_argmax(self, p):
        prof = LoadProfile(T0=1.0, L=2.0, p=p)
        Xs = np.linspace(-30.0, -1e-9, 400001)
        assert Xs[np.argmax(traction(Xs, prof))] == pytest.approx(-p * 2.0,
                                                                  abs=1e-3)

    def test_tip_value_p0(self):
        prof = LoadProfile(T0=3.0, L=0.5, p=0)
        assert traction(-1e-12, prof) == pytest.approx(3.0 / 0.5)

    def test_nonnegative(self):
        prof = LoadProfile(T0=1.0, L=1.0, p=3)
        assert np.all(traction(np.linspace(-40, -1e-9, 1000), prof) >= 0.0)

    def test_domain(self):
        with pytest.raises(DomainError):
            traction(0.5, LoadProfile(T0=1.0, L=1.0, p=0))
        with pytest.raises(DomainError):
            LoadProfile(T0=0.0, L=1.0, p=0)
        with pytest.raises(DomainError):
            LoadProfile(T0=1.0, L=1.0, p=-1)


class TestTransform:
    def test_zero_frequency_is_resultant(self):
        prof = LoadProfile(T0=4.0, L=3.0, p=2)
        assert traction_transform(0.0, prof) == pytest.approx(4.0)

    def test_fourier_oracle(self):
        prof = LoadProfile(T0=1.0, L=10.0, p=1)
        s = 1.0 / prof.L
        re, _ = integrate.quad(lambda X: traction(X, prof) * math.cos(s * X),
                               -np.inf, 0.0, limit=300)
        im, _ = integrate.quad(lambda X: traction(X, prof) * math.sin(s * X),
                               -np.inf, 0.0, limit=300)
        assert traction_transform(s, prof) == pytest.approx(re + 1j * im,
                                                            abs=1e-8)

    def test_power_decay(self):
        prof = LoadProfile(T0=1.0, L=1.0, p=2)
        mags = np.geomspace(1e2, 1e5, 7)
        vals = np.abs(traction_transform(-1j * mags, prof))  # lower ray
        slope = np.polyfit(np.log(mags), np.log(vals), 1)[0]
        assert slope == pytest.approx(-(1 + prof.p), abs=0.01)

    def test_pole(self):
        prof = LoadProfile(T0=1.0, L=2.0, p=0)
        with pytest.raises(PoleError):
            traction_transform(1j / 2.0, prof)


class TestHalfPowerMoment:
    @given(p=st.integers(0, 5), L=st.floats(0.2, 20.0))
    @settings(max_examples=30, deadline=None)
    def test_quadrature_matches_closed_form(self, p, L):
        prof = LoadProfile(T0=1.0, L=L, p=p)
        val, _ = integrate.quad(
            lambda v: traction(-v * v, prof) * 2.0, 0.0, np.inf, limit=300)
        assert val == pytest.approx(traction_half_power_moment(prof),
                                    rel=1e-10)


class TestSplitCoefficients:
    def test_unit_kernel_reproduces_classical(self):
        prof = LoadProfile(T0=1.0, L=10.0, p=3)
        fj = split_coefficients(_UnitKernel(), prof, 1.0)
        hj = h_coefficients(3, 10.0)
        assert np.abs(fj - hj).max() < 1e-10

    def test_zeroth_coefficient_is_value_at_pole(self, kernel_factory):
        k = kernel_factory(0.3, 0.9, 0.707)
        prof = LoadProfile(T0=1.0, L=10.0, p=0)
        f0 = split_coefficients(k, prof, 1.0)[0]
        direct = k.k_plus(1j / 10.0) / sqrt_plus(1j / 10.0)
        assert f0 == pytest.approx(direct, rel=1e-11)

    def test_radius_halving_invariance(self, kernel_factory):
        from crackwave.numerics import contour_coefficients
        k = kernel_factory(0.3, 0.9, 0.707)
        L = 10.0

        def g(u):
            u = np.atleast_1d(u)
            z = 1j / L * (1.0 - u)
            kp = np.array([k.k_plus(zz) for zz in z])
            return kp / sqrt_plus(z)

        a = contour_coefficients(g, 0.0, 0.4, 2)
        b = contour_coefficients(g, 0.0, 0.2, 2)
        assert np.abs(a - b).max() < 1e-10


class TestSplitFunctions:
    def test_reconstruction_on_real_axis(self, split_factory, kernel_factory):
        sp = split_factory(0.3, 0.9, 0.707, 10.0, 1)
        k = kernel_factory(0.3, 0.9, 0.707)
        s = np.linspace(-40.0, 40.0, 1001)
        s = s[s != 0.0]
        recon = g_minus(s, sp) + g_plus(s, sp)
        direct = np.array([k.k_plus(complex(sv)) for sv in s])
        direct = direct / (sqrt_plus(s.astype(complex)) * (1 + 1j * s * 10.0) ** 2)
        assert np.abs(recon - direct).max() < 1e-9 * np.abs(direct).max()

    def test_gminus_asymptotics(self, split_factory):
        sp = split_factory(0.3, 0.9, 0.707, 10.0, 1)
        s = -1e8j
        assert complex(s * g_minus(s, sp)) == pytest.approx(
            -1j * sp.F_coeffs[1] / 10.0, rel=1e-6)

    def test_gplus_asymptotics(self, split_factory):
        sp = split_factory(0.3, 0.9, 0.707, 10.0, 1)
        s = 1e8j
        assert complex(s * g_plus(s, sp)) == pytest.approx(
            1j * sp.F_coeffs[1] / 10.0, rel=1e-6)

    def test_gplus_small_s_root_behaviour(self, split_factory):
        # G⁺(s)·(sℓ)₊^{1/2} → k⁺(0) = 1 as s → 0 in the upper half-plane.
        sp = split_factory(0.3, 0.9, 0.707, 10.0, 1)
        s = 1e-10j
        val = complex(g_plus(s, sp) * sqrt_plus(s * sp.ell))
        assert val == pytest.approx(1.0, rel=1e-4)

    def test_gplus_regular_at_transform_pole(self, split_factory,
                                             kernel_factory):
        # The Taylor form used inside the switch radius agrees with the
        # subtraction form at the same point, and g_plus stays finite right
        # at the removable point s = i/L.
        sp = split_factory(0.3, 0.9, 0.707, 10.0, 1)
        k = kernel_factory(0.3, 0.9, 0.707)
        L, p = 10.0, 1
        for ur in (0.05, 0.2, 0.3):
            s = 1j / L * (1 - ur)  # |1+isL| = ur, inside the Taylor switch
            taylor = complex(g_plus(s, sp))
            z = s * sp.ell
            direct = k.k_plus(z) / (sqrt_plus(z) * (1 + 1j * s * L) ** (1 + p)) \
                - complex(g_minus(s, sp))
            assert taylor == pytest.approx(direct, rel=1e-7)
        at_pole = complex(g_plus(1j / L, sp))
        assert np.isfinite([at_pole.real, at_pole.imag]).all()

    def test_gminus_pole(self, split_factory):
        sp = split_factory(0.3, 0.9, 0.707, 10.0, 1)
        with pytest.raises(PoleError):
            g_minus(1j / 10.0, sp)


class TestLiouvilleConstant:
    def test_phase(self, split_factory):
        sp = split_factory(0.3, 0.9, 0.707, 10.0, 1)
        assert np.angle(sp.F) == pytest.approx(-np.pi / 4.0, abs=1e-10)

    @pytest.mark.parametrize("m,eta,h0,p,L", [
        (0.3, 0.0, 0.707, 1, 10.0),
        (0.3, 0.9, 0.707, 0, 0.5),
        (0.0, -0.9, 0.707, 2, 1.0),
    ])
    def test_cross_check(self, split_factory, m, eta, h0, p, L):
        sp = split_factory(m, eta, h0, L, p)
        assert abs(sp.F - sp.F_alt) <= 1e-6 * abs(sp.F)

    def test_small_length_trend(self, kernel_factory, split_factory):
        # F·ℓ^{−1/2} approaches the vanishing-microstructure constant, with
        # the drift shrinking as L/ℓ grows.
        zv = zeta_fn(0.0, 0.707, 0.3)
        drifts = []
        for L in (1e2, 1e3):
            sp = split_factory(0.3, 0.0, 0.707, L, 1)
            c = limit_constant(sp.profile, zv)
            drifts.append(abs(sp.F / c - 1.0))
        assert drifts[1] < 0.2 * drifts[0]
        assert drifts[1] < 1e-2
