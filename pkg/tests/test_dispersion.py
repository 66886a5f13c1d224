"""Surface-wave dispersion: determinant, branch tracing and oracles."""
import math

import numpy as np
import pytest

from crackwave.dispersion import (DispersionPoint, _scaled_det, dispersion_det,
                                  shear_phase_speed, surface_mode_shape,
                                  trace_curve)
from crackwave.errors import DomainError
from crackwave.material import critical_speed, lambda_surface


class TestShearPhaseSpeed:
    def test_long_wave_limit(self):
        for h0 in (0.0, 0.3, 0.9):
            assert shear_phase_speed(0.0, h0) == 1.0

    def test_nondispersive_point(self):
        # h0 = 1/sqrt(2) makes the planar shear wave non-dispersive.
        for k in (0.1, 1.0, 17.0):
            assert shear_phase_speed(k, 1.0 / math.sqrt(2.0)) == pytest.approx(1.0)

    def test_hand_value(self):
        assert shear_phase_speed(1.0, 0.0) == pytest.approx(math.sqrt(1.5))


class TestDeterminant:
    def test_zero_on_shear_branch_at_eta0(self):
        for k in (0.3, 1.0, 4.0):
            mB = shear_phase_speed(k, 0.707)
            det = dispersion_det(mB, mB * k, 0.0, 0.707)
            scale = abs(dispersion_det(0.9 * mB, 0.9 * mB * k, 0.0, 0.707))
            assert abs(det) < 1e-6 * max(scale, 1.0)

    def test_supersonic_root_bracketed(self):
        # h0 = 0 at omega = 1: a sign change brackets a root above m = 1.
        mB = math.sqrt(0.5 * (1.0 + math.sqrt(3.0)))
        ms = np.linspace(1.0001, mB * (1.0 - 1e-10), 400)
        vals = [_scaled_det(m, 0.5, 0.0, omega_norm=1.0) for m in ms]
        assert any(a * b < 0.0 for a, b in zip(vals, vals[1:]))

    def test_highfreq_coefficient_is_lambda(self):
        for eta, h0, mR in ((0.9, 0.8, 0.7), (-0.5, 0.9, 0.4)):
            omega = 1e4
            k = omega / mR
            det = dispersion_det(mR, omega, eta, h0)
            lam = lambda_surface(eta, h0, mR)
            assert det / k**5 == pytest.approx(lam, rel=1e-4)

    def test_domain_checks(self):
        with pytest.raises(DomainError):
            dispersion_det(-0.5, 1.0, 0.0, 0.0)
        with pytest.raises(DomainError):
            dispersion_det(0.5, 0.0, 0.0, 0.0)


class TestTraceCurve:
    def test_eta0_degenerates_to_shear(self):
        pts = trace_curve(np.geomspace(0.1, 20.0, 40), 0.0, 0.707, axis="k")
        for p in pts:
            assert abs(p.mR - shear_phase_speed(p.k_norm, 0.707)) < 1e-8

    def test_h0_zero_supersonic(self):
        pts = trace_curve(np.geomspace(0.2, 10.0, 20), 0.9, 0.0, axis="k")
        assert all(p.mR > 1.0 for p in pts)

    def test_consistency_identity(self):
        pts = trace_curve(np.geomspace(0.5, 50.0, 15), 0.9, 0.8, axis="omega")
        for p in pts:
            assert p.mR * p.k_norm == pytest.approx(p.omega_norm, rel=1e-12)

    def test_subsonic_decrease_and_highfreq_bound(self):
        pts = trace_curve(np.geomspace(0.5, 1e3, 25), 0.9, 0.8, axis="omega")
        mrs = [p.mR for p in pts]
        peak = int(np.argmax(mrs))
        assert all(a >= b for a, b in zip(mrs[peak:], mrs[peak + 1:]))
        assert mrs[-1] >= critical_speed(0.9, 0.8) - 1e-3

    def test_highfreq_limit_matches_critical_speed(self):
        for eta, h0 in ((0.9, 0.8), (-0.9, 0.707)):
            pt = trace_curve(np.array([1e3]), eta, h0, axis="omega")[0]
            assert abs(pt.mR - critical_speed(eta, h0)) < 1e-3

    def test_bad_grid(self):
        with pytest.raises(DomainError):
            trace_curve(np.array([1.0, 0.5]), 0.0, 0.0)
        with pytest.raises(DomainError):
            trace_curve(np.array([1.0, 2.0]), 0.0, 0.0, axis="frequency")


class TestModeShape:
    def test_bounded_mode(self):
        pt = trace_curve(np.array([2.0]), 0.9, 0.8, axis="k")[0]
        shape = surface_mode_shape(pt.mR, pt.k_norm, 0.9, 0.8)
        assert shape.alpha.real > 0.0
        assert shape.beta.real >= 0.0
        assert max(abs(shape.A), abs(shape.B)) == pytest.approx(1.0)

    def test_null_vector_residual(self):
        pt = trace_curve(np.array([2.0]), 0.9, 0.8, axis="k")[0]
        s = surface_mode_shape(pt.mR, pt.k_norm, 0.9, 0.8)
        k2 = pt.k_norm**2
        row2 = (s.alpha**2 + 0.9 * k2) * s.A + (s.beta**2 + 0.9 * k2) * s.B
        scale = abs(s.alpha**2 + 0.9 * k2) + abs(s.beta**2 + 0.9 * k2)
        assert abs(row2) < 1e-7 * scale
