"""Dynamic energy release rate of the steady antiplane crack.

The couple-stress closed form E = Re[2i·F²·T0²/(G·ℓ·Upsilon)] is compared
against its classical counterpart E_cl = T0²·K_p²/(G·L·sqrt(1−m²)) and the
vanishing-microstructure limit, which reproduces E_cl exactly for any
integrable loading.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .classical import classical_err, half_power_moment_quadrature, kp_coefficient
from .errors import CrackwaveError, RealnessError, RegimeError
from .kernel import FactorizedKernel, KernelParams, factorize
from .loading import (LoadProfile, SplitData, build_split,
                      traction_half_power_moment)
from .material import Material, PropagationState, critical_speed, upsilon

__all__ = [
    "ErrResult",
    "err_couple",
    "err_classical",
    "err_ratio",
    "err_smalllength_limit",
    "err_result",
    "err_max_sweep",
]

LIMIT_SPEED_FACTOR = 0.999  # proxy for "m at its limiting value" in sweeps


@dataclass(frozen=True)
class ErrResult:
    """Energy release rate, its classical counterpart and their ratio, with
    the parameter tuple echoed."""

    E: float
    E_cl: float
    ratio: float
    m: float
    eta: float
    h0: float
    p: int
    L_over_ell: float


def err_couple(F: complex, material: Material, state: PropagationState,
               T0: float, *, imag_rtol: float = 1e-8) -> float:
    """E = Re[2i·F²·T0²/(G·ℓ·Upsilon)]; raises if the imaginary residue
    exceeds ``imag_rtol`` relative or the point is not sub-Rayleigh."""
    ups = upsilon(material.eta, material.h0, state.m)
    if state.m >= 1.0 or ups <= 0.0:
        raise RegimeError(
            f"energy release rate needs the sub-Rayleigh regime "
            f"(m={state.m}, upsilon={ups:g})"
        )
    value = 2j * F * F * T0 * T0 / (material.G * material.ell * ups)
    if abs(value.imag) > imag_rtol * max(abs(value), 1e-300):
        raise RealnessError("energy release rate has a large imaginary residue",
                            value)
    return float(value.real)


def err_classical(profile: LoadProfile, m: float, G: float) -> float:
    """Classical counterpart T0²K_p²/(G·L·sqrt(1−m²))."""
    return classical_err(profile, m, G)


def err_ratio(F: complex, material: Material, state: PropagationState,
              profile: LoadProfile, *, consistency_rtol: float = 1e-10) -> float:
    """E/E_cl, computed both as the quotient and by its closed form
    2i·F²·L·sqrt(1−m²)/(ℓ·K_p²·Upsilon); the two must agree to
    ``consistency_rtol``."""
    e = err_couple(F, material, state, profile.T0)
    e_cl = err_classical(profile, state.m, material.G)
    quotient = e / e_cl
    kp = kp_coefficient(profile.p)
    ups = upsilon(material.eta, material.h0, state.m)
    closed = 2j * F * F * profile.L * math.sqrt(1.0 - state.m**2) / (
        material.ell * kp * kp * ups)
    if abs(quotient - closed.real) > consistency_rtol * abs(quotient):
        raise RealnessError("energy ratio closed form disagrees with the quotient",
                            closed)
    return quotient


def err_smalllength_limit(tau, m: float, G: float) -> float:
    """Vanishing-microstructure limit of the energy release rate:
    (1/(pi·G·sqrt(1−m²)))·(∫tau|X|^{−1/2}dX)².

    ``tau`` is either a LoadProfile (closed-form moment) or a callable
    loading density on X < 0 (quadrature)."""
    if m >= 1.0:
        raise RegimeError(f"limit energy release rate needs m < 1, got {m}")
    if isinstance(tau, LoadProfile):
        moment = traction_half_power_moment(tau)
    else:
        moment = half_power_moment_quadrature(tau)
    return moment * moment / (math.pi * G * math.sqrt(1.0 - m * m))


def err_result(material: Material, m: float, profile: LoadProfile,
               kernel: FactorizedKernel | None = None, *,
               split: SplitData | None = None) -> ErrResult:
    """Full evaluation at one parameter point (kernel/split reusable)."""
    state = PropagationState(m)
    if split is None:
        if kernel is None:
            kernel = factorize(KernelParams(m=m, eta=material.eta, h0=material.h0))
        split = build_split(kernel, material, profile)
    e = err_couple(split.F, material, state, profile.T0)
    e_cl = err_classical(profile, m, material.G)
    ratio = err_ratio(split.F, material, state, profile)
    return ErrResult(E=e, E_cl=e_cl, ratio=ratio, m=m, eta=material.eta,
                     h0=material.h0, p=profile.p,
                     L_over_ell=profile.L / material.ell)


def err_max_sweep(material: Material, h0_values, profile: LoadProfile, *,
                  m_factor: float = LIMIT_SPEED_FACTOR):
    """Limiting energy release rate along an h0 grid at fixed (eta, p, L/ℓ).

    Each row evaluates E and E/E_cl at m = m_factor·min(1, m_c(eta, h0)).
    Failed rows carry an ``error`` message and the sweep continues.
    """
    rows = []
    for h0 in h0_values:
        mat = Material(G=material.G, rho=material.rho, ell=material.ell,
                       eta=material.eta, h0=float(h0))
        row = {"h0": float(h0), "eta": mat.eta, "p": profile.p,
               "L_over_ell": profile.L / mat.ell}
        try:
            m_lim = min(1.0, critical_speed(mat.eta, mat.h0))
            m = m_factor * m_lim
            res = err_result(mat, m, profile)
            row.update(m=m, m_limit=m_lim, E=res.E, E_cl=res.E_cl,
                       ratio=res.ratio, error="")
        except CrackwaveError as exc:
            row.update(m=float("nan"), m_limit=float("nan"), E=float("nan"),
                       E_cl=float("nan"), ratio=float("nan"), error=str(exc))
        rows.append(row)
    return rows
