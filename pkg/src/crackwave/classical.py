"""Classical-elasticity antiplane steady crack: split coefficients, near-tip
fields, stress intensity factor and energy release rate.

Serves as the independent oracle for the couple-stress pipeline's
vanishing-microstructure limits.  Full-line classical fields reuse the
inversion machinery of :mod:`crackwave.fields` through
:func:`classical_split` (unit symbol, Psi ≡ 2·nu, zero Liouville constant).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

from .errors import RegimeError
from .loading import LoadProfile, SplitData, split_coefficients
from .numerics import QuadratureSpec, adaptive_integral

__all__ = [
    "kp_coefficient",
    "h_coefficients",
    "h_coefficients_contour",
    "ClassicalSolution",
    "build_classical",
    "classical_neartip",
    "classical_sif",
    "classical_err",
    "classical_split",
]


def kp_coefficient(p: int) -> float:
    """K_p = Γ(p+1/2)/(p!·sqrt(pi)) = (−1)^p sqrt(pi)/(p!·Γ(1/2−p));
    K_0..K_3 = 1, 1/2, 3/8, 5/16.  Computed through the reflection identity
    to avoid the alternating Γ at negative half-integers."""
    return math.exp(gammaln(p + 0.5) - gammaln(p + 1.0)) / math.sqrt(math.pi)


def h_coefficients(p: int, L: float) -> np.ndarray:
    """Closed-form split coefficients H_0..H_p of 1/s₊^{1/2} in powers of
    1+isL: H_j = K_j·(i/L)^{−1/2}."""
    root = math.sqrt(L) * np.exp(-1j * np.pi / 4.0)
    return np.array([kp_coefficient(j) * root for j in range(p + 1)], dtype=complex)


class _UnitKernel:
    """Trivial symbol k ≡ 1 (classical elasticity)."""

    @staticmethod
    def k_plus(z):
        return 1.0 + 0.0j

    @staticmethod
    def k_minus(z):
        return 1.0 + 0.0j


def h_coefficients_contour(p: int, L: float) -> np.ndarray:
    """H_j by the circle-contour definition (cross-check path)."""
    profile = LoadProfile(T0=1.0, L=L, p=p)
    return split_coefficients(_UnitKernel(), profile, 1.0)


@dataclass(frozen=True)
class ClassicalSolution:
    """Classical antiplane steady crack at speed m under the standard
    traction family."""

    profile: LoadProfile
    G: float
    m: float
    H: np.ndarray

    @property
    def nu(self) -> float:
        return math.sqrt(1.0 - self.m * self.m)


def build_classical(profile: LoadProfile, m: float, G: float) -> ClassicalSolution:
    if not 0.0 <= m < 1.0:
        raise RegimeError(f"classical steady crack needs 0 <= m < 1, got {m}")
    return ClassicalSolution(profile=profile, G=G, m=m,
                             H=h_coefficients(profile.p, profile.L))


def classical_neartip(X: float, solution: ClassicalSolution) -> dict:
    """Leading near-tip fields: sigma23 at +|X| (square-root singular) and the
    opening w at −|X| (square-root zero).  The product sigma23·w is
    X-independent."""
    if X == 0.0:
        raise ZeroDivisionError("near-tip fields evaluated at the tip")
    x = abs(X)
    prof = solution.profile
    amp = kp_coefficient(prof.p) / math.sqrt(math.pi) * prof.T0 / math.sqrt(prof.L)
    sigma = amp / math.sqrt(x)
    w = 2.0 * amp / (solution.nu * solution.G) * math.sqrt(x)
    return {"sigma23": sigma, "w": w}


def classical_sif(solution: ClassicalSolution) -> float:
    """K_III = lim sqrt(2 pi X)·sigma23 = K_p·sqrt(2/L)·T0."""
    prof = solution.profile
    return kp_coefficient(prof.p) * math.sqrt(2.0 / prof.L) * prof.T0


def classical_err(profile: LoadProfile, m: float, G: float) -> float:
    """Classical energy release rate T0²K_p²/(G·L·sqrt(1−m²))."""
    if not 0.0 <= m < 1.0:
        raise RegimeError(f"classical energy release rate needs m < 1, got {m}")
    kp = kp_coefficient(profile.p)
    return profile.T0**2 * kp * kp / (G * profile.L * math.sqrt(1.0 - m * m))


def classical_split(profile: LoadProfile, m: float, G: float) -> SplitData:
    """SplitData specialization driving the field-inversion machinery with
    the classical solution: unit symbol, Psi ≡ 2·nu, F = 0, and lengths
    measured with ell = 1 so the coefficients are exactly H_j."""
    sol = build_classical(profile, m, G)
    return SplitData(
        profile=profile,
        G=G,
        ell=1.0,
        m=m,
        nu=sol.nu,
        upsilon_eff=0.0,
        kernel=None,
        F_coeffs=sol.H,
        taylor=None,
        F=0.0,
        F_alt=None,
        zeta=None,
    )


def half_power_moment_quadrature(tau, spec: QuadratureSpec | None = None) -> float:
    """∫_{−∞}^0 tau(X)·|X|^{−1/2} dX for a general integrable loading, by
    adaptive quadrature (substitution X = −v²)."""
    val, _ = adaptive_integral(lambda v: tau(-v * v) * 2.0, 0.0, np.inf, spec)
    return float(np.real(val))
