"""Crack-face traction family, its transform, the additive split of the
Wiener-Hopf right-hand side, and the Liouville constant.

The split writes k⁺(sℓ)/((sℓ)₊^{1/2}(1+isL)^{1+p}) = G⁻(s) + G⁺(s) with

    G⁻(s) = Σ_{j=0..p} F_j (1+isL)^{j-p-1},

where F_j are the Taylor coefficients of k⁺(sℓ)/(sℓ)₊^{1/2} in powers of
u = 1 + isL about the transform pole s = i/L.  The Liouville constant is
F = G⁻(−i·zeta/ℓ); it is cross-checked against the independent
ratio-of-integrals definition

    F = ∫ G⁻(s)/((sℓ)₋^{1/2} Ψ k⁻) ds / ∫ 1/((sℓ)₋^{1/2} Ψ k⁻) ds

evaluated by quadrature along the real axis.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.special import gammaln

from .errors import CrossCheckError, DomainError, PoleError
from .kernel import FactorizedKernel, sqrt_minus, sqrt_plus
from .material import Material, zeta as zeta_fn
from .numerics import QuadratureSpec, contour_coefficients, oscillatory_halfline

__all__ = [
    "LoadProfile",
    "SplitData",
    "traction",
    "traction_transform",
    "traction_half_power_moment",
    "split_coefficients",
    "g_minus",
    "g_plus",
    "liouville_constant",
    "build_split",
]

_CONTOUR_RADIUS = 0.4  # |1 + isL| on the coefficient contour
_TAYLOR_SWITCH = 0.35  # g_plus switches to the Taylor form inside this radius
_EXTRA_TAYLOR = 14     # extra coefficients kept for the Taylor form


@dataclass(frozen=True)
class LoadProfile:
    """Traction family on the crack faces: resultant T0, length scale L,
    exponent p (the maximum sits at X = −p·L)."""

    T0: float
    L: float
    p: int

    def __post_init__(self):
        if self.T0 <= 0:
            raise DomainError(f"T0 must be positive, got {self.T0}")
        if self.L <= 0:
            raise DomainError(f"L must be positive, got {self.L}")
        if not isinstance(self.p, (int, np.integer)) or self.p < 0:
            raise DomainError(f"p must be a nonnegative integer, got {self.p!r}")


def traction(X, profile: LoadProfile):
    """tau(X) ≥ 0 for X < 0; integrates to T0 over the crack faces."""
    X = np.asarray(X, dtype=float)
    if np.any(X >= 0):
        raise DomainError("traction is defined on the crack faces X < 0")
    r = -X / profile.L
    out = profile.T0 / profile.L * np.exp(
        profile.p * np.log(r, where=r > 0, out=np.zeros_like(r))
        - r - gammaln(profile.p + 1)
    )
    return float(out) if out.ndim == 0 else out


def traction_transform(s, profile: LoadProfile):
    """T0/(1 + isL)^{1+p}; analytic for Im s < 0, pole at s = i/L."""
    s = np.asarray(s, dtype=complex)
    u = 1.0 + 1j * s * profile.L
    if np.any(np.abs(u) < 1e-12):
        raise PoleError("traction transform evaluated at its pole s = i/L")
    out = profile.T0 * u ** (-(1 + profile.p))
    return complex(out) if out.ndim == 0 else out


def traction_half_power_moment(profile: LoadProfile) -> float:
    """∫_{−∞}^0 tau(X)|X|^{−1/2} dX = T0·Γ(p+1/2)/(Γ(p+1)·sqrt(L))."""
    p = profile.p
    return profile.T0 * math.exp(gammaln(p + 0.5) - gammaln(p + 1.0)) / math.sqrt(profile.L)


def split_coefficients(kernel, profile: LoadProfile, ell: float,
                       count: Optional[int] = None) -> np.ndarray:
    """Taylor coefficients F_0..F_{count-1} of k⁺(sℓ)/(sℓ)₊^{1/2} in powers of
    u = 1+isL, by a circle contour about s = i/L.

    ``kernel`` only needs a ``k_plus`` method, so a unit-kernel stub
    reproduces the classical coefficients.
    """
    n = profile.p + 1 if count is None else count
    L = profile.L
    zl = 1j * ell / L  # transform variable at the contour centre

    # Contour admissibility: radius must stay clear of the branch point s = 0
    # (|u| = 1) and of the symbol pole s = −i·zeta/ell (|u| = 1 + zeta·L/ell).
    if not _CONTOUR_RADIUS < 1.0:
        raise DomainError("contour radius must be below the s = 0 branch point")

    def g(u):
        u = np.atleast_1d(u)
        z = zl * (1.0 - u)
        kp = np.array([kernel.k_plus(zz) for zz in z], dtype=complex)
        return kp / sqrt_plus(z)

    return contour_coefficients(g, 0.0, _CONTOUR_RADIUS, n,
                                check_count=profile.p + 1)


class SplitData:
    """Everything needed to evaluate the split functions and invert the
    crack-line fields: coefficients F_j, Liouville constant F, the symbol
    factorization and the parameter echo.

    A ``kernel`` of None denotes the classical-elasticity specialization
    (unit symbol, Psi ≡ 2·nu, F = 0).
    """

    def __init__(self, *, profile, G, ell, m, nu, upsilon_eff, eta=None, h0=None,
                 kernel=None, F_coeffs=None, taylor=None, F=0.0, F_alt=None,
                 zeta=None):
        self.profile = profile
        self.G = G
        self.ell = ell
        self.m = m
        self.nu = nu
        self.upsilon_eff = upsilon_eff
        self.eta = eta
        self.h0 = h0
        self.kernel = kernel
        self.F_coeffs = np.asarray(F_coeffs, dtype=complex)
        self.taylor = self.F_coeffs if taylor is None else np.asarray(taylor, dtype=complex)
        self.F = complex(F)
        self.F_alt = F_alt
        self.zeta = zeta

    @property
    def is_classical(self) -> bool:
        return self.kernel is None

    @property
    def L_over_ell(self) -> float:
        return self.profile.L / self.ell

    @property
    def T0(self) -> float:
        return self.profile.T0

    def psi(self, xi):
        """Psi(xi) = Upsilon·xi² + 2·nu (Upsilon = 0 classically)."""
        return self.upsilon_eff * np.asarray(xi) ** 2 + 2.0 * self.nu

    def k_minus_line(self, xi):
        if self.kernel is None:
            return np.ones_like(np.asarray(xi, dtype=complex))
        return self.kernel.k_minus_line(xi)

    def k_plus_line(self, xi):
        if self.kernel is None:
            return np.ones_like(np.asarray(xi, dtype=complex))
        return self.kernel.k_plus_line(xi)


def g_minus(s, split: SplitData):
    """G⁻(s) = Σ_j F_j (1+isL)^{j−p−1}; analytic off its pole at s = i/L."""
    s = np.asarray(s, dtype=complex)
    u = 1.0 + 1j * s * split.profile.L
    if np.any(np.abs(u) < 1e-12):
        raise PoleError("g_minus evaluated at its pole s = i/L")
    p = split.profile.p
    acc = np.zeros_like(u)
    for j, fj in enumerate(split.F_coeffs[: p + 1]):
        acc = acc + fj * u ** (j - p - 1)
    return complex(acc) if acc.ndim == 0 else acc


def g_plus(s, split: SplitData):
    """G⁺(s) = k⁺(sℓ)/((sℓ)₊^{1/2}(1+isL)^{1+p}) − G⁻(s), evaluated through
    the Taylor form near the removable point s = i/L."""
    if split.is_classical:
        def kp(z):
            return 1.0 + 0.0j
    else:
        kp = split.kernel.k_plus
    s_arr = np.atleast_1d(np.asarray(s, dtype=complex))
    L = split.profile.L
    p = split.profile.p
    out = np.empty_like(s_arr)
    for i, sv in enumerate(s_arr):
        u = 1.0 + 1j * sv * L
        if abs(u) < _TAYLOR_SWITCH and len(split.taylor) > p + 1:
            js = np.arange(p + 1, len(split.taylor))
            out[i] = np.sum(split.taylor[p + 1:] * u ** (js - p - 1))
        else:
            z = sv * split.ell
            full = kp(z) / (sqrt_plus(z) * u ** (1 + p))
            out[i] = full - g_minus(sv, split)
    return complex(out[0]) if np.ndim(s) == 0 else out


def _appendix_ratio(kernel: FactorizedKernel, F_coeffs, profile: LoadProfile,
                    ell: float, params) -> complex:
    """Ratio-of-integrals definition of F, by real-axis quadrature.

    Both half-lines are evaluated explicitly through the branch functions,
    exercising the factor boundary values rather than any symmetry shortcut.
    """
    Lt = profile.L / ell
    p = profile.p

    def gm(x):
        u = 1.0 + 1j * x * Lt
        acc = np.zeros_like(u)
        for j, fj in enumerate(F_coeffs[: p + 1]):
            acc = acc + fj * u ** (j - p - 1)
        return acc

    def h(x):
        psi = params.upsilon * x * x + 2.0 * params.nu
        return 1.0 / (sqrt_minus(x) * psi * kernel.k_minus_line(x))

    zeta_v = params.zeta
    spec = QuadratureSpec(abs_tol=1e-12, rel_tol=1e-11,
                          truncation_radius=max(2.0e3, 50.0 * zeta_v))
    fit = max(25.0, 30.0 * zeta_v)

    def fold(f):
        return lambda t: f(t) + f(-t)

    i2, _ = oscillatory_halfline(fold(h), 0.0, spec, sqrt_singularity=True,
                                 tail_exponents=(-2.5, -3.5, -4.5), fit_start=fit)
    i1, _ = oscillatory_halfline(fold(lambda x: gm(x) * h(x)), 0.0, spec,
                                 sqrt_singularity=True,
                                 tail_exponents=(-3.5, -4.5, -5.5), fit_start=fit)
    return complex(i1 / i2)


def liouville_constant(kernel: FactorizedKernel, profile: LoadProfile,
                       material: Material, *, cross_check: bool = True,
                       check_rtol: float = 1e-6):
    """Liouville constant F = G⁻(−i·zeta/ℓ), with the mandatory agreement
    check against the ratio-of-integrals computation.

    Returns ``(F, F_alt, F_coeffs_extended)``.
    """
    params = kernel.params
    ell = material.ell
    zeta_v = params.zeta
    coeffs = split_coefficients(kernel, profile, ell,
                                count=profile.p + 1 + _EXTRA_TAYLOR)
    u_pole = 1.0 + zeta_v * profile.L / ell  # real, > 1
    p = profile.p
    F = complex(sum(coeffs[j] * u_pole ** (j - p - 1) for j in range(p + 1)))

    F_alt = None
    if cross_check:
        F_alt = _appendix_ratio(kernel, coeffs, profile, ell, params)
        if abs(F - F_alt) > check_rtol * abs(F):
            raise CrossCheckError(
                "Liouville constant disagrees with its ratio-of-integrals form",
                F, F_alt,
            )
    return F, F_alt, coeffs


def build_split(kernel: FactorizedKernel, material: Material,
                profile: LoadProfile, *, cross_check: bool = True) -> SplitData:
    """Assemble the full split data for a sub-Rayleigh crack solution."""
    params = kernel.params
    if not (material.eta == params.eta and material.h0 == params.h0):
        raise DomainError("kernel parameters do not match the material")
    F, F_alt, coeffs = liouville_constant(kernel, profile, material,
                                          cross_check=cross_check)
    return SplitData(
        profile=profile,
        G=material.G,
        ell=material.ell,
        m=params.m,
        nu=params.nu,
        upsilon_eff=params.upsilon,
        eta=params.eta,
        h0=params.h0,
        kernel=kernel,
        F_coeffs=coeffs[: profile.p + 1],
        taylor=coeffs,
        F=F,
        F_alt=F_alt,
        zeta=zeta_fn(params.eta, params.h0, params.m),
    )


def limit_constant(profile: LoadProfile, zeta_value: float) -> complex:
    """Vanishing-microstructure limit of F·ℓ^{−1/2}:
    e^{−iπ/4}·∫tau|X|^{−1/2}dX / (sqrt(pi)·zeta·T0)."""
    moment = traction_half_power_moment(profile)
    return np.exp(-1j * np.pi / 4.0) * moment / (math.sqrt(math.pi) * zeta_value * profile.T0)
