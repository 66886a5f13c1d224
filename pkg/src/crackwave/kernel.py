"""Wiener-Hopf symbol of the steady antiplane crack and its multiplicative
factorization into half-plane-analytic factors.

The symbol is normalized so that on the real axis

    k(xi) = [alpha·beta·(alpha² + beta² + 2·eta·xi²) + alpha²beta² − eta²xi⁴]
            / ( |xi| · Psi(xi) · (alpha + beta) ),

which is even, real, positive in the sub-Rayleigh regime, and tends to 1 at
both xi = 0 and |xi| → ∞.  A zero-index Cauchy-integral factorization then
applies:

    k±(z) = exp( −(1/2πi) ∫_R log k(t)/(t − z) dt ),   Im z ≷ 0,

with boundary values k⁺ = e^{iθ}/√k and k⁻ = √k·e^{iθ} on the real axis,
where θ(xi) = (1/2π) PV ∫ log k(t)/(t − xi) dt is odd.  The identity
k⁻/k⁺ = k holds on the axis and k±(∞) = 1.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from scipy.interpolate import CubicSpline

from .errors import DomainError, PoleError, RegimeError
from .material import upsilon as _upsilon
from .material import zeta as _zeta
from .numerics import _gauss

__all__ = [
    "sqrt_plus",
    "sqrt_minus",
    "wave_exponents",
    "KernelParams",
    "KernelValues",
    "kernel_eval",
    "CauchyFactorization",
    "FactorizedKernel",
    "factorize",
]

_HALF_PI = 0.5 * math.pi


def sqrt_plus(z):
    """Half-power xi^{1/2} analytic for Im z > 0, cut along the negative
    imaginary axis, equal to sqrt(z) for z real positive.
    Convention: (−i)^{1/2} = e^{−iπ/4}."""
    z = np.asarray(z, dtype=complex)
    ang = np.angle(z)
    ang = np.where(ang < -_HALF_PI, ang + 2.0 * np.pi, ang)
    out = np.sqrt(np.abs(z)) * np.exp(0.5j * ang)
    return out if out.ndim else complex(out)


def sqrt_minus(z):
    """Half-power xi^{1/2} analytic for Im z < 0, cut along the positive
    imaginary axis; sqrt_plus(z)·sqrt_minus(z) = |z| on the real axis."""
    z = np.asarray(z, dtype=complex)
    ang = np.angle(z)
    ang = np.where(ang > _HALF_PI, ang - 2.0 * np.pi, ang)
    out = np.sqrt(np.abs(z)) * np.exp(0.5j * ang)
    return out if out.ndim else complex(out)


def wave_exponents(xi, m: float, h0: float):
    """Decay exponents (chi, alpha, beta) at transform variable xi for
    normalized speed m.  Principal square roots (Re ≥ 0)."""
    xi = np.asarray(xi, dtype=complex)
    x2 = xi * xi
    chi = np.sqrt(1.0 + 2.0 * (1.0 - h0 * h0) * (m * m) * x2 + (h0 * m) ** 4 * x2 * x2)
    base = 1.0 + (1.0 - (h0 * m) ** 2) * x2
    alpha = np.sqrt(base + chi)
    beta = np.sqrt(base - chi)
    return chi, alpha, beta


@dataclass(frozen=True)
class KernelParams:
    """Sub-Rayleigh parameter point (m, eta, h0) of the crack symbol."""

    m: float
    eta: float
    h0: float

    def __post_init__(self):
        if self.m < 0:
            raise DomainError(f"m must be nonnegative, got {self.m}")
        if self.m >= 1.0:
            raise RegimeError(f"sub-Rayleigh regime requires m < 1, got {self.m}")
        if self.h0 > 0 and 1.0 - 2.0 * (self.h0 * self.m) ** 2 < 0.0:
            raise RegimeError(
                f"1 - 2 h0^2 m^2 < 0 at m={self.m}, h0={self.h0}"
            )
        if self.upsilon <= 0.0:
            raise RegimeError(
                f"upsilon({self.eta}, {self.h0}, {self.m}) = {self.upsilon:g} <= 0: "
                "super-Rayleigh point"
            )

    @cached_property
    def upsilon(self) -> float:
        return _upsilon(self.eta, self.h0, self.m)

    @cached_property
    def nu(self) -> float:
        return math.sqrt(1.0 - self.m * self.m)

    @cached_property
    def u(self) -> float:
        return math.sqrt(max(1.0 - 2.0 * (self.h0 * self.m) ** 2, 0.0))

    @cached_property
    def zeta(self) -> float:
        return _zeta(self.eta, self.h0, self.m)


@dataclass(frozen=True)
class KernelValues:
    chi: complex
    alpha: complex
    beta: complex
    psi: complex
    k: complex


def _psi(xi, params: KernelParams):
    return params.upsilon * np.asarray(xi, dtype=complex) ** 2 + 2.0 * params.nu


def kernel_eval(xi, params: KernelParams, pole_tol: float = 1e-10) -> KernelValues:
    """Symbol pieces (chi, alpha, beta, Psi, k) at complex xi.

    Off the real axis the |xi| normalization is continued as
    sqrt_plus(xi)·sqrt_minus(xi).  Evaluation at the poles ±i·zeta of 1/Psi
    raises PoleError.
    """
    z = complex(xi)
    chi, alpha, beta = wave_exponents(z, params.m, params.h0)
    psi = complex(_psi(z, params))
    if abs(psi) < pole_tol * 2.0 * params.nu:
        raise PoleError(f"xi={z} is at a zero of Psi (pole of the inversion integrand)")
    if z == 0.0:
        k = 1.0 + 0.0j
    else:
        num = alpha * beta * (alpha**2 + beta**2 + 2.0 * params.eta * z * z)
        num = num + alpha**2 * beta**2 - params.eta**2 * z**4
        norm = sqrt_plus(z) * sqrt_minus(z)
        k = num / (norm * psi * (alpha + beta))
    return KernelValues(chi=complex(chi), alpha=complex(alpha), beta=complex(beta),
                        psi=psi, k=complex(k))


# ---------------------------------------------------------------------------
# Cauchy-integral factorization of an even, positive, index-zero kernel.
# ---------------------------------------------------------------------------

def _quarter_decade_edges(lo: float, hi: float) -> np.ndarray:
    n = max(2, int(math.ceil(4.0 * math.log10(hi / lo))) + 1)
    return np.geomspace(lo, hi, n)


class CauchyFactorization:
    """Multiplicative factorization k = k⁻/k⁺ of an even, real, positive
    kernel on the real line with k(0) = k(∞) = 1.

    Parameters
    ----------
    k_line : callable
        Vectorized kernel on the real axis (called with |t| ≥ 0).
    xi_hi : float
        Upper end of the cached boundary-phase grid.
    t_cut : float
        Truncation of the Cauchy integrals (analytic tail beyond, using the
        fitted large-t coefficient of log k ~ c2/t²).
    """

    def __init__(self, k_line, xi_hi: float = 4.0e3, t_cut: float | None = None,
                 knots_per_decade: int = 48):
        self._k_line = k_line
        self.xi_hi = float(xi_hi)
        self.t_cut = float(t_cut if t_cut is not None else 40.0 * xi_hi)
        if self.t_cut < 10.0 * self.xi_hi:
            raise ValueError("t_cut must exceed 10·xi_hi")
        self._xi_lo = 1e-6
        self._c2 = self._fit_tail_coeff()
        self._build_theta_spline(knots_per_decade)

    # -- real-axis kernel -----------------------------------------------
    def k_real(self, xi):
        out = self._k_line(np.abs(np.asarray(xi, dtype=float)))
        return out

    def log_k(self, t):
        return np.log(self.k_real(t))

    def _fit_tail_coeff(self) -> float:
        T = self.t_cut
        a = self.log_k(0.5 * T) * (0.5 * T) ** 2
        b = self.log_k(T) * T**2
        return float((4.0 * b - a) / 3.0)

    # -- boundary phase ---------------------------------------------------
    def _theta_tail(self, xi: np.ndarray) -> np.ndarray:
        """Closed-form t > t_cut contribution to the PV integral, using
        log k ≈ c2/t².

        The combination Q − 1/T with Q = artanh(xi/T)/xi cancels to
        O((xi/T)²/T); it is evaluated by series for small xi/T since the
        c2/xi² prefactor amplifies rounding in the naive log form.
        """
        T = self.t_cut
        r = xi / T
        r2 = r * r
        small = r < 1e-4
        with np.errstate(divide="ignore", invalid="ignore"):
            q_exact = np.arctanh(np.clip(r, None, 1.0 - 1e-12)) / xi
            d_exact = q_exact - 1.0 / T
        q_series = (1.0 + r2 / 3.0 + r2 * r2 / 5.0) / T
        d_series = (r2 / 3.0 + r2 * r2 / 5.0) / T
        q = np.where(small, q_series, q_exact)
        d = np.where(small, d_series, d_exact)
        return (self._c2 / xi**2) * d - self.log_k(xi) * q

    def _theta_grid(self, knots: np.ndarray) -> np.ndarray:
        """theta at many xi simultaneously: PV fold with the plain part
        removed, theta = (xi/π) ∫₀^∞ (L(t) − L(xi))/(t² − xi²) dt."""
        edges = np.concatenate([[0.0, 1e-3], _quarter_decade_edges(1e-3, self.t_cut)[1:]])
        x, w = _gauss(16)
        mid = 0.5 * (edges[1:] + edges[:-1])
        half = 0.5 * (edges[1:] - edges[:-1])
        t = (mid[:, None] + half[:, None] * x[None, :]).ravel()
        wt = (half[:, None] * w[None, :]).ravel()
        Lt = self.log_k(t)
        Lx = self.log_k(knots)
        denom = t[None, :] ** 2 - knots[:, None] ** 2
        num = Lt[None, :] - Lx[:, None]
        # Knots and Gauss nodes never coincide by construction; guard anyway.
        tiny = np.abs(denom) < 1e-300
        if np.any(tiny):
            denom = np.where(tiny, 1.0, denom)
            num = np.where(tiny, 0.0, num)
        integral = (num / denom) @ wt
        return knots / np.pi * (integral + self._theta_tail(knots))

    def _build_theta_spline(self, knots_per_decade: int):
        decades = math.log10(self.xi_hi / self._xi_lo)
        n = max(2, int(math.ceil(knots_per_decade * decades)))
        knots = np.geomspace(self._xi_lo, self.xi_hi, n)
        vals = self._theta_grid(knots)
        # The shared-node grid quadrature cannot resolve the removable
        # t = xi structure for knots far below its panel scale; recompute
        # those with the per-point clustered rule.
        crossover = 2e-3
        for i in np.nonzero(knots < crossover)[0]:
            vals[i] = self.theta_exact(knots[i])
        self._theta_spline = CubicSpline(np.log(knots), vals)
        self._theta_lo_slope = vals[0] / knots[0]

    def theta(self, xi):
        """Boundary phase (odd in xi); cached-spline fast path."""
        x = np.asarray(xi, dtype=float)
        ax = np.abs(x)
        out = np.empty_like(ax)
        small = ax < self._xi_lo
        big = ax > self.xi_hi
        mid = ~(small | big)
        out[small] = self._theta_lo_slope * ax[small]
        if np.any(big):
            # theta decays ~ 1/xi beyond the grid.
            edge = float(self._theta_spline(np.log(self.xi_hi)))
            out[big] = edge * self.xi_hi / ax[big]
        out[mid] = self._theta_spline(np.log(ax[mid]))
        out = np.copysign(1.0, x) * out
        return out if out.ndim else float(out)

    def theta_exact(self, xi: float) -> float:
        """Boundary phase by heavily refined panel quadrature (reference path,
        independent of the cached spline)."""
        x = abs(float(xi))
        if x == 0.0:
            return 0.0
        Lx = float(self.log_k(x))
        T = self.t_cut

        # Panels clustered toward t = x; the window |t−x| < delta, where the
        # subtracted integrand cancels catastrophically in floating point, is
        # handled by its Taylor value L'(x)/(2x).
        delta = 1e-4 * x
        lo, hi = x / math.sqrt(10.0), min(x * math.sqrt(10.0), T)
        base = np.concatenate([[0.0, min(1e-3, 0.5 * lo)],
                               _quarter_decade_edges(min(1e-3, 0.5 * lo), T)[1:]])
        keep = base[(base < lo) | (base > hi)]
        left = x - np.geomspace(x - lo, delta, 18)
        right = x + np.geomspace(delta, hi - x, 18)
        edges = np.unique(np.concatenate([keep, [lo, hi], left, right]))
        edges = edges[(edges >= 0.0) & (edges <= T)]

        xg, wg = _gauss(16)
        mid = 0.5 * (edges[1:] + edges[:-1])
        half = 0.5 * (edges[1:] - edges[:-1])
        inside = np.abs(mid - x) < delta
        t = (mid[~inside][:, None] + half[~inside][:, None] * xg[None, :]).ravel()
        wt = (half[~inside][:, None] * wg[None, :]).ravel()
        val = float(np.sum((self.log_k(t) - Lx) / (t * t - x * x) * wt))

        h = 1e-5 * x
        lprime = float(self.log_k(x + h) - self.log_k(x - h)) / (2.0 * h)
        val += lprime / (2.0 * x) * 2.0 * delta
        val += float(self._theta_tail(np.array([x]))[0])
        theta = x / math.pi * val
        return theta if xi >= 0 else -theta

    # -- off-axis Cauchy integral ----------------------------------------
    def _cauchy_nodes(self, z: complex, T: float):
        """Panel nodes/weights on [0, T] for ∫ L(t)(1/(t−z) − 1/(t+z))dt,
        clustered geometrically around |Re z| when the integrand peaks there."""
        x = abs(z.real)
        y = abs(z.imag)
        base = np.concatenate([[0.0, 1e-3], _quarter_decade_edges(1e-3, T)[1:]])
        if x > max(4.0 * y, 1e-5) and x < T / 3.0:
            lo, hi = x / math.sqrt(10.0), x * math.sqrt(10.0)
            keep = (base < lo) | (base > hi)
            delta = 0.5 * max(y, 1e-8 * max(x, 1.0))
            left = x - np.geomspace(x - lo, delta, 12)
            right = x + np.geomspace(delta, hi - x, 12)
            cluster = np.concatenate([[lo], left, right, [hi]])
            edges = np.unique(np.concatenate([base[keep], cluster]))
        else:
            edges = base
        xg, wg = _gauss(12)
        mid = 0.5 * (edges[1:] + edges[:-1])
        half = 0.5 * (edges[1:] - edges[:-1])
        t = (mid[:, None] + half[:, None] * xg[None, :]).ravel()
        wt = (half[:, None] * wg[None, :]).ravel()
        return t, wt

    def cauchy_integral(self, z: complex) -> complex:
        """E(z) = ∫_R log k(t)/(t − z) dt for z off the real axis.

        Integrated directly on [0, T] with T = max(t_cut, 4|z|); beyond T the
        kernel's log ≈ c2/t² tail is added in closed form.
        """
        z = complex(z)
        if z.imag == 0.0:
            raise DomainError("cauchy_integral requires Im z != 0")
        T = max(self.t_cut, 4.0 * abs(z))
        t, wt = self._cauchy_nodes(z, T)
        L = self.log_k(t)
        val = complex(np.sum(L * wt * (1.0 / (t - z) - 1.0 / (t + z))))
        # ∫_T^∞ (c2/t²)(1/(t−z) − 1/(t+z)) dt = −(c2/z²)(ln((T−z)/(T+z)) + 2z/T),
        # evaluated through the stable artanh form (the log cancels to O((z/T)³)).
        w = z / T
        if abs(w) < 1e-4:
            series = w**3 / 3.0 + w**5 / 5.0
        else:
            series = np.arctanh(w) - w
        val += 2.0 * self._c2 / (z * z) * series
        return val

    # -- factors -----------------------------------------------------------
    def k_plus(self, z):
        """Upper factor; analytic and zero-free for Im z > 0, boundary value
        from above on the real axis, k⁺(∞) = 1."""
        z = complex(z)
        if z.imag < 0.0:
            raise DomainError("k_plus is defined for Im z >= 0")
        if z.imag == 0.0:
            x = z.real
            if x == 0.0:
                return 1.0 + 0.0j
            return complex(np.exp(1j * self.theta_exact(x)) / math.sqrt(float(self.k_real(x))))
        return complex(np.exp(-self.cauchy_integral(z) / (2j * np.pi)))

    def k_minus(self, z):
        """Lower factor; analytic and zero-free for Im z < 0, k⁻(∞) = 1."""
        z = complex(z)
        if z.imag > 0.0:
            raise DomainError("k_minus is defined for Im z <= 0")
        if z.imag == 0.0:
            x = z.real
            if x == 0.0:
                return 1.0 + 0.0j
            return complex(np.exp(1j * self.theta_exact(x)) * math.sqrt(float(self.k_real(x))))
        return complex(np.exp(-self.cauchy_integral(z) / (2j * np.pi)))

    # Fast vectorized boundary values from the cached phase (fields path).
    def k_plus_line(self, xi):
        return np.exp(1j * self.theta(xi)) / np.sqrt(self.k_real(xi))

    def k_minus_line(self, xi):
        return np.exp(1j * self.theta(xi)) * np.sqrt(self.k_real(xi))


class FactorizedKernel(CauchyFactorization):
    """Factorization of the physical crack symbol at a sub-Rayleigh point."""

    def __init__(self, params: KernelParams, tol: float = 1e-10):
        self.params = params
        self.tol = tol
        xi_hi = max(4.0e3, 60.0 * params.zeta)
        super().__init__(self._symbol_line, xi_hi=xi_hi, knots_per_decade=96)
        self._validate_positive()

    def _symbol_line(self, t):
        """Normalized symbol on the real axis (vectorized, t ≥ 0)."""
        p = self.params
        t = np.asarray(t, dtype=float)
        t2 = t * t
        chi = np.sqrt(1.0 + 2.0 * (1.0 - p.h0**2) * p.m**2 * t2 + (p.h0 * p.m) ** 4 * t2 * t2)
        base = 1.0 + (1.0 - (p.h0 * p.m) ** 2) * t2
        alpha = np.sqrt(base + chi)
        # base − chi = (2(1−m²) + t²(1−2h0²m²)) t² / (base + chi) ≥ 0, computed
        # in the cancellation-free form.
        b2 = (2.0 * (1.0 - p.m**2) + t2 * p.u**2) * t2 / (base + chi)
        beta = np.sqrt(b2)
        psi = p.upsilon * t2 + 2.0 * p.nu
        num = alpha * beta * (alpha * alpha + b2 + 2.0 * p.eta * t2)
        num = num + alpha * alpha * b2 - p.eta**2 * t2 * t2
        with np.errstate(divide="ignore", invalid="ignore"):
            k = num / (t * psi * (alpha + beta))
        k = np.where(t < 1e-140, 1.0, k)
        return k

    def _validate_positive(self):
        sample = np.concatenate([[0.0], np.geomspace(1e-6, self.xi_hi, 1500)])
        vals = self.k_real(sample)
        if not np.all(np.isfinite(vals)) or np.min(vals) <= 0.0:
            raise RegimeError(
                f"symbol not positive on the real axis at params {self.params}; "
                "factorization requires the sub-Rayleigh regime"
            )


def factorize(params: KernelParams, tol: float = 1e-10) -> FactorizedKernel:
    """Build evaluable half-plane factors (k⁺, k⁻) of the crack symbol."""
    return FactorizedKernel(params, tol=tol)
