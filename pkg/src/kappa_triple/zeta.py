"""Summability: kernels, Hilbert-Schmidt norms, the zeta integral ``c(s)`` and its residue."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Callable, Mapping, Sequence

import numpy as np

from .algebra import (
    PartialFourierFunction,
    interpolation_matrix,
    l2_norm,
    modular_flow,
    unitary_U,
    weight_omega,
)
from .operators import MomentumSymbol
from .quadrature import integrate
from .special import gamma_fn, gauss_2f1_half

__all__ = [
    "QuadratureSettings",
    "ZetaParams",
    "ZetaReport",
    "PoleProximityWarning",
    "WindowWarning",
    "zeta_symbol",
    "c_closed_form",
    "c_quadrature",
    "analytic_residue",
    "neville_extrapolate",
    "residue_of_c",
    "phi_residue",
    "SchwartzKernel",
    "schwartz_kernel",
    "zeta_kernel_trace",
    "gs_norm_truncated",
    "hs_norm_factorized",
]

FOUR_PI_INV = 1.0 / (4.0 * math.pi)


class PoleProximityWarning(RuntimeWarning):
    pass


class WindowWarning(RuntimeWarning):
    pass


@dataclass(frozen=True)
class QuadratureSettings:
    rtol: float = 1e-11
    tail_tol: float = 1e-12  # relative size of the neglected tail corrections
    max_panels: int = 20000


@dataclass(frozen=True)
class ZetaParams:
    lam: float
    mu: float = 1.0
    s: float = 3.0
    quadrature: QuadratureSettings = field(default_factory=QuadratureSettings)

    def __post_init__(self):
        if not self.lam > 0:
            raise ValueError("lambda must be positive")
        if not self.mu > 0:
            raise ValueError("mu must be positive")


@dataclass
class ZetaReport:
    c_closed: float = float("nan")
    c_quadrature: float = float("nan")
    relative_gap: float = float("nan")
    residue_estimates: list[tuple[float, float]] = field(default_factory=list)
    extrapolated_residue: float = float("nan")
    analytic_residue: float = float("nan")
    phi_residue_per_function: dict[str, tuple[float, float, float]] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "c_closed": self.c_closed,
            "c_quadrature": self.c_quadrature,
            "relative_gap": self.relative_gap,
            "residue_estimates": [list(x) for x in self.residue_estimates],
            "extrapolated_residue": self.extrapolated_residue,
            "analytic_residue": self.analytic_residue,
            "phi_residue_per_function": {k: list(v) for k, v in self.phi_residue_per_function.items()},
        }


def _A(xi0, lam: float, mu: float):
    return (np.expm1(-lam * np.asarray(xi0, float)) / lam) ** 2 + mu**2


def zeta_symbol(lam: float, mu: float, s: float) -> MomentumSymbol:
    """``exp(-lam p0) (lam^-2 (1 - exp(-lam p0))^2 + p1^2 + mu^2)^(-s/2)``."""
    return MomentumSymbol(
        lambda p0, p1: np.exp(-lam * p0) * (_A(p0, lam, mu) + np.asarray(p1) ** 2) ** (-s / 2),
        "G_s^Delta",
    )


# --------------------------------------------------------------------------
# c(s)
# --------------------------------------------------------------------------


def c_closed_form(params: ZetaParams) -> float:
    s, lam, mu = params.s, params.lam, params.mu
    if s <= 2:
        raise ValueError("c(s) is finite only for s > 2")
    if s - 2 < 1e-6:
        warnings.warn(f"s - 2 = {s - 2:.1e} is close to the Gamma pole", PoleProximityWarning, stacklevel=2)
    lm = lam * mu
    g = lambda x: gamma_fn(x).real
    bracket = lm * math.sqrt(math.pi) / 2 * g(s / 2 - 1) / g((s - 1) / 2) + gauss_2f1_half((s - 1) / 2, -1 / lm**2)
    pref = math.sqrt(math.pi) / (2 * math.pi) ** 2 * g((s - 1) / 2) / g(s / 2)
    return pref * lam ** (s - 2) * lm ** (1 - s) * bracket


def _angular_factor(s: float, rtol: float) -> float:
    """``int (1 + t^2)^(-s/2) dt`` over the line, via ``t = tan(theta)``."""
    e = s - 2.0
    return integrate(lambda th: np.cos(th) ** e, -math.pi / 2, math.pi / 2, rtol=rtol).value


def c_quadrature(params: ZetaParams) -> float:
    """``c(s)`` by direct quadrature, independent of the closed form.

    After ``xi1 = sqrt(A) tan(theta)`` the integrand factorises into an
    angular integral and ``exp(-lam xi0) A(xi0)^((1-s)/2)``. The ``xi0``
    window is cut where the known exponential asymptotics make the remainder
    computable in closed form to relative accuracy ``tail_tol``.
    """
    s, lam, mu = params.s, params.lam, params.mu
    q = params.quadrature
    if s <= 2:
        raise ValueError("c(s) is finite only for s > 2")
    ang = _angular_factor(s, q.rtol)

    def F(xi0):
        return np.exp(-lam * xi0) * _A(xi0, lam, mu) ** ((1 - s) / 2)

    # beyond the window, A differs from its limit by relative O(exp(-lam |xi0|))
    W = 2 * math.log(1 / q.tail_tol) / lam  # safety factor 2
    W_minus = W + math.log(max(1.0, lam * mu)) / lam
    pieces = [-W_minus, -1.0 / lam, 0.0, 1.0 / lam, W]
    core = 0.0
    for a, b in zip(pieces[:-1], pieces[1:]):
        core += integrate(F, a, b, rtol=q.rtol, max_panels=q.max_panels).value
    tail_plus = float(F(W)) / lam  # F ~ const * exp(-lam xi0)
    tail_minus = float(F(-W_minus)) / ((s - 2) * lam)  # F ~ const * exp((s-2) lam xi0)
    return float(ang * (core + tail_plus + tail_minus) / (2 * math.pi) ** 2)


def analytic_residue(lam: float, mu: float) -> float:
    """``lim (s-2) c(s)`` from the Laurent expansion ``Gamma(s/2-1) = 2/(s-2) + O(1)``.

    The hypergeometric term stays finite and drops out; what remains is
    evaluated with the module's Gamma function rather than simplified.
    """
    g = lambda x: gamma_fn(x).real
    pref = math.sqrt(math.pi) / (2 * math.pi) ** 2 * g(0.5) / g(1.0)
    # at s = 2 the powers of lam and lam*mu cancel against the bracket
    return pref * math.sqrt(math.pi) / 2 * 2 / g(0.5)


def neville_extrapolate(xs: Sequence[float], ys: Sequence[float], x0: float = 0.0) -> float:
    """Value at ``x0`` of the interpolating polynomial through ``(xs, ys)``."""
    if len(xs) < 3:
        raise ValueError("extrapolation needs at least three samples")
    p = list(map(float, ys))
    x = list(map(float, xs))
    n = len(x)
    for k in range(1, n):
        for i in range(n - k):
            p[i] = ((x0 - x[i + k]) * p[i] + (x[i] - x0) * p[i + 1]) / (x[i] - x[i + k])
    return p[0]


def residue_of_c(lam: float, mu: float = 1.0, epsilons: Sequence[float] = (1e-2, 1e-3, 1e-4)):
    """Samples ``(eps, eps * c(2 + eps))`` and their extrapolation to ``eps = 0``."""
    samples = []
    for e in epsilons:
        samples.append((float(e), e * c_closed_form(ZetaParams(lam, mu, 2 + e))))
    value = neville_extrapolate([e for e, _ in samples], [v for _, v in samples])
    return samples, value


def phi_residue(
    f: PartialFourierFunction | Mapping[str, PartialFourierFunction],
    params: ZetaParams,
    epsilons: Sequence[float] = (1e-2, 1e-3, 1e-4),
) -> ZetaReport:
    """Residue at ``s = 2`` of ``Phi(pi(f) (D^2 + mu^2)^(-s/2))``.

    The weight factorises into ``2 * omega(sigma_{-i} f) * c(s)``, the 2 being
    the spinor dimension. Each fixture gets ``(extrapolated value, omega(f),
    value / (omega(f)/2pi))``.
    """
    fixtures = {"f": f} if isinstance(f, PartialFourierFunction) else dict(f)
    report = ZetaReport()
    report.c_closed = c_closed_form(params)
    report.c_quadrature = c_quadrature(params)
    report.relative_gap = abs(report.c_quadrature - report.c_closed) / abs(report.c_closed)
    report.residue_estimates, report.extrapolated_residue = residue_of_c(params.lam, params.mu, epsilons)
    report.analytic_residue = analytic_residue(params.lam, params.mu)
    cs = {e: c_closed_form(ZetaParams(params.lam, params.mu, 2 + e)) for e in epsilons}
    for name, fx in fixtures.items():
        om = weight_omega(fx)
        om_twisted = weight_omega(modular_flow(-1j, fx))
        vals = [e * 2 * om_twisted * cs[e] for e in epsilons]
        re = neville_extrapolate(list(epsilons), [v.real for v in vals])
        im = neville_extrapolate(list(epsilons), [v.imag for v in vals])
        value = complex(re, im)
        target = om / (2 * math.pi)
        ratio = value / target if target != 0 else float("nan")
        report.phi_residue_per_function[name] = (value, om, ratio)
    return report


# --------------------------------------------------------------------------
# Schwartz kernel
# --------------------------------------------------------------------------


class SchwartzKernel:
    """Kernel of ``pi(f) g(P)`` on the GNS space, realised in L2 through ``U``."""

    def __init__(self, f: PartialFourierFunction, g: MomentumSymbol, window: tuple[float, float] = (40.0, 40.0),
                 nodes: tuple[int, int] = (400, 400), tail_tol: float = 1e-3):
        self.f = f
        self.g = g
        self.grid = f.grid
        self.window = window
        self.nodes = nodes
        self.tail_tol = tail_tol
        self._check_window()

    def _check_window(self) -> None:
        P0, P1 = self.window
        inner = np.abs(self.g(np.linspace(-P0, P0, 81)[:, None], np.linspace(-P1, P1, 81)[None, :]))
        edge = max(np.max(inner[0]), np.max(inner[-1]), np.max(inner[:, 0]), np.max(inner[:, -1]))
        peak = np.max(inner)
        self.tail_ratio = float(edge / peak) if peak > 0 else 0.0
        if self.tail_ratio > self.tail_tol:
            warnings.warn(f"symbol {self.g.name} is {self.tail_ratio:.1e} of its peak on the window edge",
                          WindowWarning, stacklevel=3)

    def Uf_at(self, x0: float, z: np.ndarray) -> np.ndarray:
        """Position-space ``(Uf)(x0, z)`` at arbitrary ``z``."""
        grid = self.grid
        z = np.asarray(z, float)
        out = np.zeros(z.shape, complex)
        vals = self.f.values
        for r in self.f.support_rows():
            q = grid.p0[r]
            M = interpolation_matrix(grid, np.exp(grid.lam * q) * z.ravel())
            out += (np.exp(1j * q * x0) * (M @ vals[r])).reshape(z.shape)
        return out * grid.dp / (2 * math.pi)

    def __call__(self, x: Sequence[float], y: Sequence[float]) -> complex:
        lam = self.grid.lam
        P0, P1 = self.window
        n0, n1 = self.nodes
        t0, w0 = np.polynomial.legendre.leggauss(n0)
        t1, w1 = np.polynomial.legendre.leggauss(n1)
        p0, w0 = P0 * t0, P0 * w0
        p1, w1 = P1 * t1, P1 * w1
        uf = self.Uf_at(x[0], np.exp(lam * p0) * x[1])
        sym = self.g(p0[:, None], np.exp(-lam * p0)[:, None] * p1[None, :])
        phase0 = np.exp(1j * p0 * (x[0] - y[0]))
        phase1 = np.exp(1j * p1 * (x[1] - y[1]))
        total = np.einsum("i,i,i,ij,j,j->", w0, phase0, uf, sym, w1, phase1)
        return complex(total / (2 * math.pi) ** 2)

    def diagonal_trace(self, p1_integral: Callable[[float], float], w_minus: float, w_plus: float,
                       rtol: float = 1e-8) -> complex:
        """``int K(x, x) d^2x``.

        ``x0`` is integrated first (this returns the ``p0 = 0`` row of ``Uf``,
        which equals that of ``f``); then, for each ``p0``, the ``x1``
        integral of the rescaled row, weighted by
        ``p1_integral(p0) = int g(p0, exp(-lam p0) p1) dp1 / (2pi)^2``.
        """
        grid = self.grid
        lam = grid.lam
        row = self.f.values[grid.zero_index]
        L = grid.x1_max

        def x1_integral(p0: float) -> complex:
            scale = math.exp(lam * p0)
            half = L / scale
            fn = lambda x1: interpolation_matrix(grid, scale * x1) @ row
            return integrate(fn, -half, half, rtol=rtol, breakpoints=[0.0]).value

        def outer(p0s):
            return np.array([x1_integral(p) * p1_integral(p) for p in np.atleast_1d(p0s)])

        res = integrate(outer, -w_minus, w_plus, rtol=rtol, breakpoints=[0.0])
        return complex(res.value)


def schwartz_kernel(f: PartialFourierFunction, s: MomentumSymbol, **kwargs) -> SchwartzKernel:
    return SchwartzKernel(f, s, **kwargs)


def zeta_kernel_trace(f: PartialFourierFunction, params: ZetaParams, rtol: float = 1e-8) -> tuple[complex, complex]:
    """Diagonal kernel trace of ``pi(f) G_s^Delta(P)`` and the factorised ``omega(f) c(s)``."""
    lam, mu, s = params.lam, params.mu, params.s
    if abs(f.grid.lam - lam) > 1e-15:
        raise ValueError("fixture grid and zeta parameters disagree on lambda")
    kern = SchwartzKernel(f, zeta_symbol(lam, mu, s), tail_tol=float("inf"))
    ang = _angular_factor(s, 1e-12)

    def p1_integral(p0: float) -> float:
        # int g(p0, e^{-lam p0} p1) dp1 = e^{lam p0} int g(p0, xi1) dxi1
        return float(ang * _A(p0, lam, mu) ** ((1 - s) / 2)) / (2 * math.pi) ** 2

    tail = 2 * math.log(1e12) / lam
    trace = kern.diagonal_trace(p1_integral, tail / (s - 2), tail, rtol=rtol)
    return trace, weight_omega(f) * c_closed_form(params)


# --------------------------------------------------------------------------
# Non-summability
# --------------------------------------------------------------------------


def gs_norm_truncated(s: float, lam: float, P: float, p1_cutoff: float | None = None, rtol: float = 1e-10) -> float:
    """``int_{|p0| <= P} int (lam^-2 (1-e^{-lam p0})^2 + p1^2 + 1)^(-s/2) dp1 dp0``.

    The ``p1`` integral diverges for ``s <= 1``; there it is cut at
    ``|p1| <= p1_cutoff`` (default 100).
    """
    if s <= 0:
        raise ValueError("s must be positive")
    if s <= 1 and p1_cutoff is None:
        p1_cutoff = 100.0

    def B(p0):
        p0 = np.asarray(p0, float)
        if lam == 0:
            return p0**2
        return (np.expm1(-lam * p0) / lam) ** 2

    if p1_cutoff is None:
        ang = _angular_factor(s, 1e-12)
        inner = lambda p0: ang * (B(p0) + 1) ** ((1 - s) / 2)
    else:
        Q = p1_cutoff

        def inner(p0s):
            out = []
            for b in np.atleast_1d(B(p0s)):
                fn = lambda p1: (b + 1 + p1**2) ** (-s / 2)
                out.append(2 * integrate(fn, 0.0, Q, rtol=rtol * 0.1, breakpoints=[1.0, 10.0]).value)
            return np.array(out)

    cuts = sorted({-P, 0.0, P} | {c for c in (-10.0, 10.0) if -P < c < P})
    total = 0.0
    for a, b in zip(cuts[:-1], cuts[1:]):
        total += integrate(inner, a, b, rtol=rtol).value
    return float(total)


def hs_norm_factorized(
    f: PartialFourierFunction,
    s: float,
    cutoffs: tuple[float, float] = (200.0, 400.0),
    threshold: float = 1.5,
) -> tuple[float, bool, float]:
    """``(||Uf||^2, divergent?, doubling ratio)`` for ``pi(f)(D^2+1)^(-s/4)``.

    The Hilbert-Schmidt norm squared is ``2/(2pi)^2 ||Uf||^2 ||G_s||^2``;
    only the second factor can diverge. A doubling ratio ``I(2P)/I(P)`` near
    2 means linear growth in the cutoff.
    """
    lam = f.grid.lam
    I1 = gs_norm_truncated(s, lam, cutoffs[0])
    I2 = gs_norm_truncated(s, lam, cutoffs[1])
    ratio = I2 / I1
    return l2_norm(unitary_U(f)) ** 2, bool(ratio > threshold), ratio
