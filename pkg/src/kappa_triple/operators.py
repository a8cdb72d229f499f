"""Operators on ``H_r (x) C^2``: Clifford data, momentum multipliers, the Dirac operator."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .algebra import (
    GridSpec,
    PartialFourierFunction,
    _check_grids,
    act_generator,
    inner_product,
    star_product,
)
from .family import bump

__all__ = [
    "GAMMA0",
    "GAMMA1",
    "CHI",
    "IDENTITY2",
    "clifford_defects",
    "Spinor",
    "MomentumSymbol",
    "apply_multiplier",
    "d0_symbol",
    "d1_symbol",
    "dirac_apply",
    "chi_apply",
    "left_multiply",
    "casimir_symbol",
    "equivariant_dirac_symbols",
    "twisted_commutator_apply",
    "commutator_apply",
    "twisted_commutator_factorized",
    "WitnessResult",
    "witness_spinors",
    "unboundedness_witness",
]

GAMMA0 = np.array([[0, 1], [1, 0]], dtype=complex)
GAMMA1 = np.array([[0, -1j], [1j, 0]], dtype=complex)
CHI = np.array([[1, 0], [0, -1]], dtype=complex)
IDENTITY2 = np.eye(2, dtype=complex)


def clifford_defects() -> dict[str, float]:
    g = (GAMMA0, GAMMA1)
    out = {}
    for m in range(2):
        for n in range(2):
            anti = g[m] @ g[n] + g[n] @ g[m]
            out[f"{{G{m},G{n}}}"] = float(np.max(np.abs(anti - 2 * (m == n) * IDENTITY2)))
    out["chi=-iG0G1"] = float(np.max(np.abs(CHI + 1j * GAMMA0 @ GAMMA1)))
    out["chi^2=1"] = float(np.max(np.abs(CHI @ CHI - IDENTITY2)))
    for m in range(2):
        out[f"{{chi,G{m}}}"] = float(np.max(np.abs(CHI @ g[m] + g[m] @ CHI)))
    return out


@dataclass(frozen=True, eq=False)
class Spinor:
    psi1: PartialFourierFunction
    psi2: PartialFourierFunction

    def __post_init__(self):
        _check_grids(self.psi1, self.psi2)

    @property
    def grid(self) -> GridSpec:
        return self.psi1.grid

    @classmethod
    def zeros(cls, grid: GridSpec) -> "Spinor":
        z = PartialFourierFunction.zeros(grid)
        return cls(z, z)

    def components(self) -> tuple[PartialFourierFunction, PartialFourierFunction]:
        return self.psi1, self.psi2

    def __add__(self, other: "Spinor") -> "Spinor":
        return Spinor(self.psi1 + other.psi1, self.psi2 + other.psi2)

    def __sub__(self, other: "Spinor") -> "Spinor":
        return Spinor(self.psi1 - other.psi1, self.psi2 - other.psi2)

    def __mul__(self, c) -> "Spinor":
        return Spinor(self.psi1 * c, self.psi2 * c)

    __rmul__ = __mul__

    def matrix(self, m: np.ndarray) -> "Spinor":
        """Apply a constant 2x2 matrix."""
        a, b = self.psi1, self.psi2
        return Spinor(a * m[0, 0] + b * m[0, 1], a * m[1, 0] + b * m[1, 1])

    def inner(self, other: "Spinor") -> complex:
        return inner_product(self.psi1, other.psi1) + inner_product(self.psi2, other.psi2)

    def norm(self) -> float:
        return float(np.sqrt(max(self.inner(self).real, 0.0)))


@dataclass(eq=False)
class MomentumSymbol:
    """Multiplier symbol ``g(p0, p1)``; ``p1`` is the spectral variable of ``-i d/dx1``."""

    evaluator: Callable[[np.ndarray, np.ndarray], np.ndarray]
    name: str = "g"
    _cache: dict = field(default_factory=dict, repr=False)

    def __call__(self, p0, p1):
        return self.evaluator(p0, p1)

    def samples(self, grid: GridSpec) -> np.ndarray:
        """Values on ``p0 x k1`` (FFT order); the Nyquist column is the average of ``+-k``."""
        key = (grid.p0_max, grid.n_p0, grid.x1_max, grid.n_x1)
        if key not in self._cache:
            p0 = grid.p0[:, None]
            k = grid.k1[None, :]
            vals = np.asarray(self.evaluator(p0, k) * np.ones((1, 1)), dtype=complex)
            vals = np.broadcast_to(vals, (grid.n_p0, grid.n_x1)).copy()
            ny = grid.n_x1 // 2
            kn = abs(grid.k1[ny])
            vals[:, ny] = 0.5 * (self.evaluator(grid.p0, kn) + self.evaluator(grid.p0, -kn))
            if not np.all(np.isfinite(vals)):
                raise ValueError(f"symbol {self.name} is not finite on the grid")
            vals.setflags(write=False)
            self._cache[key] = vals
        return self._cache[key]


def apply_multiplier(s: MomentumSymbol, f: PartialFourierFunction) -> PartialFourierFunction:
    """``s(P0, P1) f`` with ``P1`` diagonalised by the x1 FFT."""
    vals = s.samples(f.grid)
    spec = np.fft.fft(f.values, axis=1) * vals
    return PartialFourierFunction(f.grid, np.fft.ifft(spec, axis=1))


def _d0(lam: float):
    if lam == 0:
        return lambda p0, p1: p0 + 0 * p1
    return lambda p0, p1: -np.expm1(-lam * p0) / lam + 0 * p1


def d0_symbol(lam: float) -> MomentumSymbol:
    """``(1 - exp(-lam p0))/lam``; ``p0`` at ``lam = 0``."""
    return MomentumSymbol(_d0(lam), "D0")


def d1_symbol(lam: float = 0.0) -> MomentumSymbol:
    return MomentumSymbol(lambda p0, p1: p1 + 0 * p0, "D1")


def _dirac_from_parts(d0psi: Spinor, d1psi: Spinor) -> Spinor:
    # Gamma^0 (a, b) = (b, a);  Gamma^1 (a, b) = (-i b, i a)
    return Spinor(
        d0psi.psi2 + d1psi.psi2 * (-1j),
        d0psi.psi1 + d1psi.psi1 * 1j,
    )


def dirac_apply(psi: Spinor, lam: float | None = None) -> Spinor:
    """``D = Gamma^0 D0 + Gamma^1 D1`` with the grid's ``lambda`` unless overridden."""
    lam = psi.grid.lam if lam is None else lam
    s0, s1 = d0_symbol(lam), d1_symbol(lam)
    d0psi = Spinor(apply_multiplier(s0, psi.psi1), apply_multiplier(s0, psi.psi2))
    d1psi = Spinor(apply_multiplier(s1, psi.psi1), apply_multiplier(s1, psi.psi2))
    return _dirac_from_parts(d0psi, d1psi)


def chi_apply(psi: Spinor) -> Spinor:
    return Spinor(psi.psi1, -psi.psi2)


def left_multiply(f: PartialFourierFunction, psi: Spinor) -> Spinor:
    """``pi(f) psi``, componentwise star product."""
    return Spinor(star_product(f, psi.psi1), star_product(f, psi.psi2))


def casimir_symbol(lam: float) -> MomentumSymbol:
    if lam == 0:
        return MomentumSymbol(lambda p0, p1: p0**2 + p1**2, "C")
    return MomentumSymbol(
        lambda p0, p1: 4 / lam**2 * np.sinh(lam * p0 / 2) ** 2 + np.exp(lam * p0) * p1**2,
        "C",
    )


def equivariant_dirac_symbols(lam: float) -> tuple[MomentumSymbol, MomentumSymbol]:
    """Component symbols of the equivariant Dirac operator, ``E`` read as ``exp(-lam p0)``."""
    if lam == 0:
        return (MomentumSymbol(lambda p0, p1: p0 + 0 * p1, "D0eq"),
                MomentumSymbol(lambda p0, p1: p1 + 0 * p0, "D1eq"))
    return (
        MomentumSymbol(lambda p0, p1: np.sinh(lam * p0) / lam - 0.5 * lam * np.exp(lam * p0) * p1**2, "D0eq"),
        MomentumSymbol(lambda p0, p1: np.exp(lam * p0) * p1, "D1eq"),
    )


def twisted_commutator_apply(f: PartialFourierFunction, psi: Spinor) -> Spinor:
    """``D pi(f) psi - pi(E f) D psi``."""
    return dirac_apply(left_multiply(f, psi)) - left_multiply(act_generator("E", f), dirac_apply(psi))


def commutator_apply(f: PartialFourierFunction, psi: Spinor) -> Spinor:
    """Untwisted ``D pi(f) psi - pi(f) D psi``."""
    return dirac_apply(left_multiply(f, psi)) - left_multiply(f, dirac_apply(psi))


def twisted_commutator_factorized(f: PartialFourierFunction, psi: Spinor) -> Spinor:
    """``Gamma^mu pi(D_mu f) psi``: the bounded operator the twisted commutator should equal."""
    lam = f.grid.lam
    d0f = apply_multiplier(d0_symbol(lam), f)
    d1f = act_generator("P1", f)
    return _dirac_from_parts(left_multiply(d0f, psi), left_multiply(d1f, psi))


@dataclass
class WitnessResult:
    frequencies: list[float]
    untwisted: list[float]
    twisted: list[float]
    growth_exponent: float
    twisted_spread: float

    @property
    def untwisted_growth(self) -> float:
        return self.untwisted[-1] / self.untwisted[0]


def witness_spinors(base: PartialFourierFunction, k: float) -> Spinor:
    """Spinor whose ``U``-image is ``base``'s ``U``-image modulated by ``exp(i k x1)``.

    In the L2 picture ``pi(f)`` is a fixed operator independent of the
    modulation, so the twisted commutator ratio is flat in ``k``.
    """
    grid = base.grid
    y = grid.x1[None, :]
    phase = np.exp(1j * k * np.exp(-grid.lam * grid.p0)[:, None] * y)
    comp = PartialFourierFunction(grid, base.values * phase)
    return Spinor(comp, comp * 1j)


def unboundedness_witness(
    f: PartialFourierFunction,
    frequencies,
    base: PartialFourierFunction | None = None,
) -> WitnessResult:
    """Ratios ``||[D, pi(f)] psi_k|| / ||psi_k||`` (untwisted and twisted) on a frequency ladder."""
    freqs = [float(k) for k in frequencies]
    if any(b <= a for a, b in zip(freqs, freqs[1:])):
        raise ValueError("frequencies must be increasing")
    if base is None:
        grid = f.grid
        p = grid.p0[:, None]
        x = grid.x1[None, :]
        base = PartialFourierFunction(grid, bump(p / 0.3) * np.exp(-0.5 * x**2))
    untw, tw = [], []
    for k in freqs:
        psi = witness_spinors(base, k)
        n = psi.norm()
        untw.append(commutator_apply(f, psi).norm() / n)
        tw.append(twisted_commutator_apply(f, psi).norm() / n)
    slope = float(np.polyfit(np.log(freqs), np.log(untw), 1)[0]) if len(freqs) > 1 else float("nan")
    return WitnessResult(freqs, untw, tw, slope, max(tw) / min(tw))

