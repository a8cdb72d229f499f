"""Real structure: ``J~ f = sigma_{i/2}(f*)`` and ``J = i Gamma^0 J~``."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .algebra import (
    GridSpec,
    PartialFourierFunction,
    act_generator,
    involution,
    l2_norm,
    modular_flow,
    star_product,
)
from .operators import (
    MomentumSymbol,
    Spinor,
    chi_apply,
    d0_symbol,
    d1_symbol,
    dirac_apply,
    left_multiply,
    twisted_commutator_apply,
)

__all__ = [
    "KOTable",
    "j_tilde",
    "j_real",
    "conjugated_symbol",
    "ConditionResult",
    "real_structure_suite",
]


@dataclass(frozen=True)
class KOTable:
    """Sign tables indexed by ``n mod 8``: ``J^2 = eps``, ``JD = eps' DJ``."""

    epsilon: tuple[int, ...] = (1, 1, -1, -1, -1, -1, 1, 1)
    epsilon_prime: tuple[int, ...] = (1, -1, 1, 1, 1, -1, 1, 1)

    def eps(self, n: int) -> int:
        return self.epsilon[n % 8]

    def eps_prime(self, n: int) -> int:
        return self.epsilon_prime[n % 8]


def j_tilde(f: PartialFourierFunction) -> PartialFourierFunction:
    """``phi(p, x) -> exp(lam p/2) conj(phi(-p, exp(-lam p) x))``; antilinear."""
    return modular_flow(0.5j, involution(f))


def j_real(psi: Spinor) -> Spinor:
    """``(J psi)_1 = -i J~ psi_2``, ``(J psi)_2 = -i J~ psi_1``."""
    return Spinor(j_tilde(psi.psi2) * (-1j), j_tilde(psi.psi1) * (-1j))


def conjugated_symbol(m: MomentumSymbol, lam: float) -> MomentumSymbol:
    """Symbol of ``J~ m(P) J~``: ``conj(m(-p0, -exp(lam p0) p1))``."""
    return MomentumSymbol(lambda p0, p1: np.conj(m(-p0, -np.exp(lam * p0) * p1)), f"J~{m.name}J~")


@dataclass
class ConditionResult:
    name: str
    anchor: str
    defect: float
    tolerance: float
    passed: bool = field(init=False)

    def __post_init__(self):
        self.defect = float(self.defect)
        self.passed = bool(self.defect <= self.tolerance)


def _rel(diff: Spinor | PartialFourierFunction, ref_norm: float) -> float:
    if isinstance(diff, Spinor):
        n = np.hypot(l2_norm(diff.psi1), l2_norm(diff.psi2))
    else:
        n = l2_norm(diff)
    return n / ref_norm if ref_norm > 0 else n


def _snorm(psi: Spinor) -> float:
    return float(np.hypot(l2_norm(psi.psi1), l2_norm(psi.psi2)))


def _inv_modular(psi: Spinor) -> Spinor:
    return Spinor(act_generator("E_inverse", psi.psi1), act_generator("E_inverse", psi.psi2))


def real_structure_suite(
    f: PartialFourierFunction,
    g: PartialFourierFunction,
    psi: Spinor,
    tol: float = 1e-6,
    symbol_tol: float = 1e-13,
) -> list[ConditionResult]:
    """Defects of the five deformed real-structure conditions, plus supporting identities.

    Defects are l2 norms relative to the size of the terms being compared.
    """
    grid: GridSpec = f.grid
    lam = grid.lam
    out: list[ConditionResult] = []

    jpsi = j_real(psi)
    out.append(ConditionResult("J^2 = 1", "J^2 = 1", _rel(j_real(jpsi) - psi, _snorm(psi)), tol))

    jd = j_real(dirac_apply(psi))
    djd = _inv_modular(dirac_apply(jpsi))
    out.append(ConditionResult(
        "JD = -Delta^-1 DJ", "JD = -Δ⁻¹DJ", _rel(jd + djd, max(_snorm(jd), _snorm(djd))), tol))

    # right action by g: J pi(g*) J^{-1} (J^{-1} = J)
    def right_g(v: Spinor) -> Spinor:
        return j_real(left_multiply(involution(g), j_real(v)))

    lhs = left_multiply(f, right_g(psi))
    rhs = right_g(left_multiply(f, psi))
    out.append(ConditionResult(
        "[pi(f), J pi(g*) J^-1] = 0", "[π(f), Jπ(g*)J⁻¹] = 0", _rel(lhs - rhs, max(_snorm(lhs), _snorm(rhs))), tol))

    sg = modular_flow(0.5j, g)
    for comp, v in (("1", psi.psi1), ("2", psi.psi2)):
        a = j_tilde(star_product(involution(g), j_tilde(v)))
        b = star_product(v, sg)
        out.append(ConditionResult(
            f"J~ pi(g*) J~ psi_{comp} = psi_{comp} sigma_(i/2)(g)", "J̃π(g*)J̃ψ = ψ⋆σ_{i/2}(g)",
            _rel(a - b, max(_rel(a, 1.0), _rel(b, 1.0))), tol))

    a = j_real(chi_apply(psi))
    b = chi_apply(jpsi)
    out.append(ConditionResult("J chi = -chi J", "Jχ = −χJ", _rel(a + b, _snorm(a)), tol))

    def right_plain(v: Spinor) -> Spinor:
        return j_real(left_multiply(g, j_real(v)))

    lhs = twisted_commutator_apply(f, right_plain(psi))
    rhs = right_plain(twisted_commutator_apply(f, psi))
    out.append(ConditionResult(
        "[[D, pi(f)]_sigma, J pi(g) J^-1] = 0", "[[D,π(f)]_σ, Jπ(g)J⁻¹] = 0",
        _rel(lhs - rhs, max(_snorm(lhs), _snorm(rhs))), tol))

    # J~ rho(P1) J~ = -rho(E^-1) rho(P1), applied to a vector
    v = psi.psi1
    a = j_tilde(act_generator("P1", j_tilde(v)))
    b = -act_generator("E_inverse", act_generator("P1", v))
    out.append(ConditionResult("J~ P1 J~ = -E^-1 P1", "J̃ρ(P₁)J̃ = ρ(S(P₁)*)", _rel(a - b, _rel(b, 1.0)), tol))

    # multiplier level: symbol of J~ D_mu J~ equals -exp(lam p0) times that of D_mu
    p0 = grid.p0[:, None]
    k = grid.k1[None, :]
    worst = 0.0
    for m in (d0_symbol(lam), d1_symbol(lam)):
        lhs_s = conjugated_symbol(m, lam)(p0, k)
        rhs_s = -np.exp(lam * p0) * m(p0, k)
        scale = np.maximum(np.abs(rhs_s), np.finfo(float).tiny)
        worst = max(worst, float(np.max(np.abs(lhs_s - rhs_s) / scale)))
    out.append(ConditionResult("symbol J~ D_mu J~ = -e^(lam p0) D_mu", "J̃D̂_μJ̃ = −Δ⁻¹D̂_μ", worst, symbol_tol))
    return out
