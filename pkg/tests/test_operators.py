import numpy as np
import pytest

from kappa_triple.algebra import GridSpec, PartialFourierFunction, act_generator, l2_norm
from kappa_triple.family import Profile
from kappa_triple.operators import (
    CHI,
    GAMMA0,
    GAMMA1,
    MomentumSymbol,
    Spinor,
    apply_multiplier,
    casimir_symbol,
    chi_apply,
    clifford_defects,
    commutator_apply,
    d0_symbol,
    d1_symbol,
    dirac_apply,
    equivariant_dirac_symbols,
    twisted_commutator_apply,
    twisted_commutator_factorized,
    unboundedness_witness,
)


def snorm(psi):
    return float(np.hypot(l2_norm(psi.psi1), l2_norm(psi.psi2)))


@pytest.fixture(scope="module")
def spinors(fixtures):
    f, a, b, c = fixtures
    return Spinor(a, b), Spinor(c, f)


def test_clifford_algebra():
    assert max(clifford_defects().values()) == 0.0
    assert np.array_equal(CHI, -1j * GAMMA0 @ GAMMA1)


@pytest.mark.parametrize("lam", [0.1, 0.5, 1.0, 2.0])
def test_symbol_identities(lam):
    p0 = np.linspace(-4, 4, 81)[:, None]
    p1 = np.linspace(-30, 30, 61)[None, :]
    C = casimir_symbol(lam)(p0, p1)
    lhs = d0_symbol(lam)(p0, p1) ** 2 + d1_symbol(lam)(p0, p1) ** 2
    assert np.max(np.abs(lhs - np.exp(-lam * p0) * C) / np.abs(np.exp(-lam * p0) * C + 1e-300)) < 1e-12
    e0, e1 = equivariant_dirac_symbols(lam)
    lhs = e0(p0, p1) ** 2 + e1(p0, p1) ** 2
    rhs = C + lam**2 * C**2 / 4
    assert np.max(np.abs(lhs - rhs) / np.maximum(np.abs(rhs), 1e-300)) < 1e-12


def test_casimir_is_invariant_under_the_twisted_antipode():
    # C(S(p)) = C(p): S(P0) = -P0, S(P1) = -E^-1 P1
    lam = 0.7
    p0 = np.linspace(-3, 3, 31)[:, None]
    p1 = np.linspace(-5, 5, 21)[None, :]
    C = casimir_symbol(lam)
    assert np.allclose(C(-p0, -np.exp(lam * p0) * p1), C(p0, p1), rtol=1e-13, atol=0)


def test_classical_limits():
    p = np.array([-2.0, 0.3, 1.7])
    q = np.array([0.5, -1.0, 3.0])
    assert np.allclose(d0_symbol(1e-8)(p, q), p, atol=1e-7)
    assert np.allclose(casimir_symbol(1e-8)(p, q), p**2 + q**2, atol=1e-6)
    assert np.array_equal(d0_symbol(0.0)(p, q), p)


def test_multipliers_on_the_grid(grid):
    f = Profile(hermite=1, kappa=0.3).sample(grid)
    e = MomentumSymbol(lambda p0, p1: np.exp(-grid.lam * p0) + 0 * p1)
    assert l2_norm(apply_multiplier(e, f) - act_generator("E", f)) < 1e-12 * l2_norm(f)
    p1 = MomentumSymbol(lambda p0, p1: p1 + 0 * p0)
    assert l2_norm(apply_multiplier(p1, f) - act_generator("P1", f)) < 1e-10 * l2_norm(f)
    bad = MomentumSymbol(lambda p0, p1: 1 / (p0 + 0 * p1))
    with np.errstate(divide="ignore"), pytest.raises(ValueError):
        apply_multiplier(bad, f)


def test_dirac_is_symmetric_and_odd(spinors):
    phi, psi = spinors
    lhs, rhs = phi.inner(dirac_apply(psi)), dirac_apply(phi).inner(psi)
    assert abs(lhs - rhs) < 1e-8 * abs(lhs)
    assert snorm(chi_apply(dirac_apply(psi)) + dirac_apply(chi_apply(psi))) == 0.0


def test_dirac_square_is_twisted_casimir(spinors, grid):
    _, psi = spinors
    dd = dirac_apply(dirac_apply(psi))
    C = MomentumSymbol(lambda p0, p1: np.exp(-grid.lam * p0) * casimir_symbol(grid.lam)(p0, p1))
    want = Spinor(apply_multiplier(C, psi.psi1), apply_multiplier(C, psi.psi2))
    assert snorm(dd - want) < 1e-10 * snorm(want)


def test_twisted_commutator_factorizes(fixtures, spinors):
    _, psi = spinors
    for f in fixtures:
        lhs = twisted_commutator_apply(f, psi)
        rhs = twisted_commutator_factorized(f, psi)
        assert snorm(lhs - rhs) <= 1e-6 * snorm(rhs)


def test_untwisted_commutator_factorizes_only_at_lambda_zero(fixtures, spinors):
    f = fixtures[0]
    _, psi = spinors
    assert snorm(commutator_apply(f, psi) - twisted_commutator_factorized(f, psi)) > 1e-3 * snorm(psi)
    g0 = GridSpec(lam=0.0)
    f0 = PartialFourierFunction(g0, f.values)
    psi0 = Spinor(PartialFourierFunction(g0, psi.psi1.values), PartialFourierFunction(g0, psi.psi2.values))
    lhs, rhs = commutator_apply(f0, psi0), twisted_commutator_factorized(f0, psi0)
    assert snorm(lhs - rhs) < 1e-10 * snorm(rhs)


@pytest.fixture(scope="module")
def witness_grid():
    return GridSpec(lam=0.5, n_p0=128, x1_max=12.0, n_x1=512)


def test_unboundedness_witness(witness_grid):
    f = Profile(center=1.0, width=0.3, sigma=1.5).sample(witness_grid)
    base = Profile(width=0.3, sigma=1.0).sample(witness_grid)
    res = unboundedness_witness(f, [4.0, 8.0, 16.0, 40.0], base=base)
    assert res.untwisted_growth >= 5.0
    assert res.growth_exponent > 0.8
    assert res.twisted_spread <= 1.5


def test_witness_is_flat_classically(witness_grid):
    g0 = witness_grid.with_lambda(0.0)
    f = Profile(center=1.0, width=0.3, sigma=1.5).sample(g0)
    base = Profile(width=0.3, sigma=1.0).sample(g0)
    res = unboundedness_witness(f, [4.0, 8.0, 16.0, 40.0], base=base)
    assert max(res.untwisted) / min(res.untwisted) < 1.5


def test_witness_rejects_unsorted_ladder(witness_grid):
    f = Profile().sample(witness_grid)
    with pytest.raises(ValueError):
        unboundedness_witness(f, [8.0, 4.0])
