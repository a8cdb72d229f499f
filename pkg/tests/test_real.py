import numpy as np
import pytest

from kappa_triple.algebra import GridSpec, act_generator, inner_product, involution, l2_norm, star_product
from kappa_triple.family import TestFunctionFamily
from kappa_triple.operators import Spinor, d0_symbol, d1_symbol, dirac_apply
from kappa_triple.real import KOTable, conjugated_symbol, j_real, j_tilde, real_structure_suite


def snorm(psi):
    return float(np.hypot(l2_norm(psi.psi1), l2_norm(psi.psi2)))


@pytest.fixture(scope="module", params=[0.0, 0.3, 1.0], ids=lambda v: f"lam={v}")
def setup(request):
    grid = GridSpec(lam=request.param, n_x1=512)
    f, g, a, b = TestFunctionFamily(grid, seed=0).sample(4)
    return grid, f, g, Spinor(a, b)


def test_all_conditions_hold(setup):
    _, f, g, psi = setup
    results = real_structure_suite(f, g, psi)
    assert len(results) == 9
    failed = [(r.name, r.defect) for r in results if not r.passed]
    assert not failed


def test_j_tilde_is_an_antiunitary_involution(setup):
    _, f, g, _ = setup
    assert l2_norm(j_tilde(j_tilde(f)) - f) < 1e-10 * l2_norm(f)
    assert inner_product(j_tilde(f), j_tilde(g)) == pytest.approx(inner_product(g, f), rel=1e-10)
    assert l2_norm(j_tilde(f * 2j) - j_tilde(f) * -2j) < 1e-14 * l2_norm(f)


def test_right_action_is_a_right_module(setup):
    _, f, g, psi = setup
    # J~ pi(a*) J~ J~ pi(b*) J~ = J~ pi((ba)*) J~
    def right(a, v):
        return j_tilde(star_product(involution(a), j_tilde(v)))

    v = psi.psi1
    lhs = right(g, right(f, v))
    rhs = right(star_product(f, g), v)
    assert l2_norm(lhs - rhs) < 1e-8 * l2_norm(rhs)


def test_j_real_square_and_dirac_relation(setup):
    grid, _, _, psi = setup
    assert snorm(j_real(j_real(psi)) - psi) < 1e-10 * snorm(psi)
    jd = j_real(dirac_apply(psi))
    dj = dirac_apply(j_real(psi))
    modular = Spinor(act_generator("E_inverse", dj.psi1), act_generator("E_inverse", dj.psi2))
    assert snorm(jd + modular) < 1e-10 * snorm(jd)
    if grid.lam > 0:
        # the undeformed relation JD = -DJ fails once lambda > 0
        assert snorm(jd + dj) > 1e-3 * snorm(jd)


def test_conjugated_symbols_at_machine_precision():
    p0 = np.linspace(-4, 4, 65)[:, None]
    p1 = np.linspace(-20, 20, 41)[None, :]
    for lam in (0.3, 1.0):
        for m in (d0_symbol(lam), d1_symbol(lam)):
            lhs = conjugated_symbol(m, lam)(p0, p1)
            rhs = -np.exp(lam * p0) * m(p0, p1)
            assert np.max(np.abs(lhs - rhs)) <= 4e-16 * np.max(np.abs(rhs))


def test_ko_table_constants():
    ko = KOTable()
    assert [ko.eps(n) for n in range(8)] == [1, 1, -1, -1, -1, -1, 1, 1]
    assert [ko.eps_prime(n) for n in range(8)] == [1, -1, 1, 1, 1, -1, 1, 1]
    assert ko.eps(10) == ko.eps(2)


def test_classical_real_structure_signs():
    grid = GridSpec(lam=0.0)
    a, b = TestFunctionFamily(grid, seed=5).sample(2)
    psi = Spinor(a, b)
    jj = j_real(j_real(psi))
    assert snorm(jj - psi) < 1e-12 * snorm(psi)  # J^2 = +1
    jd, dj = j_real(dirac_apply(psi)), dirac_apply(j_real(psi))
    assert snorm(jd + dj) < 1e-12 * snorm(jd)  # JD = -DJ
