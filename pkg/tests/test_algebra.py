import numpy as np
import pytest

from kappa_triple.algebra import (
    DecayError,
    GridMismatchError,
    GridSpec,
    PartialFourierFunction,
    SupportOverflowError,
    act_generator,
    from_json,
    inner_product,
    interpolation_matrix,
    involution,
    kms_defect,
    l2_norm,
    modular_flow,
    star_product,
    to_json,
    unitary_U,
    unitary_U_inverse,
    weight_of_star,
    weight_omega,
)
from kappa_triple.family import Profile, TestFunctionFamily


def rel(a, b):
    return l2_norm(a - b) / l2_norm(b)


def test_grid_layout():
    g = GridSpec(p0_max=2.0, n_p0=16, x1_max=5.0, n_x1=32, lam=0.25)
    assert g.p0[g.zero_index] == 0.0
    assert g.p0[0] == -2.0 and g.dp == 0.25
    assert g.x1[0] == -5.0 and g.dx == pytest.approx(10 / 32)
    assert g.lambda_p0_max == 0.5
    assert GridSpec.from_dict(g.to_dict()) == g
    for bad in (dict(n_p0=7), dict(n_x1=6), dict(p0_max=0.0), dict(lam=-1.0), dict(interp="linear")):
        with pytest.raises(ValueError):
            GridSpec(**bad)


def test_star_product_matches_integral_oracle(oracles):
    spec = oracles["star_product"]
    f = Profile(1.0, 0.1, 0.5, 0.3, 1.0, 0, 0.2)
    g = Profile(0.5 + 0.5j, -0.2, 0.4, -0.5, 1.3, 1, 0.0)
    grid = GridSpec(lam=spec["lambda"], n_p0=1024, x1_max=20.0, n_x1=256)
    h = star_product(f.sample(grid), g.sample(grid))
    for q, x, re, im in spec["values"]:
        row = int(np.argmin(np.abs(grid.p0 - q)))
        assert grid.p0[row] == pytest.approx(q, abs=1e-12)
        val = (interpolation_matrix(grid, np.array([x])) @ h.values[row])[0]
        assert abs(val - complex(re, im)) <= 1e-9


def test_associativity(fixtures):
    f, g, h = fixtures[:3]
    a = star_product(star_product(f, g), h)
    b = star_product(f, star_product(g, h))
    assert l2_norm(a - b) <= 1e-6 * l2_norm(f) * l2_norm(g) * l2_norm(h)


def test_classical_limit_is_first_order():
    f = Profile(center=0.1, width=0.5, x_center=0.3, kappa=0.2)
    g = Profile(amp=0.5 + 0.5j, center=-0.2, width=0.4, x_center=-0.5, sigma=1.3, hermite=1)
    defects = []
    for lam in (0.1, 0.01):
        gl, g0 = GridSpec(lam=lam), GridSpec(lam=0.0)
        classical = star_product(f.sample(g0), g.sample(g0)).values
        defects.append(l2_norm(star_product(f.sample(gl), g.sample(gl)) - PartialFourierFunction(gl, classical)))
    assert defects[0] / defects[1] == pytest.approx(10, rel=0.2)


def test_lambda_zero_product_is_pointwise_in_position_space():
    grid = GridSpec(lam=0.0, n_p0=512)
    f = Profile(center=0.2, width=0.5, x_center=0.5)
    g = Profile(amp=1j, center=-0.1, width=0.6, sigma=1.4, hermite=1)
    h = star_product(f.sample(grid), g.sample(grid))
    for x0 in (0.0, 1.3):
        got = h.position_values([x0])[0]
        want = f.position(x0, grid.x1) * g.position(x0, grid.x1)
        assert np.max(np.abs(got - want)) < 1e-8


def test_support_overflow_and_grid_mismatch():
    grid = GridSpec(lam=0.5, p0_max=1.0, n_p0=64)
    wide = Profile(center=0.6, width=0.35).sample(grid)
    with pytest.raises(SupportOverflowError):
        star_product(wide, wide)
    with pytest.raises(GridMismatchError):
        star_product(wide, Profile().sample(GridSpec(lam=0.3)))


def test_involution_is_antimultiplicative(fixtures):
    f, g = fixtures[:2]
    assert rel(involution(star_product(f, g)), star_product(involution(g), involution(f))) < 1e-10
    assert rel(involution(involution(f)), f) < 1e-12


def test_weight_and_inner_product(fixtures):
    f, g = fixtures[:2]
    assert weight_of_star(f, g) == pytest.approx(weight_omega(star_product(f, g)), abs=1e-14)
    ip = inner_product(f, f)
    assert ip.real > 0 and abs(ip.imag) < 1e-14 * ip.real
    assert inner_product(f, g) == pytest.approx(np.conj(inner_product(g, f)), rel=1e-12)
    # omega(f g*) is the plain L2 pairing
    direct = np.sum(f.values * np.conj(g.values)) * f.grid.dp * f.grid.dx / (2 * np.pi)
    assert weight_of_star(f, involution(g)) == pytest.approx(direct, rel=1e-10)


def test_kms_condition(fixtures):
    for f in fixtures:
        for g in fixtures:
            assert kms_defect(f, g) <= 1e-8
    f, g = fixtures[:2]
    # without the twist the weight is not a trace
    assert abs(weight_of_star(f, g) - weight_of_star(g, f)) > 1e-4


def test_kms_strip_boundary(fixtures):
    f, g = fixtures[:2]
    for t in (-0.4, 0.7):
        lhs = weight_of_star(f, modular_flow(t + 1j, g))
        rhs = weight_of_star(modular_flow(t, g), f)
        assert abs(lhs - rhs) <= 1e-10 * max(1.0, abs(lhs))


def test_modular_flow_group_law(fixtures):
    f = fixtures[0]
    assert rel(modular_flow(0.3, modular_flow(-1.1, f)), modular_flow(-0.8, f)) < 1e-14
    assert rel(modular_flow(-1j, f), act_generator("E", f)) < 1e-14
    assert rel(modular_flow(0.9, star_product(f, fixtures[1])),
               star_product(modular_flow(0.9, f), modular_flow(0.9, fixtures[1]))) < 1e-10


def test_unitary_U(fixtures):
    for f in fixtures:
        assert l2_norm(unitary_U(f)) ** 2 == pytest.approx(inner_product(f, f).real, rel=1e-8)
        assert rel(unitary_U_inverse(unitary_U(f)), f) < 1e-10
    f = fixtures[0]
    lhs = unitary_U(act_generator("P1", unitary_U_inverse(f)))
    assert rel(lhs, act_generator("E", act_generator("P1", f))) < 1e-10


def test_hopf_action_is_module_algebra(fixtures):
    f, g = fixtures[:2]
    lhs = act_generator("P1", star_product(f, g))
    rhs = star_product(act_generator("P1", f), g) + star_product(act_generator("E", f), act_generator("P1", g))
    assert rel(lhs, rhs) < 1e-10
    lhs = act_generator("P0", star_product(f, g))
    rhs = star_product(act_generator("P0", f), g) + star_product(f, act_generator("P0", g))
    assert rel(lhs, rhs) < 1e-10
    assert rel(act_generator("E_inverse", act_generator("E", f)), f) < 1e-14
    with pytest.raises(ValueError):
        act_generator("P2", f)


def test_weight_is_invariant(fixtures):
    f = fixtures[2]
    om = weight_omega(f)
    assert abs(weight_omega(act_generator("E", f)) - om) < 1e-14
    assert abs(weight_omega(act_generator("P0", f))) < 1e-14
    assert abs(weight_omega(act_generator("P1", f))) < 1e-10


def test_cubic_interpolation_is_a_coarser_alternative():
    f = Profile(center=0.1, width=0.5).sample(GridSpec(lam=0.5, interp="cubic"))
    g = Profile(amp=1j, center=-0.2, width=0.4, hermite=1).sample(GridSpec(lam=0.5, interp="cubic"))
    h = Profile(center=0.0, width=0.3, sigma=1.2).sample(GridSpec(lam=0.5, interp="cubic"))
    a = star_product(star_product(f, g), h)
    b = star_product(f, star_product(g, h))
    assert 1e-12 < rel(a, b) < 1e-2


def test_decay_check_and_json_round_trip(grid):
    f = TestFunctionFamily(grid, seed=9).sample(1)[0]
    f.check_decay()
    wide = Profile(sigma=8.0).sample(grid)
    with pytest.raises(DecayError):
        wide.check_decay()
    back = from_json(to_json(f))
    assert back.grid == f.grid and np.array_equal(back.values, f.values)
    with pytest.raises(TypeError):
        f * f
    with pytest.raises(ValueError):
        PartialFourierFunction(grid, np.zeros((3, 3)))
