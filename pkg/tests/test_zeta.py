import math
import warnings

import numpy as np
import pytest
from scipy import integrate as si

from kappa_triple.algebra import GridSpec
from kappa_triple.family import Profile, TestFunctionFamily
from kappa_triple.operators import MomentumSymbol
from kappa_triple.zeta import (
    PoleProximityWarning,
    QuadratureSettings,
    SchwartzKernel,
    WindowWarning,
    ZetaParams,
    analytic_residue,
    c_closed_form,
    c_quadrature,
    gs_norm_truncated,
    hs_norm_factorized,
    neville_extrapolate,
    phi_residue,
    residue_of_c,
    zeta_kernel_trace,
    zeta_symbol,
)

FOUR_PI_INV = 1 / (4 * math.pi)


def test_params_validation():
    with pytest.raises(ValueError):
        ZetaParams(0.0)
    with pytest.raises(ValueError):
        ZetaParams(0.5, mu=-1.0)
    with pytest.raises(ValueError):
        c_closed_form(ZetaParams(0.5, s=2.0))


def test_c_against_mpmath_oracle(oracles):
    for s, lam, mu, ref in oracles["c"]:
        p = ZetaParams(lam, mu, s)
        assert c_closed_form(p) == pytest.approx(ref, rel=1e-9)
        assert c_quadrature(p) == pytest.approx(ref, rel=1e-9)


def test_closed_form_and_quadrature_agree_on_the_lattice():
    for s in (2.5, 3.0, 4.0):
        for lam in (0.3, 1.0):
            for mu in (0.5, 1.0, 2.0):
                p = ZetaParams(lam, mu, s)
                a, b = c_closed_form(p), c_quadrature(p)
                assert abs(a - b) <= 1e-6 * abs(a)


@pytest.mark.filterwarnings("ignore::scipy.integrate.IntegrationWarning")
def test_scipy_cross_check():
    lam, mu, s = 0.5, 1.0, 3.0
    g = zeta_symbol(lam, mu, s)
    val, _ = si.dblquad(lambda x1, x0: g(x0, x1), -150, 150, -np.inf, np.inf, epsabs=1e-10, epsrel=1e-8)
    assert val / (2 * math.pi) ** 2 == pytest.approx(c_closed_form(ZetaParams(lam, mu, s)), rel=1e-5)


def test_c_is_decreasing_and_scales_with_mu():
    cs = [c_closed_form(ZetaParams(0.5, 1.0, s)) for s in (2.5, 3, 5, 10, 30)]
    assert all(b < a for a, b in zip(cs, cs[1:]))
    r_quad = c_quadrature(ZetaParams(0.4, 3.0, 3.5)) / c_quadrature(ZetaParams(0.4, 1.0, 3.5))
    r_closed = c_closed_form(ZetaParams(0.4, 3.0, 3.5)) / c_closed_form(ZetaParams(0.4, 1.0, 3.5))
    assert r_quad == pytest.approx(r_closed, rel=1e-9)


def test_pole_warning():
    with pytest.warns(PoleProximityWarning):
        c_closed_form(ZetaParams(0.5, 1.0, 2 + 1e-8))


@pytest.mark.parametrize("lam, mu", [(0.3, 0.5), (0.5, 1.0), (1.0, 2.0), (2.0, 1.0)])
def test_residue_is_universal(lam, mu):
    samples, value = residue_of_c(lam, mu, (1e-2, 1e-3, 1e-4))
    assert len(samples) == 3
    assert value == pytest.approx(FOUR_PI_INV, rel=1e-3)
    assert analytic_residue(lam, mu) == pytest.approx(FOUR_PI_INV, rel=1e-12)


def test_neville_extrapolation_of_a_polynomial():
    xs = [0.1, 0.2, 0.4]
    assert neville_extrapolate(xs, [3 - 2 * x + 5 * x * x for x in xs]) == pytest.approx(3.0, rel=1e-13)


def test_phi_residue_on_named_fixtures():
    grid = GridSpec(lam=0.5, n_p0=128)
    fixtures = {k: p.sample(grid) for k, p in TestFunctionFamily.named_fixtures().items()}
    rep = phi_residue(fixtures, ZetaParams(0.5, 1.0, 3.0))
    assert len(rep.phi_residue_per_function) >= 3
    for value, om, ratio in rep.phi_residue_per_function.values():
        assert abs(ratio - 1) <= 1e-2
    d = rep.to_dict()
    assert d["relative_gap"] <= 1e-6 and d["extrapolated_residue"] == pytest.approx(FOUR_PI_INV, rel=1e-3)


def test_phi_residue_is_linear():
    grid = GridSpec(lam=0.5, n_p0=128)
    f = Profile(hermite=1, kappa=0.4).sample(grid)
    g = Profile(amp=2j, center=0.1, width=0.3).sample(grid)
    rep = phi_residue({"f": f, "g": g, "h": f * 2 + g}, ZetaParams(0.5))
    r = rep.phi_residue_per_function
    assert r["h"][0] == pytest.approx(2 * r["f"][0] + r["g"][0], rel=1e-10)


def test_phi_residue_ratio_undefined_for_zero_weight():
    grid = GridSpec(lam=0.5, n_p0=128)
    odd = Profile(hermite=1).sample(grid)  # integrates to zero in x1
    rep = phi_residue(odd, ZetaParams(0.5))
    assert math.isnan(rep.phi_residue_per_function["f"][2].real)


def test_kernel_trace_matches_factorized_form():
    grid = GridSpec(lam=0.5, n_p0=128)
    f = TestFunctionFamily.named_fixtures()["gauss"].sample(grid)
    trace, fact = zeta_kernel_trace(f, ZetaParams(0.5, 1.0, 3.0), rtol=1e-7)
    assert abs(trace - fact) <= 1e-4 * abs(fact)


def test_kernel_pointwise_against_classical_closed_form():
    # at lambda = 0 with a Gaussian symbol: K(x, y) = f(x) exp(-|x - y|^2 / 2) / (2 pi)
    grid = GridSpec(lam=0.0, n_p0=1024)
    prof = Profile(center=0.1, width=0.5, x_center=0.2, kappa=0.3)
    sym = MomentumSymbol(lambda p0, p1: np.exp(-(p0**2 + p1**2) / 2))
    k = SchwartzKernel(prof.sample(grid), sym, window=(12.0, 12.0), nodes=(160, 160))
    for x, y in (((0.0, 0.0), (0.3, -0.2)), ((1.0, 0.5), (0.2, 1.1))):
        want = prof.position(x[0], np.array([x[1]]))[0] * math.exp(-((x[0] - y[0]) ** 2 + (x[1] - y[1]) ** 2) / 2) / (2 * math.pi)
        assert abs(k(x, y) - want) < 1e-9


def test_kernel_window_warning():
    grid = GridSpec(lam=0.5, n_p0=128)
    with pytest.warns(WindowWarning):
        SchwartzKernel(Profile().sample(grid), zeta_symbol(0.5, 1.0, 3.0), window=(5.0, 5.0))


def test_non_summability_doubling_ratios():
    for s in (1.0, 2.0, 4.0):
        r = gs_norm_truncated(s, 0.5, 400.0) / gs_norm_truncated(s, 0.5, 200.0)
        assert 1.8 <= r <= 2.2
    assert gs_norm_truncated(3.0, 0.0, 400.0) == pytest.approx(2 * math.pi, rel=1e-2)


def test_hs_norm_factorized_flags_divergence():
    grid = GridSpec(lam=0.5, n_p0=128)
    norm2, divergent, ratio = hs_norm_factorized(Profile().sample(grid), 4.0)
    assert divergent and norm2 > 0 and ratio > 1.8
    _, divergent0, _ = hs_norm_factorized(Profile().sample(grid.with_lambda(0.0)), 4.0)
    assert not divergent0


def test_quadrature_settings_are_used():
    loose = ZetaParams(0.5, 1.0, 3.0, QuadratureSettings(rtol=1e-6, tail_tol=1e-6))
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        assert c_quadrature(loose) == pytest.approx(c_closed_form(loose), rel=1e-5)
