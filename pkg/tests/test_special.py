import math

import numpy as np
import pytest
from scipy import special as sp

from kappa_triple.special import EULER_GAMMA, ConvergenceError, PoleError, gamma_fn, gauss_2f1_half


def test_gamma_against_oracle(oracles):
    for x, v in oracles["gamma"]:
        assert gamma_fn(x).real == pytest.approx(v, rel=1e-13)


@pytest.mark.parametrize("x", [0.1, 0.5, 1.0, 2.5, 7.3, 20.0, -0.3, -2.7])
def test_gamma_matches_math(x):
    assert gamma_fn(x).real == pytest.approx(math.gamma(x), rel=1e-13)


def test_gamma_complex_reflection():
    z = 0.3 + 1.2j
    assert abs(gamma_fn(z) * gamma_fn(1 - z) - np.pi / np.sin(np.pi * z)) < 1e-12


def test_gamma_poles():
    for n in (0, -1, -4):
        with pytest.raises(PoleError):
            gamma_fn(n)


def test_gamma_laurent_expansion_near_zero():
    c2 = EULER_GAMMA**2 / 2 + math.pi**2 / 12
    for e in (1e-3, 1e-4):
        assert (gamma_fn(e).real - 1 / e + EULER_GAMMA) / e == pytest.approx(c2, abs=2 * e)


def test_2f1_against_oracle(oracles):
    for b, z, v in oracles["hyp2f1_half"]:
        assert gauss_2f1_half(b, z) == pytest.approx(v, rel=1e-11)


@pytest.mark.parametrize("b", [0.75, 1.0, 1.5, 2.5])
@pytest.mark.parametrize("z", [-0.01, -0.5, -0.99, -1.0, -3.0, -1e3])
def test_2f1_matches_scipy(b, z):
    assert gauss_2f1_half(b, z) == pytest.approx(sp.hyp2f1(0.5, b, 1.5, z), rel=1e-11)


def test_2f1_closed_forms():
    assert gauss_2f1_half(1.0, -1.0) == pytest.approx(math.pi / 4, rel=1e-13)
    assert gauss_2f1_half(0.5, -1.0) == pytest.approx(math.asinh(1.0), rel=1e-13)
    assert gauss_2f1_half(0.3, 0.0) == 1.0


def test_2f1_domain_and_budget():
    with pytest.raises(ValueError):
        gauss_2f1_half(1.0, 0.5)
    with pytest.raises(ConvergenceError):
        gauss_2f1_half(1.0, -0.999999, max_terms=5)
