import json
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kappa_triple import hopf as H
from kappa_triple.suites import random_hopf_element

LAM_INV = H.LaurentScalar.lam(-1)


def mono(i=0, j=0, k=0):
    return H.HopfElement.monomial(i, j, k)


@st.composite
def elements(draw, max_degree=3):
    acc = H.HopfElement()
    for _ in range(draw(st.integers(1, 4))):
        d = draw(st.integers(0, max_degree))
        i = draw(st.integers(0, d))
        k = draw(st.integers(-2, 2))
        c = H.LaurentScalar({draw(st.integers(-1, 1)): Fraction(draw(st.integers(-6, 6)), draw(st.integers(1, 5)))})
        acc = acc + H.HopfElement({H.Monomial(i, d - i, k): c})
    return acc


def test_laurent_scalar_arithmetic():
    a = H.LaurentScalar({-1: 2, 0: Fraction(1, 2)})
    b = H.LaurentScalar.lam(1, 3)
    assert a * b == H.LaurentScalar({0: 6, 1: Fraction(3, 2)})
    assert a - a == H.LaurentScalar()
    assert not H.LaurentScalar({2: 0})
    assert str(H.LaurentScalar.lam(-1)) == "λ^-1"


def test_coproduct_on_generators():
    assert H.coproduct(H.P0) == H.TensorElement.pure(H.P0, H.ONE) + H.TensorElement.pure(H.ONE, H.P0)
    assert H.coproduct(H.P1) == H.TensorElement.pure(H.P1, H.ONE) + H.TensorElement.pure(H.E, H.P1)
    assert H.coproduct(H.E) == H.TensorElement.pure(H.E, H.E)
    assert H.coproduct(H.E_INV) == H.TensorElement.pure(H.E_INV, H.E_INV)


def test_coproduct_of_square_has_binomial_weights():
    expected = (H.TensorElement.pure(H.P1 * H.P1, H.ONE) + H.TensorElement.pure(H.E * H.P1, H.P1) * 2
                + H.TensorElement.pure(H.E * H.E, H.P1 * H.P1))
    assert H.coproduct(H.P1 * H.P1) == expected


def test_antipode_and_counit_values():
    assert H.antipode(H.P0) == -H.P0
    assert H.antipode(H.P1) == -(H.E_INV * H.P1)
    assert H.antipode(H.E) == H.E_INV
    assert H.antipode(mono(2, 1, 1)) == -mono(2, 1, -2)
    assert H.counit(H.E * 3 + H.P0) == H.LaurentScalar.coerce(3)


def test_random_elements_satisfy_axioms():
    rng = random.Random(0)
    assert all(H.hopf_axioms_check(random_hopf_element(rng)) for _ in range(100))


def test_axiom_check_rejects_a_wrong_coproduct(monkeypatch):
    orig = H._monomial_coproduct

    def untwisted(m):
        # drop the E-twist on the left leg: breaks the antipode law for P1
        return {(H.Monomial(a.i, a.j, m.k), b): n for (a, b), n in orig(m).items()}

    monkeypatch.setattr(H, "_monomial_coproduct", untwisted)
    assert not H.hopf_axioms_check(H.P1)


@settings(max_examples=60, deadline=None)
@given(elements(), elements())
def test_structure_maps_are_morphisms(a, b):
    assert H.coproduct(a * b) == H.coproduct(a) * H.coproduct(b)
    assert H.counit(a * b) == H.counit(a) * H.counit(b)
    assert H.antipode(a * b) == H.antipode(a) * H.antipode(b)  # commutative algebra
    assert H.antipode(H.antipode(a)) == a
    assert H.hopf_axioms_check(a)


@pytest.mark.parametrize(
    "m, expected",
    [(-2, ["1", "E^-2"]), (-1, ["1", "E^-1"]), (0, ["1", "P0"]), (1, ["1", "E", "P1"]), (2, ["1", "E^2"]), (3, ["1", "E^3"])],
)
@pytest.mark.parametrize("degree", [1, 2, 3, 4])
def test_twisted_primitive_classification(m, expected, degree):
    assert [str(b) for b in H.classify_twisted_primitives(m, degree, 3)] == expected


def test_classification_window_reaches_e_to_the_m():
    assert [str(b) for b in H.classify_twisted_primitives(5, 2, 1)] == ["1", "E^5"]


def test_classification_rejects_bad_window():
    with pytest.raises(ValueError):
        H.classify_twisted_primitives(1, 0, 3)
    with pytest.raises(ValueError):
        H.classify_twisted_primitives(1, 2, -1)


def test_twisted_commutator_symbol():
    d0 = (H.ONE - H.E) * LAM_INV
    assert H.twisted_commutator_symbol(d0, 1) == d0
    assert H.twisted_commutator_symbol(H.P1, 1) == H.P1
    assert H.twisted_commutator_symbol(H.P0, 0) == H.P0
    with pytest.raises(H.ShapeViolationError):
        H.twisted_commutator_symbol(H.P0 * H.P0, 0)
    with pytest.raises(H.ShapeViolationError):
        H.twisted_commutator_symbol(H.P1, 0)


def test_dirac_solution_is_unique():
    sol = H.solve_dirac_uniqueness()
    assert sol.D0 == (H.ONE - H.E) * LAM_INV
    assert sol.D1 == H.P1
    assert sol.sigma == H.E
    assert str(sol.D0) == "(1/λ)(1 - E)"
    text = "\n".join(sol.ledger)
    for m in (-3, -2, -1, 0, 2, 3):
        assert f"m={m}: eliminated" in text
    assert "m=1: D0: coefficient of P1 forced to 0" in text
    assert "m=1: unique survivor" in text


def test_dirac_solver_detects_missing_twist():
    with pytest.raises(H.InconsistencyError):
        H.solve_dirac_uniqueness(m_window=[-1, 0, 2])


def test_json_round_trip():
    a = (H.ONE - H.E) * LAM_INV + mono(1, 2, -1) * H.LaurentScalar({0: Fraction(-3, 7), 2: 1})
    data = json.loads(H.dumps(a))
    assert H.element_from_json(data) == a
    t = H.coproduct(a)
    assert H.tensor_from_json(H.tensor_to_json(t)) == t
    assert {"i", "j", "k", "coeff"} <= set(data[0])
