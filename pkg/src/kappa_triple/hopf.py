"""Exact arithmetic in the extended momentum algebra.

The algebra is commutative, generated by ``P0``, ``P1`` and an invertible
group-like ``E``. Elements are finite sums of monomials ``P0^i P1^j E^k``
with coefficients that are Laurent polynomials in the deformation length
``lambda`` over the rationals. Everything here is exact: no floating point
enters the coproduct, the classification of twisted-primitive elements, or
the Dirac operator solver.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Iterable, Iterator, Mapping, Sequence

__all__ = [
    "LaurentScalar",
    "Monomial",
    "HopfElement",
    "TensorElement",
    "ShapeViolationError",
    "InconsistencyError",
    "ONE",
    "P0",
    "P1",
    "E",
    "E_INV",
    "LAM",
    "multiply",
    "coproduct",
    "counit",
    "antipode",
    "hopf_axioms_check",
    "classify_twisted_primitives",
    "twisted_commutator_symbol",
    "solve_dirac_uniqueness",
    "DiracSolution",
    "element_to_json",
    "element_from_json",
    "tensor_to_json",
    "tensor_from_json",
]


class ShapeViolationError(ValueError):
    """Coproduct is not of the form ``A' (x) 1 + E^m (x) A``."""


class InconsistencyError(RuntimeError):
    """The classical-limit constraints have no solution or more than one."""


Rational = int | Fraction


# --------------------------------------------------------------------------
# Laurent polynomials in lambda
# --------------------------------------------------------------------------


class LaurentScalar:
    """Finitely supported map ``lambda-exponent -> Fraction``.

    Stored canonically: sorted by exponent, no zero coefficients.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, Rational] | None = None):
        clean = {}
        for e, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                clean[int(e)] = c
        self._terms: tuple[tuple[int, Fraction], ...] = tuple(sorted(clean.items()))
        self._hash = hash(self._terms)

    @classmethod
    def coerce(cls, value: "LaurentScalar | Rational") -> "LaurentScalar":
        if isinstance(value, LaurentScalar):
            return value
        if isinstance(value, (int, Fraction)):
            return cls({0: value})
        raise TypeError(f"cannot coerce {type(value).__name__} to LaurentScalar")

    @classmethod
    def lam(cls, power: int = 1, coeff: Rational = 1) -> "LaurentScalar":
        return cls({power: coeff})

    @property
    def terms(self) -> dict[int, Fraction]:
        return dict(self._terms)

    def __iter__(self) -> Iterator[tuple[int, Fraction]]:
        return iter(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = LaurentScalar.coerce(other)
        if not isinstance(other, LaurentScalar):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return self._hash

    def __add__(self, other):
        other = LaurentScalar.coerce(other)
        out = dict(self._terms)
        for e, c in other._terms:
            out[e] = out.get(e, 0) + c
        return LaurentScalar(out)

    __radd__ = __add__

    def __neg__(self) -> "LaurentScalar":
        return LaurentScalar({e: -c for e, c in self._terms})

    def __sub__(self, other):
        return self + (-LaurentScalar.coerce(other))

    def __rsub__(self, other):
        return LaurentScalar.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (HopfElement, TensorElement)):
            return NotImplemented
        other = LaurentScalar.coerce(other)
        out: dict[int, Fraction] = {}
        for e1, c1 in self._terms:
            for e2, c2 in other._terms:
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return LaurentScalar(out)

    __rmul__ = __mul__

    def min_order(self) -> int | None:
        return self._terms[0][0] if self._terms else None

    def is_rational(self) -> bool:
        return all(e == 0 for e, _ in self._terms)

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} depends on lambda")
        return self._terms[0][1] if self._terms else Fraction(0)

    def __repr__(self) -> str:
        return f"LaurentScalar({dict(self._terms)!r})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for e, c in self._terms:
            parts.append(_format_term(c, _lam_power(e)))
        return _join_signed(parts)


def _lam_power(e: int) -> str:
    if e == 0:
        return ""
    if e == 1:
        return "λ"
    return f"λ^{e}"


def _format_term(c: Fraction, body: str) -> str:
    """Signed string for ``c * body``; body may be empty (the unit)."""
    sign = "-" if c < 0 else "+"
    mag = abs(c)
    if not body:
        return f"{sign}{mag}"
    if mag == 1:
        return f"{sign}{body}"
    return f"{sign}{mag}{body}" if mag.denominator == 1 else f"{sign}({mag}){body}"


def _join_signed(parts: Sequence[str]) -> str:
    out = ""
    for i, p in enumerate(parts):
        sign, body = p[0], p[1:]
        if i == 0:
            out = body if sign == "+" else f"-{body}"
        else:
            out += f" {sign} {body}"
    return out


# --------------------------------------------------------------------------
# Monomials, elements, tensors
# --------------------------------------------------------------------------


@dataclass(frozen=True, order=True)
class Monomial:
    """``P0^i P1^j E^k`` with ``i, j >= 0`` and any integer ``k``."""

    i: int = 0
    j: int = 0
    k: int = 0

    def __post_init__(self) -> None:
        if self.i < 0 or self.j < 0:
            raise ValueError(f"negative P-power in monomial {self!r}")

    def __mul__(self, other: "Monomial") -> "Monomial":
        return Monomial(self.i + other.i, self.j + other.j, self.k + other.k)

    @property
    def degree(self) -> int:
        return self.i + self.j

    def is_unit(self) -> bool:
        return self.i == 0 and self.j == 0 and self.k == 0

    def __str__(self) -> str:
        parts = []
        for name, p in (("P0", self.i), ("P1", self.j), ("E", self.k)):
            if p == 1:
                parts.append(name)
            elif p:
                parts.append(f"{name}^{p}")
        return "".join(parts) if parts else "1"


UNIT = Monomial()


def _add_into(acc: dict, key, coeff: LaurentScalar) -> None:
    total = acc.get(key)
    total = coeff if total is None else total + coeff
    if total:
        acc[key] = total
    else:
        acc.pop(key, None)


def _canonical(terms: Mapping, key_type) -> dict:
    out = {}
    for key, c in terms.items():
        c = LaurentScalar.coerce(c)
        if c:
            out[key_type(key)] = c
    return dict(sorted(out.items()))


class HopfElement:
    """Finite linear combination of monomials with Laurent coefficients."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping | None = None):
        def key(m):
            return m if isinstance(m, Monomial) else Monomial(*m)

        self._terms: dict[Monomial, LaurentScalar] = _canonical(terms or {}, key)
        self._hash = hash(tuple(self._terms.items()))

    @classmethod
    def monomial(cls, i: int = 0, j: int = 0, k: int = 0, coeff=1) -> "HopfElement":
        return cls({Monomial(i, j, k): coeff})

    @classmethod
    def coerce(cls, value) -> "HopfElement":
        if isinstance(value, HopfElement):
            return value
        return cls({UNIT: LaurentScalar.coerce(value)})

    @property
    def terms(self) -> dict[Monomial, LaurentScalar]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __iter__(self):
        return iter(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction, LaurentScalar)):
            other = HopfElement.coerce(other)
        if not isinstance(other, HopfElement):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return self._hash

    def coefficient(self, m: Monomial) -> LaurentScalar:
        return self._terms.get(m, LaurentScalar())

    def __add__(self, other):
        other = HopfElement.coerce(other)
        acc = dict(self._terms)
        for m, c in other._terms.items():
            _add_into(acc, m, c)
        return HopfElement(acc)

    __radd__ = __add__

    def __neg__(self) -> "HopfElement":
        return HopfElement({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-HopfElement.coerce(other))

    def __rsub__(self, other):
        return HopfElement.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, LaurentScalar)):
            s = LaurentScalar.coerce(other)
            return HopfElement({m: c * s for m, c in self._terms.items()})
        if isinstance(other, HopfElement):
            return multiply(self, other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, LaurentScalar)):
            return self * other
        return NotImplemented

    def __pow__(self, n: int) -> "HopfElement":
        if n < 0:
            if len(self._terms) == 1:
                (m, c), = self._terms.items()
                if m.i == 0 and m.j == 0 and c == 1:
                    return HopfElement.monomial(0, 0, m.k * n)
            raise ValueError("only E^k is invertible")
        out = ONE
        for _ in range(n):
            out = out * self
        return out

    def __repr__(self) -> str:
        return f"HopfElement({str(self)!r})"

    def __str__(self) -> str:
        return format_element(self)


class TensorElement:
    """Element of the tensor square, keyed by (left monomial, right monomial)."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping | None = None):
        def key(pair):
            a, b = pair
            return (a if isinstance(a, Monomial) else Monomial(*a),
                    b if isinstance(b, Monomial) else Monomial(*b))

        self._terms: dict[tuple[Monomial, Monomial], LaurentScalar] = _canonical(terms or {}, key)
        self._hash = hash(tuple(self._terms.items()))

    @classmethod
    def pure(cls, a: HopfElement, b: HopfElement) -> "TensorElement":
        acc: dict = {}
        for ma, ca in a.items():
            for mb, cb in b.items():
                _add_into(acc, (ma, mb), ca * cb)
        return cls(acc)

    @property
    def terms(self):
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TensorElement):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return self._hash

    def __add__(self, other: "TensorElement") -> "TensorElement":
        acc = dict(self._terms)
        for key, c in other._terms.items():
            _add_into(acc, key, c)
        return TensorElement(acc)

    def __neg__(self) -> "TensorElement":
        return TensorElement({key: -c for key, c in self._terms.items()})

    def __sub__(self, other: "TensorElement") -> "TensorElement":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, LaurentScalar)):
            s = LaurentScalar.coerce(other)
            return TensorElement({key: c * s for key, c in self._terms.items()})
        if isinstance(other, TensorElement):
            acc: dict = {}
            for (a1, b1), c1 in self._terms.items():
                for (a2, b2), c2 in other._terms.items():
                    _add_into(acc, (a1 * a2, b1 * b2), c1 * c2)
            return TensorElement(acc)
        return NotImplemented

    def left_legs(self) -> HopfElement:
        """Collapse ``sum a (x) 1`` to ``sum a``; raises if a right leg is not 1."""
        acc: dict = {}
        for (a, b), c in self._terms.items():
            if not b.is_unit():
                raise ShapeViolationError(f"right leg {b} is not the unit")
            _add_into(acc, a, c)
        return HopfElement(acc)

    def __repr__(self) -> str:
        parts = [_format_term_scalar(c, f"{a} ⊗ {b}") for (a, b), c in self._terms.items()]
        return f"TensorElement({_join_signed(parts) if parts else '0'!r})"


ONE = HopfElement.monomial()
P0 = HopfElement.monomial(1, 0, 0)
P1 = HopfElement.monomial(0, 1, 0)
E = HopfElement.monomial(0, 0, 1)
E_INV = HopfElement.monomial(0, 0, -1)
LAM = LaurentScalar.lam(1)


def _format_term_scalar(c: LaurentScalar, body: str) -> str:
    if c.is_rational():
        return _format_term(c.to_fraction(), "" if body == "1" else body)
    inner = str(c)
    return "+(" + inner + ")" + ("" if body == "1" else body)


def format_element(a: HopfElement) -> str:
    """Human readable form; factors out a shared power of lambda.

    ``(1/λ)(1 - E)`` rather than ``λ^-1 - λ^-1E``.
    """
    if not a:
        return "0"
    orders = set()
    for c in a._terms.values():
        orders.update(e for e, _ in c)
    prefix = ""
    if len(orders) == 1:
        (n,) = orders
        if n != 0:
            prefix = "(1/λ)" if n == -1 else f"(λ^{n})" if n != 1 else "λ"
            a = HopfElement({m: LaurentScalar({0: c.terms[n]}) for m, c in a.items()})
    parts = [_format_term_scalar(c, str(m)) for m, c in a.items()]
    body = _join_signed(parts)
    if prefix:
        return f"{prefix}({body})" if len(parts) > 1 or body.startswith("-") else f"{prefix}{body}"
    return body


# --------------------------------------------------------------------------
# Hopf structure maps
# --------------------------------------------------------------------------


def multiply(a: HopfElement, b: HopfElement) -> HopfElement:
    acc: dict = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            _add_into(acc, ma * mb, ca * cb)
    return HopfElement(acc)


def _monomial_coproduct(m: Monomial) -> dict[tuple[Monomial, Monomial], int]:
    # (P0(x)1 + 1(x)P0)^i (P1(x)1 + E(x)P1)^j (E^k (x) E^k)
    out: dict[tuple[Monomial, Monomial], int] = {}
    for a in range(m.i + 1):
        for b in range(m.j + 1):
            left = Monomial(a, b, m.j - b + m.k)
            right = Monomial(m.i - a, m.j - b, m.k)
            out[(left, right)] = out.get((left, right), 0) + comb(m.i, a) * comb(m.j, b)
    return out


def coproduct(a: HopfElement) -> TensorElement:
    acc: dict = {}
    for m, c in a.items():
        for key, n in _monomial_coproduct(m).items():
            _add_into(acc, key, c * n)
    return TensorElement(acc)


def counit(a: HopfElement) -> LaurentScalar:
    total = LaurentScalar()
    for m, c in a.items():
        if m.i == 0 and m.j == 0:
            total = total + c
    return total


def antipode(a: HopfElement) -> HopfElement:
    acc: dict = {}
    for m, c in a.items():
        sign = -1 if (m.i + m.j) % 2 else 1
        _add_into(acc, Monomial(m.i, m.j, -m.j - m.k), c * sign)
    return HopfElement(acc)


def _element_of(m: Monomial, c: LaurentScalar) -> HopfElement:
    return HopfElement({m: c})


def hopf_axioms_check(a: HopfElement) -> bool:
    """Coassociativity, counit and antipode laws, checked exactly on ``a``."""
    delta = coproduct(a)

    # (Delta (x) id) Delta  vs  (id (x) Delta) Delta, as maps to triple tensors
    left: dict = {}
    right: dict = {}
    for (x, y), c in delta.items():
        for (x1, x2), n in _monomial_coproduct(x).items():
            _add_into(left, (x1, x2, y), c * n)
        for (y1, y2), n in _monomial_coproduct(y).items():
            _add_into(right, (x, y1, y2), c * n)
    if left != right:
        return False

    eps_left = HopfElement()
    eps_right = HopfElement()
    s_left = HopfElement()
    s_right = HopfElement()
    for (x, y), c in delta.items():
        eps_left = eps_left + _element_of(y, c * counit(_element_of(x, LaurentScalar.coerce(1))))
        eps_right = eps_right + _element_of(x, c * counit(_element_of(y, LaurentScalar.coerce(1))))
        s_left = s_left + antipode(_element_of(x, c)) * _element_of(y, LaurentScalar.coerce(1))
        s_right = s_right + _element_of(x, c) * antipode(_element_of(y, LaurentScalar.coerce(1)))
    if eps_left != a or eps_right != a:
        return False
    target = HopfElement.coerce(counit(a))
    return s_left == target and s_right == target


# --------------------------------------------------------------------------
# Exact linear algebra over Q
# --------------------------------------------------------------------------


def _rref(rows: list[list[Fraction]], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    # rows are kept sparse ({col: value}); the systems here are mostly zeros
    m = [{c: Fraction(v) for c, v in enumerate(r) if v} for r in rows]
    m = [r for r in m if r]
    pivots: list[int] = []
    done: list[dict] = []
    for col in range(ncols):
        pivot = next((i for i, r in enumerate(m) if col in r), None)
        if pivot is None:
            continue
        prow = m.pop(pivot)
        inv = 1 / prow[col]
        prow = {c: v * inv for c, v in prow.items()}
        for rows_ in (m, done):
            for i, r in enumerate(rows_):
                f = r.get(col)
                if f:
                    for c, v in prow.items():
                        nv = r.get(c, 0) - f * v
                        if nv:
                            r[c] = nv
                        else:
                            r.pop(c, None)
        m = [r for r in m if r]
        done.append(prow)
        pivots.append(col)
        if not m:
            break
    dense = [[r.get(c, Fraction(0)) for c in range(ncols)] for r in done]
    return dense, pivots


def _null_space(rows: list[list[Fraction]], ncols: int) -> list[list[Fraction]]:
    reduced, pivots = _rref(rows, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for row, pc in zip(reduced, pivots):
            v[pc] = -row[fc]
        basis.append(v)
    return basis


# --------------------------------------------------------------------------
# Twisted primitives and the Dirac operator
# --------------------------------------------------------------------------


def _window(max_degree: int, max_e_power: int) -> list[Monomial]:
    return [
        Monomial(i, d - i, k)
        for d in range(max_degree + 1)
        for i in range(d, -1, -1)
        for k in range(-max_e_power, max_e_power + 1)
    ]


def _shape_defect(a: HopfElement, m: int) -> TensorElement:
    """Terms of ``Delta(a) - E^m (x) a`` whose right leg is not the unit."""
    diff = coproduct(a) - TensorElement.pure(HopfElement.monomial(0, 0, m), a)
    return TensorElement({key: c for key, c in diff.items() if not key[1].is_unit()})


def classify_twisted_primitives(m: int, max_degree: int, max_E_power: int) -> list[HopfElement]:
    """Basis of the span ``{A : Delta(A) = A' (x) 1 + E^m (x) A}`` inside a window.

    The window is ``i + j <= max_degree`` and ``|k| <= max(max_E_power, |m|)``;
    the E-range always reaches ``E^m`` so the group-like twist itself is
    representable. The basis is in reduced echelon form, so for monomial
    answers it is the monomials, listed by degree and then by ``|k|``.
    """
    if max_degree < 1:
        raise ValueError("max_degree must be >= 1")
    if max_E_power < 0:
        raise ValueError("max_E_power must be >= 0")
    basis = _classify(m, max_degree, max(max_E_power, abs(m)))
    return sorted(basis, key=_display_key)


def _display_key(a: HopfElement) -> tuple:
    monos = sorted(a.terms)
    return (max(x.degree for x in monos), sum(abs(x.k) for x in monos), [(-x.i, x.j, x.k) for x in monos])


@lru_cache(maxsize=128)
def _classify(m: int, max_degree: int, e_window: int) -> tuple[HopfElement, ...]:
    unknowns = _window(max_degree, e_window)
    unknowns.sort()
    index: dict = {}
    columns: list[dict] = []
    for mono in unknowns:
        col = {}
        for key, c in _shape_defect(HopfElement({mono: 1}), m).items():
            col[key] = c.to_fraction()
            index.setdefault(key, len(index))
        columns.append(col)
    rows = [[Fraction(0)] * len(unknowns) for _ in range(len(index))]
    for j, col in enumerate(columns):
        for key, c in col.items():
            rows[index[key]][j] = c
    null = _null_space(rows, len(unknowns))
    # canonical basis: RREF of the null-space vectors in monomial order
    reduced, _ = _rref(null, len(unknowns))
    return tuple(
        HopfElement({mono: c for mono, c in zip(unknowns, vec) if c})
        for vec in reduced
    )


def twisted_commutator_symbol(a: HopfElement, m: int) -> HopfElement:
    """Return ``A'`` with ``Delta(a) = A' (x) 1 + E^m (x) a``.

    The twisted commutator of ``rho(a)`` with a left multiplication is then
    left multiplication by ``A' |> f``.
    """
    defect = _shape_defect(a, m)
    if defect:
        raise ShapeViolationError(
            f"coproduct of {a} is not of the form A'⊗1 + E^{m}⊗A: "
            f"{len(defect.items())} cross terms remain"
        )
    diff = coproduct(a) - TensorElement.pure(HopfElement.monomial(0, 0, m), a)
    return diff.left_legs()


def _symbol_series(mono: Monomial, lam_order: int, truncation: int) -> dict[tuple[int, int, int], Fraction]:
    """Formal series of ``lambda^n * p0^i p1^j exp(-k lambda p0)``.

    Keys are ``(lambda order, p0 power, p1 power)``; orders above
    ``truncation`` are dropped.
    """
    out: dict[tuple[int, int, int], Fraction] = {}
    n = 0
    while lam_order + n <= truncation:
        c = Fraction((-mono.k) ** n, factorial(n))
        if c:
            key = (lam_order + n, mono.i + n, mono.j)
            out[key] = out.get(key, 0) + c
        if mono.k == 0:
            break
        n += 1
    return out


@dataclass
class ComponentSolution:
    m: int
    component: str
    element: HopfElement | None
    notes: list[str] = field(default_factory=list)


@dataclass
class DiracSolution:
    D0: HopfElement
    D1: HopfElement
    sigma: HopfElement
    ledger: list[str]


def _solve_component(
    m: int,
    target: tuple[int, int],
    basis: list[HopfElement],
    truncation: int,
) -> tuple[HopfElement | None, list[str]]:
    name = "D0" if target == (1, 0) else "D1"
    notes: list[str] = []
    # each basis element b gets a coefficient d * lambda^(deg - 1), so that the
    # term has length dimension -1; inhomogeneous elements cannot be dimensioned
    usable: list[tuple[HopfElement, int]] = []
    for b in basis:
        degrees = {mono.degree for mono in b}
        if len(degrees) != 1:
            notes.append(f"m={m}: {name}: basis element {b} has mixed dimension, coefficient forced to 0")
            continue
        usable.append((b, degrees.pop() - 1))
    rows: dict[tuple[int, int, int], list[Fraction]] = {}
    for q, (b, order) in enumerate(usable):
        for mono, c in b.items():
            for key, v in _symbol_series(mono, order, truncation).items():
                rows.setdefault(key, [Fraction(0)] * len(usable))
                rows[key][q] += c.to_fraction() * v
    # constraints: no negative orders, order 0 equals p0 (or p1)
    eqs: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    target_key = (0, target[0], target[1])
    keys = set(k for k in rows if k[0] <= 0) | {target_key}
    for key in sorted(keys):
        eqs.append(rows.get(key, [Fraction(0)] * len(usable)))
        rhs.append(Fraction(1) if key == target_key else Fraction(0))
    n = len(usable)
    aug = [row + [r] for row, r in zip(eqs, rhs)]
    reduced, pivots = _rref(aug, n + 1)
    if n in pivots:
        span = ", ".join(str(b) for b in basis)
        notes.append(f"m={m}: {name}: no admissible element in span{{{span}}} (no {'p0' if target == (1, 0) else 'p1'} classical limit)")
        return None, notes
    if len(pivots) < n:
        raise InconsistencyError(f"m={m}: {name}: classical-limit constraints leave {n - len(pivots)} free parameters")
    coeffs = [Fraction(0)] * n
    for row, pc in zip(reduced, pivots):
        coeffs[pc] = row[n]
    element = HopfElement()
    for (b, order), d in zip(usable, coeffs):
        if d == 0:
            notes.append(f"m={m}: {name}: coefficient of {b} forced to 0")
            continue
        element = element + b * LaurentScalar.lam(order, d)
    notes.append(f"m={m}: {name} = {element}")
    return element, notes


def solve_dirac_uniqueness(
    m_window: Iterable[int] = range(-3, 4),
    max_degree: int = 3,
    max_E_power: int = 3,
    truncation: int = 3,
) -> DiracSolution:
    """Re-derive ``D0``, ``D1`` and the twist from boundedness and the classical limit.

    For each ``m`` the admissible elements are the twisted primitives for
    ``E^m``; both components must admit a solution for the same ``m``.
    Raises :class:`InconsistencyError` unless exactly one ``m`` survives with
    a unique solution for each component.
    """
    ledger: list[str] = []
    survivors = []
    for m in m_window:
        basis = classify_twisted_primitives(m, max_degree, max_E_power)
        d0, notes0 = _solve_component(m, (1, 0), basis, truncation)
        d1, notes1 = _solve_component(m, (0, 1), basis, truncation)
        ledger.extend(notes0)
        ledger.extend(notes1)
        if d0 is not None and d1 is not None:
            survivors.append((m, d0, d1))
        else:
            missing = [n for n, d in (("D0", d0), ("D1", d1)) if d is None]
            ledger.append(f"m={m}: eliminated ({' and '.join(missing)} inadmissible)")
    if not survivors:
        raise InconsistencyError("no twist E^m admits a Dirac operator with the classical limit")
    if len(survivors) > 1:
        ms = [s[0] for s in survivors]
        raise InconsistencyError(f"several twists admit a solution: m in {ms}")
    m, d0, d1 = survivors[0]
    ledger.append(f"m={m}: unique survivor, sigma = {HopfElement.monomial(0, 0, m)}")
    return DiracSolution(D0=d0, D1=d1, sigma=HopfElement.monomial(0, 0, m), ledger=ledger)


# --------------------------------------------------------------------------
# JSON form
# --------------------------------------------------------------------------


def _scalar_to_json(c: LaurentScalar) -> list[list[int]]:
    return [[e, v.numerator, v.denominator] for e, v in c]


def _scalar_from_json(data) -> LaurentScalar:
    return LaurentScalar({int(e): Fraction(int(num), int(den)) for e, num, den in data})


def element_to_json(a: HopfElement) -> list[dict]:
    return [{"i": m.i, "j": m.j, "k": m.k, "coeff": _scalar_to_json(c)} for m, c in a.items()]


def element_from_json(data: Sequence[Mapping]) -> HopfElement:
    acc: dict = {}
    for item in data:
        _add_into(acc, Monomial(int(item["i"]), int(item["j"]), int(item["k"])), _scalar_from_json(item["coeff"]))
    return HopfElement(acc)


def tensor_to_json(t: TensorElement) -> list[dict]:
    return [
        {"left": {"i": a.i, "j": a.j, "k": a.k}, "right": {"i": b.i, "j": b.j, "k": b.k},
         "coeff": _scalar_to_json(c)}
        for (a, b), c in t.items()
    ]


def tensor_from_json(data: Sequence[Mapping]) -> TensorElement:
    acc: dict = {}
    for item in data:
        a = Monomial(*(int(item["left"][x]) for x in "ijk"))
        b = Monomial(*(int(item["right"][x]) for x in "ijk"))
        _add_into(acc, (a, b), _scalar_from_json(item["coeff"]))
    return TensorElement(acc)


def dumps(a: HopfElement) -> str:
    return json.dumps(element_to_json(a), sort_keys=True)
