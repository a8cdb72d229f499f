"""Gamma function and the ``2F1(1/2, b; 3/2; z)`` family for ``z <= 0``."""

from __future__ import annotations

import cmath
import math

__all__ = ["EULER_GAMMA", "PoleError", "ConvergenceError", "gamma_fn", "gauss_2f1_half"]

EULER_GAMMA = 0.57721566490153286060651209008240243

# Lanczos approximation, g = 7, n = 9
_G = 7
_LANCZOS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)


class PoleError(ValueError):
    pass


class ConvergenceError(RuntimeError):
    pass


def gamma_fn(x: complex | float) -> complex:
    """Gamma function for real or complex arguments.

    Uses the reflection formula for ``Re x < 1/2``. Raises :class:`PoleError`
    at non-positive integers.
    """
    z = complex(x)
    if z.imag == 0 and z.real <= 0 and z.real == math.floor(z.real):
        raise PoleError(f"Gamma has a pole at {z.real:g}")
    if z.real < 0.5:
        return math.pi / (cmath.sin(math.pi * z) * gamma_fn(1 - z))
    z -= 1
    acc = _LANCZOS[0]
    for k in range(1, _G + 2):
        acc += _LANCZOS[k] / (z + k)
    t = z + _G + 0.5
    return math.sqrt(2 * math.pi) * t ** (z + 0.5) * cmath.exp(-t) * acc


def _gamma_real(x: float) -> float:
    return gamma_fn(x).real


def gauss_2f1_half(b: float, z: float, tol: float = 1e-12, max_terms: int = 100_000) -> float:
    """``2F1(1/2, b; 3/2; z)`` for real ``z <= 0``.

    Pfaff's transformation gives ``(1-z)^(-b) 2F1(1, b; 3/2; w)`` with
    ``w = z/(z-1)`` in ``[0, 1)``; the series in ``w`` has positive terms and
    the remainder is bounded by a geometric tail.
    """
    if z > 0:
        raise ValueError("z must be <= 0")
    if z == 0:
        return 1.0
    w = z / (z - 1.0)
    term = 1.0
    total = 1.0
    n = 0
    while True:
        # ratio t_{n+1}/t_n = (1+n)(b+n) / ((3/2+n)(n+1)) * w = (b+n)/(n+3/2) * w
        ratio = (b + n) / (n + 1.5) * w
        term *= ratio
        total += term
        n += 1
        # once b+n < n+3/2 the ratios are increasing towards w, so w bounds them
        r = w if b < 1.5 else max(ratio, w)
        if r < 1:
            bound = abs(term) * r / (1 - r)
            if bound <= tol * abs(total) and abs(term) <= tol * abs(total):
                break
        if n >= max_terms:
            raise ConvergenceError(f"2F1 series did not converge for b={b}, z={z}")
    return (1.0 - z) ** (-b) * total
