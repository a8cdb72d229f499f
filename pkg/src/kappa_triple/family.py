"""Smooth test elements: a compact bump in ``p0`` times a Hermite-Gaussian in ``x1``."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.polynomial.hermite import hermval
from scipy import integrate

from .algebra import GridSpec, PartialFourierFunction

__all__ = ["bump", "Profile", "TestFunctionFamily"]


def bump(t: np.ndarray) -> np.ndarray:
    """``exp(1 - 1/(1 - t^2))`` on ``|t| < 1``, zero elsewhere; equals 1 at 0."""
    t = np.asarray(t, float)
    out = np.zeros_like(t)
    inside = np.abs(t) < 1
    out[inside] = np.exp(1.0 - 1.0 / (1.0 - t[inside] ** 2))
    return out


@dataclass(frozen=True)
class Profile:
    """``amp * bump((p0 - center)/width) * H_n(u) exp(-u^2/2) * exp(i kappa x1)``, ``u = (x1 - x_center)/sigma``."""

    amp: complex = 1.0
    center: float = 0.0
    width: float = 0.5
    x_center: float = 0.0
    sigma: float = 1.0
    hermite: int = 0
    kappa: float = 0.0

    def p_part(self, p0) -> np.ndarray:
        return bump((np.asarray(p0, float) - self.center) / self.width)

    def x_part(self, x1) -> np.ndarray:
        u = (np.asarray(x1, float) - self.x_center) / self.sigma
        coeffs = np.zeros(self.hermite + 1)
        coeffs[-1] = 1.0
        return hermval(u, coeffs) * np.exp(-0.5 * u**2) * np.exp(1j * self.kappa * np.asarray(x1, float))

    def __call__(self, p0, x1):
        return self.amp * self.p_part(p0) * self.x_part(x1)

    def sample(self, grid: GridSpec) -> PartialFourierFunction:
        return PartialFourierFunction(
            grid, self.amp * np.outer(self.p_part(grid.p0), self.x_part(grid.x1))
        )

    def inverse_p_transform(self, x0: float) -> complex:
        """``(1/2pi) int exp(i p x0) amp*bump(...) dp`` by adaptive quadrature."""
        lo, hi = self.center - self.width, self.center + self.width
        re = integrate.quad(lambda p: np.cos(p * x0) * self.p_part(p), lo, hi, epsabs=1e-14, epsrel=1e-13, limit=200)[0]
        im = integrate.quad(lambda p: np.sin(p * x0) * self.p_part(p), lo, hi, epsabs=1e-14, epsrel=1e-13, limit=200)[0]
        return self.amp * (re + 1j * im) / (2 * np.pi)

    def position(self, x0: float, x1) -> np.ndarray:
        """Exact position-space values ``f(x0, x1)``."""
        return self.inverse_p_transform(x0) * self.x_part(x1)


class TestFunctionFamily:
    """Seeded generator of :class:`Profile` fixtures on a fixed grid.

    Widths and centres are kept small so that sums of supports stay well
    inside ``p0_max`` and ``exp(lam p0)`` rescalings stay resolved.
    """

    __test__ = False  # not a pytest class

    def __init__(self, grid: GridSpec, seed: int = 0, max_width: float = 0.6, max_center: float = 0.3):
        self.grid = grid
        self.rng = np.random.default_rng(seed)
        self.max_width = max_width
        self.max_center = max_center

    def random_profile(self) -> Profile:
        r = self.rng
        return Profile(
            amp=complex(r.uniform(0.5, 1.5) * np.exp(1j * r.uniform(0, 2 * np.pi))),
            center=float(r.uniform(-self.max_center, self.max_center)),
            width=float(r.uniform(0.5 * self.max_width, self.max_width)),
            x_center=float(r.uniform(-1.0, 1.0)),
            sigma=float(r.uniform(0.8, 1.5)),
            hermite=int(r.integers(0, 3)),
            kappa=float(r.uniform(-1.0, 1.0)),
        )

    def profiles(self, count: int) -> list[Profile]:
        return [self.random_profile() for _ in range(count)]

    def sample(self, count: int) -> list[PartialFourierFunction]:
        return [p.sample(self.grid) for p in self.profiles(count)]

    @staticmethod
    def named_fixtures() -> dict[str, Profile]:
        """Deterministic fixtures used by the reports."""
        return {
            "gauss": Profile(),
            "shifted": Profile(amp=0.7 - 0.2j, center=0.1, width=0.4, x_center=0.5, sigma=1.2, kappa=0.3),
            "hermite1": Profile(amp=1.3, center=-0.05, width=0.5, x_center=-0.4, sigma=0.9, hermite=1, kappa=0.4),
            "hermite2": Profile(amp=0.8j, width=0.35, sigma=1.1, hermite=2, kappa=-0.5),
        }
