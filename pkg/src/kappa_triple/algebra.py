"""The deformed function algebra in partial-Fourier form.

An element ``f`` is stored as samples of ``phi_f(p0, x1)``, the Fourier
transform of ``f`` in its first variable, on a uniform ``(p0, x1)`` grid.
The modular data (``E``, the modular flow, the weight) are exact multipliers
in ``p0``; everything else reduces to resampling rows in ``x1`` at points
rescaled by ``exp(+-lambda p0)``, done by band-limited (spectral)
interpolation by default.
"""

from __future__ import annotations

import base64
import json
from dataclasses import dataclass, field, replace
from functools import lru_cache
from typing import Literal

import numpy as np
from scipy import ndimage

__all__ = [
    "GridSpec",
    "PartialFourierFunction",
    "GridMismatchError",
    "SupportOverflowError",
    "DecayError",
    "star_product",
    "involution",
    "weight_omega",
    "weight_of_star",
    "inner_product",
    "l2_norm",
    "unitary_U",
    "unitary_U_inverse",
    "act_generator",
    "modular_flow",
    "kms_defect",
    "resample_rows",
    "interpolation_matrix",
    "to_json",
    "from_json",
]

Interp = Literal["spectral", "cubic"]


class GridMismatchError(ValueError):
    pass


class SupportOverflowError(RuntimeError):
    pass


class DecayError(ValueError):
    pass


@dataclass(frozen=True)
class GridSpec:
    """Uniform sampling grid plus the deformation length ``lam``.

    ``p0`` nodes are ``-p0_max + k*dp`` for ``k < n_p0`` (so ``p0 = 0`` is the
    node ``n_p0 // 2``); ``x1`` nodes are ``-x1_max + j*dx``.
    """

    p0_max: float = 4.0
    n_p0: int = 256
    x1_max: float = 20.0
    n_x1: int = 256
    lam: float = 0.5
    interp: Interp = "spectral"

    def __post_init__(self):
        for name in ("n_p0", "n_x1"):
            n = getattr(self, name)
            if int(n) != n or n < 8 or n % 2:
                raise ValueError(f"{name} must be an even integer >= 8, got {n!r}")
        for name in ("p0_max", "x1_max"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")
        if not np.isfinite(self.lam) or self.lam < 0:
            raise ValueError(f"lam must be a non-negative real, got {self.lam!r}")
        if self.interp not in ("spectral", "cubic"):
            raise ValueError(f"unknown interpolation {self.interp!r}")

    @property
    def dp(self) -> float:
        return 2 * self.p0_max / self.n_p0

    @property
    def dx(self) -> float:
        return 2 * self.x1_max / self.n_x1

    @property
    def zero_index(self) -> int:
        return self.n_p0 // 2

    @property
    def p0(self) -> np.ndarray:
        return -self.p0_max + self.dp * np.arange(self.n_p0)

    @property
    def x1(self) -> np.ndarray:
        return -self.x1_max + self.dx * np.arange(self.n_x1)

    @property
    def k1(self) -> np.ndarray:
        """Angular wavenumbers of the x1 FFT, in numpy's FFT order."""
        return 2 * np.pi * np.fft.fftfreq(self.n_x1, d=self.dx)

    @property
    def lambda_p0_max(self) -> float:
        """``lam * p0_max``: how strongly rows get rescaled at the grid edge."""
        return self.lam * self.p0_max

    def with_lambda(self, lam: float) -> "GridSpec":
        return replace(self, lam=lam)

    def to_dict(self) -> dict:
        return {
            "p0_max": self.p0_max,
            "n_p0": self.n_p0,
            "x1_max": self.x1_max,
            "n_x1": self.n_x1,
            "lambda": self.lam,
            "interp": self.interp,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "GridSpec":
        d = dict(d)
        if "lambda" in d:
            d["lam"] = d.pop("lambda")
        return cls(**d)


@dataclass(frozen=True, eq=False)
class PartialFourierFunction:
    grid: GridSpec
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        v = np.array(self.values, dtype=complex)
        if v.shape != (self.grid.n_p0, self.grid.n_x1):
            raise ValueError(f"values must have shape {(self.grid.n_p0, self.grid.n_x1)}, got {v.shape}")
        if not np.all(np.isfinite(v)):
            raise ValueError("non-finite samples")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    @classmethod
    def zeros(cls, grid: GridSpec) -> "PartialFourierFunction":
        return cls(grid, np.zeros((grid.n_p0, grid.n_x1), complex))

    @classmethod
    def from_function(cls, grid: GridSpec, fn) -> "PartialFourierFunction":
        """Sample ``fn(p0, x1)`` (broadcasting) on the grid."""
        p, x = np.meshgrid(grid.p0, grid.x1, indexing="ij")
        return cls(grid, fn(p, x))

    def _like(self, values) -> "PartialFourierFunction":
        return PartialFourierFunction(self.grid, values)

    def __add__(self, other: "PartialFourierFunction"):
        _check_grids(self, other)
        return self._like(self.values + other.values)

    def __sub__(self, other: "PartialFourierFunction"):
        _check_grids(self, other)
        return self._like(self.values - other.values)

    def __neg__(self):
        return self._like(-self.values)

    def __mul__(self, c):
        if isinstance(c, PartialFourierFunction):
            raise TypeError("use star_product for the algebra product")
        return self._like(self.values * complex(c))

    __rmul__ = __mul__

    def support_rows(self) -> np.ndarray:
        return np.flatnonzero(np.any(self.values != 0, axis=1))

    def p0_support(self) -> tuple[float, float] | None:
        rows = self.support_rows()
        if rows.size == 0:
            return None
        p = self.grid.p0
        return float(p[rows[0]]), float(p[rows[-1]])

    def boundary_decay(self) -> float:
        """Largest |phi| on the two x1 boundary columns, relative to max |phi|."""
        peak = np.max(np.abs(self.values))
        if peak == 0:
            return 0.0
        edge = max(np.max(np.abs(self.values[:, 0])), np.max(np.abs(self.values[:, -1])))
        return float(edge / peak)

    def check_decay(self, threshold: float = 1e-12) -> None:
        d = self.boundary_decay()
        if d > threshold:
            raise DecayError(f"x1 boundary magnitude {d:.2e} exceeds {threshold:.0e}; widen x1_max")

    def position_values(self, x0: np.ndarray) -> np.ndarray:
        """``f(x0, x1)`` on the x1 grid for the given ``x0`` points (trapezoid in p0)."""
        x0 = np.atleast_1d(np.asarray(x0, float))
        phase = np.exp(1j * np.outer(x0, self.grid.p0))
        return phase @ self.values * (self.grid.dp / (2 * np.pi))


def _check_grids(*fs: PartialFourierFunction) -> GridSpec:
    g = fs[0].grid
    for f in fs[1:]:
        if f.grid != g:
            raise GridMismatchError(f"grid mismatch: {g} vs {f.grid}")
    return g


# --------------------------------------------------------------------------
# x1 resampling
# --------------------------------------------------------------------------


def _band_limited(y: np.ndarray, n: int, L: float) -> np.ndarray:
    """Matrix of the symmetric trigonometric interpolant (Nyquist mode as a cosine).

    Rows are target points ``y``, columns the ``n`` grid nodes on ``[-L, L)``;
    targets outside ``[-L, L]`` get a zero row.
    """
    x = -L + (2 * L / n) * np.arange(n)
    theta = np.pi * (y[:, None] - x[None, :]) / L
    half = np.sin(0.5 * theta)
    N = n // 2
    small = np.abs(half) < 1e-13
    safe = np.where(small, 1.0, half)
    M = (np.where(small, 2 * N - 1, np.sin((N - 0.5) * theta) / safe) + np.cos(N * theta)) / n
    M[np.abs(y) > L * (1 + 1e-14)] = 0.0
    return M


@lru_cache(maxsize=256)
def _spectral_matrix(n: int, L: float, scale: float) -> np.ndarray:
    x = -L + (2 * L / n) * np.arange(n)
    M = _band_limited(scale * x, n, L)
    M.setflags(write=False)
    return M


def interpolation_matrix(grid: GridSpec, points: np.ndarray) -> np.ndarray:
    """Matrix taking x1 samples to interpolated values at arbitrary ``points``."""
    y = np.asarray(points, float).ravel()
    n, L = grid.n_x1, grid.x1_max
    if grid.interp == "cubic":
        eye = np.eye(n)
        coords = (y + L) / grid.dx
        cols = [ndimage.map_coordinates(eye[:, l], [coords], order=3, mode="constant") for l in range(n)]
        return np.stack(cols, axis=1)
    return _band_limited(y, n, L)


def _resample_uniform(values: np.ndarray, grid: GridSpec, scale: float) -> np.ndarray:
    """Rows of ``values`` evaluated at ``scale * x1``."""
    if scale == 1.0:
        return values
    if grid.interp == "spectral":
        M = _spectral_matrix(grid.n_x1, grid.x1_max, float(scale))
        return values @ M.T
    coords = (scale * grid.x1 + grid.x1_max) / grid.dx
    rows = values.shape[0]
    rr, cc = np.meshgrid(np.arange(rows), coords, indexing="ij")
    out = np.empty_like(values)
    for part, sink in ((values.real, "real"), (values.imag, "imag")):
        res = ndimage.map_coordinates(part, [rr, cc], order=3, mode="constant", cval=0.0)
        if sink == "real":
            out.real = res
        else:
            out.imag = res
    return out


def resample_rows(values: np.ndarray, grid: GridSpec, scales: np.ndarray) -> np.ndarray:
    """Row ``r`` evaluated at ``scales[r] * x1``; zero rows are skipped."""
    out = np.zeros_like(values, dtype=complex)
    for r in np.flatnonzero(np.any(values != 0, axis=1)):
        out[r] = _resample_uniform(values[r : r + 1], grid, float(scales[r]))[0]
    return out


def _mirror(values: np.ndarray) -> np.ndarray:
    """Rows reindexed by ``p0 -> -p0``; the unmatched edge row becomes zero."""
    out = np.zeros_like(values)
    out[1:] = values[:0:-1]
    return out


# --------------------------------------------------------------------------
# Algebra operations
# --------------------------------------------------------------------------


def star_product(
    f: PartialFourierFunction,
    g: PartialFourierFunction,
    overflow_tol: float = 1e-10,
) -> PartialFourierFunction:
    """Deformed product, as a twisted convolution in ``p0``.

    ``phi_{f*g}(q, x) = (dp/2pi) sum_p phi_f(p, x) phi_g(q - p, exp(-lam p) x)``.
    Raises :class:`SupportOverflowError` when more than ``overflow_tol`` of
    the result (relative, in l2) falls outside the representable ``q`` range.
    """
    grid = _check_grids(f, g)
    n, mid = grid.n_p0, grid.zero_index
    rows_f = f.support_rows()
    rows_g = g.support_rows()
    if rows_f.size == 0 or rows_g.size == 0:
        return PartialFourierFunction.zeros(grid)
    G = g.values[rows_g]
    full = np.zeros((2 * n, grid.n_x1), complex)
    p = grid.p0
    for b in rows_f:
        Gs = _resample_uniform(G, grid, float(np.exp(-grid.lam * p[b])))
        full[b + rows_g] += f.values[b] * Gs
    full *= grid.dp / (2 * np.pi)
    # q index = b + c - mid, stored at row b + c; valid q indices are 1..n-1
    inside = full[mid + 1 : mid + n]
    total = np.linalg.norm(full)
    spill = np.sqrt(max(total**2 - np.linalg.norm(inside) ** 2, 0.0))
    if total > 0 and spill > overflow_tol * total:
        raise SupportOverflowError(
            f"{spill / total:.2e} of the product lies outside |p0| < {grid.p0_max}; enlarge p0_max"
        )
    out = np.zeros((n, grid.n_x1), complex)
    out[1:] = inside
    return PartialFourierFunction(grid, out)


def involution(f: PartialFourierFunction) -> PartialFourierFunction:
    """``phi_{f*}(p, x) = conj(phi_f(-p, exp(-lam p) x))``."""
    grid = f.grid
    src = np.conj(_mirror(f.values))
    return PartialFourierFunction(grid, resample_rows(src, grid, np.exp(-grid.lam * grid.p0)))


def weight_omega(f: PartialFourierFunction) -> complex:
    """Integral of ``f`` over the plane: the x1-integral of the ``p0 = 0`` row."""
    return complex(np.sum(f.values[f.grid.zero_index]) * f.grid.dx)


def weight_of_star(f: PartialFourierFunction, g: PartialFourierFunction) -> complex:
    """``weight_omega(star_product(f, g))`` using only the ``q = 0`` slice."""
    grid = _check_grids(f, g)
    gm = _mirror(g.values)  # row k holds phi_g(-p_k, .)
    rows = np.intersect1d(f.support_rows(), np.flatnonzero(np.any(gm != 0, axis=1)))
    total = 0.0j
    for r in rows:
        row = _resample_uniform(gm[r : r + 1], grid, float(np.exp(-grid.lam * grid.p0[r])))[0]
        total += np.dot(f.values[r], row)
    return complex(total * grid.dx * grid.dp / (2 * np.pi))


def inner_product(f: PartialFourierFunction, g: PartialFourierFunction) -> complex:
    """GNS inner product ``omega(f* . g)``, antilinear in ``f``."""
    return weight_of_star(involution(f), g)


def l2_norm(f: PartialFourierFunction) -> float:
    """L2 norm of ``f`` in position space (Plancherel in ``p0``)."""
    grid = f.grid
    return float(np.sqrt(np.sum(np.abs(f.values) ** 2) * grid.dp * grid.dx / (2 * np.pi)))


def unitary_U(f: PartialFourierFunction) -> PartialFourierFunction:
    """``phi_{Uf}(p, x) = phi_f(p, exp(lam p) x)``; an isometry from the GNS space to L2."""
    grid = f.grid
    return PartialFourierFunction(grid, resample_rows(f.values, grid, np.exp(grid.lam * grid.p0)))


def unitary_U_inverse(f: PartialFourierFunction) -> PartialFourierFunction:
    grid = f.grid
    return PartialFourierFunction(grid, resample_rows(f.values, grid, np.exp(-grid.lam * grid.p0)))


def _p1_multiplier(grid: GridSpec) -> np.ndarray:
    k = grid.k1.copy()
    k[grid.n_x1 // 2] = 0.0  # Nyquist: average of +k and -k
    return k


def act_generator(h: str, f: PartialFourierFunction) -> PartialFourierFunction:
    """Action of ``P0``, ``P1``, ``E`` or ``E_inverse`` on ``f``.

    ``P0`` and ``E^{+-1}`` multiply by ``p0`` and ``exp(-+lam p0)``; ``P1`` is
    ``-i d/dx1``, done spectrally.
    """
    grid = f.grid
    p = grid.p0[:, None]
    if h == "P0":
        return f._like(f.values * p)
    if h == "E":
        return f._like(f.values * np.exp(-grid.lam * p))
    if h in ("E_inverse", "E_inv", "Einv"):
        return f._like(f.values * np.exp(grid.lam * p))
    if h == "P1":
        spec = np.fft.fft(f.values, axis=1) * _p1_multiplier(grid)[None, :]
        return f._like(np.fft.ifft(spec, axis=1))
    raise ValueError(f"unknown generator {h!r}; expected P0, P1, E or E_inverse")


def modular_flow(t: complex, f: PartialFourierFunction) -> PartialFourierFunction:
    """``sigma_t``: translation of ``x0`` by ``-lam t``, i.e. multiplier ``exp(-i lam t p0)``.

    Complex ``t`` is allowed; ``t = -1j`` gives the action of ``E``.
    """
    grid = f.grid
    return f._like(f.values * np.exp(-1j * grid.lam * complex(t) * grid.p0)[:, None])


def kms_defect(f: PartialFourierFunction, g: PartialFourierFunction) -> float:
    """``|omega(f g) - omega((E g) f)| / max(1, |omega(f g)|)``."""
    lhs = weight_of_star(f, g)
    rhs = weight_of_star(act_generator("E", g), f)
    return abs(lhs - rhs) / max(1.0, abs(lhs))


# --------------------------------------------------------------------------
# Fixture I/O
# --------------------------------------------------------------------------


def to_json(f: PartialFourierFunction) -> str:
    data = np.ascontiguousarray(f.values, dtype="<c16")
    return json.dumps(
        {
            "grid": f.grid.to_dict(),
            "dtype": "complex128",
            "order": "row-major",
            "shape": list(data.shape),
            "values": base64.b64encode(data.tobytes()).decode("ascii"),
        },
        sort_keys=True,
    )


def from_json(text: str) -> PartialFourierFunction:
    d = json.loads(text)
    grid = GridSpec.from_dict(d["grid"])
    raw = np.frombuffer(base64.b64decode(d["values"]), dtype="<c16")
    return PartialFourierFunction(grid, raw.reshape(d["shape"]))
