"""Run configuration and verification report."""

from __future__ import annotations

import json
import math
import platform
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import numpy as np

from .algebra import GridSpec

SCHEMA_VERSION = 1
SUITES = ("hopf", "algebra", "operators", "spectral", "real")

DEFAULT_TOLERANCES: dict[str, float] = {
    "exact": 0.0,
    "associativity": 1e-6,
    "classical_ratio_band": 0.2,
    "kms": 1e-8,
    "u_isometry": 1e-8,
    "grid_identity": 1e-6,
    "exact_multiplier": 1e-8,
    "symbol": 1e-12,
    "factorization": 1e-6,
    "witness_growth": 5.0,
    "witness_spread": 1.5,
    "c_gap": 1e-6,
    "residue_c": 1e-3,
    "residue_phi": 1e-2,
    "linearity": 1e-8,
    "kernel_trace": 1e-4,
    "doubling_low": 1.8,
    "doubling_high": 2.2,
    "real": 1e-6,
    "special": 1e-10,
}


class ConfigError(ValueError):
    """Invalid configuration; the message names the offending field."""


@dataclass
class RunConfig:
    lam: float = 0.5
    mu: float = 1.0
    grid: dict = field(default_factory=lambda: {"p0_max": 4.0, "n_p0": 256, "x1_max": 20.0, "n_x1": 256, "interp": "spectral"})
    tolerances: dict = field(default_factory=lambda: dict(DEFAULT_TOLERANCES))
    suites: list = field(default_factory=lambda: list(SUITES))
    epsilons: list = field(default_factory=lambda: [1e-2, 1e-3, 1e-4])
    s_list: list = field(default_factory=lambda: [2.5, 3.0, 4.0])
    m_window: list = field(default_factory=lambda: [-3, 3])
    fixtures: int = 4
    seed: int = 0
    out_dir: str = "out"

    _KEYS = {
        "schema_version", "lambda", "mu", "grid", "tolerances", "suites", "epsilons",
        "s_list", "m_window", "fixtures", "seed", "out_dir",
    }
    _GRID_KEYS = {"p0_max", "n_p0", "x1_max", "n_x1", "interp"}

    def grid_spec(self, lam: float | None = None) -> GridSpec:
        return GridSpec(lam=self.lam if lam is None else lam, **self.grid)

    def validate(self) -> "RunConfig":
        def real(name, v, positive=False, nonneg=False):
            if isinstance(v, bool) or not isinstance(v, (int, float)) or not math.isfinite(v):
                raise ConfigError(f"{name}: expected a finite number, got {v!r}")
            if positive and v <= 0:
                raise ConfigError(f"{name}: must be positive, got {v!r}")
            if nonneg and v < 0:
                raise ConfigError(f"{name}: must be non-negative, got {v!r}")

        real("lambda", self.lam, nonneg=True)
        real("mu", self.mu, positive=True)
        unknown = set(self.grid) - self._GRID_KEYS
        if unknown:
            raise ConfigError(f"grid: unknown keys {sorted(unknown)}")
        try:
            self.grid_spec()
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"grid: {exc}") from None
        unknown = set(self.tolerances) - set(DEFAULT_TOLERANCES)
        if unknown:
            raise ConfigError(f"tolerances: unknown keys {sorted(unknown)}")
        for k, v in self.tolerances.items():
            real(f"tolerances.{k}", v, nonneg=True)
        self.tolerances = {**DEFAULT_TOLERANCES, **self.tolerances}
        if not self.suites or any(s not in SUITES for s in self.suites):
            raise ConfigError(f"suites: expected a non-empty subset of {list(SUITES)}, got {self.suites!r}")
        if len(self.epsilons) < 3:
            raise ConfigError("epsilons: at least three values are needed for extrapolation")
        for e in self.epsilons:
            real("epsilons", e, positive=True)
        if not self.s_list:
            raise ConfigError("s_list: must not be empty")
        for s in self.s_list:
            real("s_list", s)
            if s <= 2:
                raise ConfigError(f"s_list: every s must exceed 2, got {s!r}")
        if (len(self.m_window) != 2 or not all(isinstance(m, int) for m in self.m_window)
                or self.m_window[0] > 1 or self.m_window[1] < 1):
            raise ConfigError("m_window: expected [lo, hi] integers with lo <= 1 <= hi")
        if not isinstance(self.fixtures, int) or self.fixtures < 3:
            raise ConfigError("fixtures: expected an integer >= 3")
        if not isinstance(self.seed, int) or isinstance(self.seed, bool):
            raise ConfigError("seed: expected an integer")
        return self

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "RunConfig":
        if not isinstance(d, dict):
            raise ConfigError("config: expected a JSON object")
        unknown = set(d) - cls._KEYS
        if unknown:
            raise ConfigError(f"config: unknown keys {sorted(unknown)}")
        version = d.get("schema_version", SCHEMA_VERSION)
        if version != SCHEMA_VERSION:
            raise ConfigError(f"schema_version: unsupported version {version!r}")
        cfg = cls()
        mapping = {"lambda": "lam"}
        for key, value in d.items():
            if key == "schema_version":
                continue
            attr = mapping.get(key, key)
            if key == "grid":
                if not isinstance(value, dict):
                    raise ConfigError("grid: expected an object")
                value = {**cfg.grid, **value}
            setattr(cfg, attr, value)
        return cfg.validate()

    @classmethod
    def load(cls, path: str | Path) -> "RunConfig":
        try:
            data = json.loads(Path(path).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"config: cannot read {path}: {exc}") from None
        return cls.from_dict(data)

    def to_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "lambda": self.lam,
            "mu": self.mu,
            "grid": dict(self.grid),
            "tolerances": dict(sorted(self.tolerances.items())),
            "suites": list(self.suites),
            "epsilons": list(self.epsilons),
            "s_list": list(self.s_list),
            "m_window": list(self.m_window),
            "fixtures": self.fixtures,
            "seed": self.seed,
            "out_dir": self.out_dir,
        }


def _clean(x: Any) -> Any:
    """JSON-safe, rounded to 10 significant digits so reports are stable."""
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        x = float(x)
        if not math.isfinite(x):
            return str(x)
        return float(f"{x:.10g}")
    if isinstance(x, (complex, np.complexfloating)):
        return [_clean(x.real), _clean(x.imag)]
    if isinstance(x, dict):
        return {str(k): _clean(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_clean(v) for v in x]
    return x


@dataclass
class PropertyRecord:
    name: str
    anchor: str
    defect: float
    tolerance: float
    passed: bool
    value: Any = None

    def to_dict(self) -> dict:
        d = {"name": self.name, "anchor": self.anchor, "defect": self.defect,
             "tolerance": self.tolerance, "pass": self.passed}
        if self.value is not None:
            d["value"] = self.value
        return _clean(d)


def check(name: str, anchor: str, defect: float, tolerance: float, value: Any = None) -> PropertyRecord:
    defect = float(defect)
    return PropertyRecord(name, anchor, defect, float(tolerance), bool(defect <= tolerance), value)


@dataclass
class VerificationReport:
    config: RunConfig
    suites: dict[str, list[PropertyRecord]] = field(default_factory=dict)
    diagnostics: dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(r.passed for recs in self.suites.values() for r in recs)

    def failures(self) -> list[tuple[str, PropertyRecord]]:
        return [(s, r) for s, recs in self.suites.items() for r in recs if not r.passed]

    def to_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "seed": self.config.seed,
            "config": self.config.to_dict(),
            "suites": {name: [r.to_dict() for r in recs] for name, recs in self.suites.items()},
            "diagnostics": _clean(self.diagnostics),
            "verdict": "pass" if self.passed else "fail",
            "runtime": {"python": platform.python_version(), "numpy": np.__version__},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True, ensure_ascii=False) + "\n"
