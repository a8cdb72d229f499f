"""``kappa-triple`` command line: verify, zeta, residue, classify, dirac, kernel."""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from pathlib import Path

from . import hopf as H
from .config import ConfigError, RunConfig, _clean
from .family import TestFunctionFamily
from .suites import run_verification
from .zeta import ZetaParams, c_closed_form, c_quadrature, phi_residue, zeta_kernel_trace

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _float_list(text: str) -> list[float]:
    items = [t for t in (x.strip() for x in text.split(",")) if t]
    try:
        return [float(t) for t in items]
    except ValueError:
        raise InputError(f"s_list: cannot parse {text!r}") from None


def build_config(args: argparse.Namespace) -> RunConfig:
    data: dict = {}
    if getattr(args, "config", None):
        try:
            data = json.loads(Path(args.config).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"config: cannot read {args.config}: {exc}") from None
        if not isinstance(data, dict):
            raise ConfigError("config: expected a JSON object")
    overrides = {
        "lambda": getattr(args, "lam", None),
        "mu": getattr(args, "mu", None),
        "seed": getattr(args, "seed", None),
        "out_dir": getattr(args, "out", None),
    }
    data.update({k: v for k, v in overrides.items() if v is not None})
    if getattr(args, "suite", None):
        data["suites"] = [s for part in args.suite for s in part.split(",") if s]
    if getattr(args, "s_list", None) is not None:
        data["s_list"] = _float_list(args.s_list)
    return RunConfig.from_dict(data)


def _out_dir(cfg: RunConfig) -> Path:
    path = Path(cfg.out_dir)
    path.mkdir(parents=True, exist_ok=True)
    return path


def _write_json(path: Path, payload) -> None:
    path.write_text(json.dumps(_clean(payload), indent=2, sort_keys=True, ensure_ascii=False) + "\n")


def _positive_lambda(cfg: RunConfig) -> float:
    if cfg.lam <= 0:
        raise ConfigError("lambda: must be positive for this command")
    return cfg.lam


# --------------------------------------------------------------------------
# commands
# --------------------------------------------------------------------------


def cmd_verify(args) -> int:
    cfg = build_config(args)
    report = run_verification(cfg, parallel=not args.serial)
    path = _out_dir(cfg) / "report.json"
    path.write_text(report.to_json())
    for suite, recs in report.suites.items():
        for r in recs:
            print(f"[{'PASS' if r.passed else 'FAIL'}] {suite}: {r.name}  defect={r.defect:.3g} tol={r.tolerance:.3g}")
    print(f"verdict: {'pass' if report.passed else 'fail'}  ({path})")
    return EXIT_OK if report.passed else EXIT_FAIL


def zeta_table(cfg: RunConfig) -> list[list[float]]:
    lam = _positive_lambda(cfg)
    rows = []
    for s in cfg.s_list:
        p = ZetaParams(lam, cfg.mu, s)
        a, b = c_closed_form(p), c_quadrature(p)
        rows.append([lam, cfg.mu, s, a, b, abs(a - b) / abs(a)])
    return rows


def residue_curve(cfg: RunConfig) -> list[tuple[float, float]]:
    """``(s, (s - 2) c(s))`` from the epsilon ladder up through the s-list."""
    lam = _positive_lambda(cfg)
    ss = sorted({2 + e for e in cfg.epsilons} | set(cfg.s_list) | {2.05, 2.1, 2.2, 2.5})
    return [(s, (s - 2) * c_closed_form(ZetaParams(lam, cfg.mu, s))) for s in ss]


def _fmt(x: float) -> str:
    return f"{x:.12g}"


def cmd_zeta(args) -> int:
    cfg = build_config(args)
    rows = zeta_table(cfg)
    out = _out_dir(cfg)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["lambda", "mu", "s", "c_closed", "c_quadrature", "rel_gap"])
    for r in rows:
        w.writerow([_fmt(v) for v in r])
    (out / "zeta.csv").write_text(buf.getvalue())
    curve = residue_curve(cfg)
    (out / "residue_curve.dat").write_text("".join(f"{_fmt(s)} {_fmt(v)}\n" for s, v in curve))
    sys.stdout.write(buf.getvalue())
    print(f"(s-2)c(s) at s={curve[0][0]:g}: {curve[0][1]:.10f}   1/(4pi) = {1 / (4 * math.pi):.10f}")
    tol = cfg.tolerances["c_gap"]
    return EXIT_OK if all(r[5] <= tol for r in rows) else EXIT_FAIL


def cmd_residue(args) -> int:
    cfg = build_config(args)
    lam = _positive_lambda(cfg)
    grid = cfg.grid_spec(lam)
    fixtures = {k: p.sample(grid) for k, p in TestFunctionFamily.named_fixtures().items()}
    rep = phi_residue(fixtures, ZetaParams(lam, cfg.mu, 3.0), cfg.epsilons)
    payload = rep.to_dict()
    payload.update({"lambda": lam, "mu": cfg.mu, "target_c_residue": 1 / (4 * math.pi), "epsilons": cfg.epsilons})
    _write_json(_out_dir(cfg) / "residue.json", payload)
    ok_c = abs(rep.extrapolated_residue * 4 * math.pi - 1) <= cfg.tolerances["residue_c"]
    print(f"extrapolated (s-2)c(s) = {rep.extrapolated_residue:.12f}  (1/(4pi) = {1 / (4 * math.pi):.12f})")
    ok_phi = True
    for name, (value, om, ratio) in rep.phi_residue_per_function.items():
        good = math.isnan(ratio.real) or abs(ratio - 1) <= cfg.tolerances["residue_phi"]
        ok_phi &= good
        print(f"  {name:10s} omega={om.real:+.6f}{om.imag:+.6f}i  ratio={ratio.real:.9f}  {'ok' if good else 'off'}")
    return EXIT_OK if ok_c and ok_phi else EXIT_FAIL


def cmd_classify(args) -> int:
    if args.degree < 1:
        raise InputError(f"degree: must be >= 1, got {args.degree}")
    if args.max_e < 0:
        raise InputError(f"max-e: must be >= 0, got {args.max_e}")
    basis = H.classify_twisted_primitives(args.m, args.degree, args.max_e)
    print(", ".join(str(b) for b in basis))
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        _write_json(out / "classify.json", {
            "m": args.m, "degree": args.degree, "max_E_power": args.max_e,
            "basis": [H.element_to_json(b) for b in basis],
        })
    return EXIT_OK


def cmd_dirac(args) -> int:
    try:
        sol = H.solve_dirac_uniqueness()
    except H.InconsistencyError as exc:
        print(f"non-unique or missing solution: {exc}", file=sys.stderr)
        return EXIT_FAIL
    print(f"D0 = {sol.D0}; D1 = {sol.D1}; sigma = {sol.sigma}")
    for line in sol.ledger:
        print(f"  {line}")
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        _write_json(out / "dirac.json", {
            "D0": H.element_to_json(sol.D0), "D1": H.element_to_json(sol.D1),
            "sigma": H.element_to_json(sol.sigma), "ledger": sol.ledger,
        })
    return EXIT_OK


def cmd_kernel(args) -> int:
    cfg = build_config(args)
    lam = _positive_lambda(cfg)
    grid = cfg.grid_spec(lam)
    fixtures = TestFunctionFamily.named_fixtures()
    if args.fixture not in fixtures:
        raise InputError(f"fixture: expected one of {sorted(fixtures)}, got {args.fixture!r}")
    f = fixtures[args.fixture].sample(grid)
    s = cfg.s_list[0]
    trace, factorized = zeta_kernel_trace(f, ZetaParams(lam, cfg.mu, s), rtol=1e-7)
    gap = abs(trace - factorized) / abs(factorized)
    _write_json(_out_dir(cfg) / "kernel.json", {
        "fixture": args.fixture, "lambda": lam, "mu": cfg.mu, "s": s,
        "diagonal_trace": trace, "omega_times_c": factorized, "rel_gap": gap,
    })
    print(f"diagonal trace = {trace.real:.12g}{trace.imag:+.3g}i  omega(f) c(s) = {factorized.real:.12g}  rel_gap = {gap:.3g}")
    return EXIT_OK if gap <= cfg.tolerances["kernel_trace"] else EXIT_FAIL


# --------------------------------------------------------------------------
# parser
# --------------------------------------------------------------------------


def _common(p: argparse.ArgumentParser, s_list: bool = False) -> None:
    p.add_argument("--config", metavar="PATH", help="JSON run configuration")
    p.add_argument("--lambda", dest="lam", type=float, metavar="X", help="deformation parameter")
    p.add_argument("--mu", type=float, metavar="X", help="mass parameter in (D^2 + mu^2)^(-s/2)")
    p.add_argument("--seed", type=int, metavar="N", help="fixture seed")
    p.add_argument("--out", metavar="DIR", help="output directory")
    if s_list:
        p.add_argument("--s-list", dest="s_list", metavar="a,b,c", help="comma separated s values (> 2)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="kappa-triple", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="run verification suites and write report.json")
    _common(p)
    p.add_argument("--suite", action="append", metavar="NAME", help="suite name(s); repeatable or comma separated")
    p.add_argument("--serial", action="store_true", help="run suites in this process")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("zeta", help="tabulate c(s): closed form vs quadrature")
    _common(p, s_list=True)
    p.set_defaults(func=cmd_zeta)

    p = sub.add_parser("residue", help="residues at s = 2 for the named fixtures")
    _common(p)
    p.set_defaults(func=cmd_residue)

    p = sub.add_parser("classify", help="twisted primitive elements for E^m")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--degree", type=int, default=3)
    p.add_argument("--max-e", dest="max_e", type=int, default=3, help="E-power window")
    p.add_argument("--out", metavar="DIR")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("dirac", help="derive the Dirac operator and print the constraint ledger")
    p.add_argument("--out", metavar="DIR")
    p.set_defaults(func=cmd_dirac)

    p = sub.add_parser("kernel", help="diagonal trace of the Schwartz kernel against omega(f) c(s)")
    _common(p, s_list=True)
    p.add_argument("--fixture", default="gauss")
    p.set_defaults(func=cmd_kernel)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (ConfigError, InputError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
