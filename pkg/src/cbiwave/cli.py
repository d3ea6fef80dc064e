"""Command-line front end: ``cbiwave {info,synth,verify,selftest}``.

Exit codes: 0 success / PASS, 1 verification failure or I/O error,
2 invalid input.
"""

from __future__ import annotations

import argparse
import contextlib
import math
import sys
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import algebra as al
from .config import load_config, read_csv, sample_config, write_csv
from .errors import BiwaveError, ConfigError, GridTooSmall
from .verify import (
    MIN_POINTS_FACTORED,
    FactorOrder,
    ScalarGrid,
    biwave_residual_fd,
    characteristic_roots,
    convergence_orders,
    interior_max,
    residual_scale,
    wave_factorization_residual,
)

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2
ORDER_BAND = (1.3, 2.7)


def _fmt(z) -> str:
    z = complex(z)
    if abs(z.imag) < 1e-15:
        return f"{z.real:.10f}"
    return f"{z.real:.10f}{z.imag:+.10f}i"


def _element_line(el) -> str:
    if isinstance(el, al.HyperElement):
        names, coords = al.HYPER_BASIS, el.coords
    else:
        names, coords = ("u", "e"), el.coords
    return "  ".join(f"{n}={_fmt(v)}" for n, v in zip(names, coords))


def info_report(c: float) -> list[str]:
    p = al.make_params(c)
    lines = [f"regime: {p.regime.value}", f"c: {p.c:.10g}"]
    if p.hyperbolic:
        lines.append(f"m: {p.m:.10f}")
    else:
        lines.append(f"mu: {p.mu:.10f}")
    lines += [f"k1: {_fmt(p.k1)}", f"k2: {_fmt(p.k2)}"]
    first, second = al.idempotents(p)
    names = ("i1", "i2") if p.hyperbolic else ("I-", "I+")
    lines += [f"idempotent {names[0]}: {_element_line(first)}", f"idempotent {names[1]}: {_element_line(second)}"]
    lines.append("characteristic roots: " + ", ".join(_fmt(r) for r in characteristic_roots(p)))
    if p.elliptic:
        lines.append(f"trace-form det: {_fmt(al.trace_form_det(p))}")
    return lines


# --------------------------------------------------------------------------
# verification
# --------------------------------------------------------------------------


@dataclass
class VerifyResult:
    passed: bool
    lines: list


def rounding_floor(g: ScalarGrid, c: float) -> float:
    """Worst-case rounding contribution of the fourth-difference stencils."""
    hx, hy = g.hx, g.hy
    weight = 16.0 * (1.0 / hx**4 + 2.0 * c / (hx * hx * hy * hy) + 1.0 / hy**4)
    return float(np.finfo(float).eps * g.max_abs() * weight)


def verify_grids(grids: list[ScalarGrid], c: float, tolerance: float) -> VerifyResult:
    """``grids`` run coarse to fine; PASS is judged on the finest one."""
    fine = grids[-1]
    res = biwave_residual_fd(fine, c)
    raw = interior_max(res)
    scale = residual_scale(fine, c)
    scaled = raw / scale if scale > 0 else raw
    floor = rounding_floor(fine, c)
    lines = [
        f"grid: {fine.nx}x{fine.ny}, hx={fine.hx:.6g}, hy={fine.hy:.6g}",
        f"c: {c:.10g}",
        f"biwave residual (max interior): {raw:.6e}",
        f"residual scale: {scale:.6e}",
        f"scaled residual: {scaled:.6e} (tolerance {tolerance:.3e})",
        f"rounding floor: {floor:.6e}",
    ]
    passed = scaled <= tolerance
    if c > 1 and fine.nx >= MIN_POINTS_FACTORED and fine.ny >= MIN_POINTS_FACTORED:
        for order in FactorOrder:
            diff = interior_max(wave_factorization_residual(fine, c, order))
            lines.append(f"factorization residual ({order.value}): {diff / scale if scale > 0 else diff:.6e}")
    if len(grids) > 1:
        errs = [interior_max(biwave_residual_fd(g, c)) for g in grids]
        lines.append("refinement residuals: " + ", ".join(f"{e:.6e}" for e in errs))
        if raw <= floor:
            lines.append("refinement order: skipped (residual at rounding floor)")
        elif min(errs) <= 0.0:
            lines.append("refinement order: skipped (zero residual)")
        else:
            orders = convergence_orders(errs)
            ok = ORDER_BAND[0] <= orders[-1] <= ORDER_BAND[1]
            lines.append(
                "refinement orders: " + ", ".join(f"{o:.3f}" for o in orders)
                + f" ({'within' if ok else 'outside'} [{ORDER_BAND[0]}, {ORDER_BAND[1]}])"
            )
            passed = passed and ok
    lines.append("PASS" if passed else "FAIL")
    return VerifyResult(passed, lines)


# --------------------------------------------------------------------------
# commands
# --------------------------------------------------------------------------


def _err(msg: str) -> None:
    print(f"error: {msg}", file=sys.stderr)


def cmd_info(args) -> int:
    try:
        lines = info_report(args.c)
    except BiwaveError as exc:
        _err(str(exc))
        return EXIT_INPUT
    print("\n".join(lines))
    return EXIT_OK


def cmd_synth(args) -> int:
    try:
        cfg = load_config(args.config)
        g = sample_config(cfg)
    except BiwaveError as exc:
        _err(str(exc))
        return EXIT_INPUT
    try:
        write_csv(g, args.output)
    except OSError as exc:
        _err(f"cannot write {args.output}: {exc.strerror}")
        return EXIT_FAIL
    print(f"wrote {args.output}")
    print(f"grid: {g.nx}x{g.ny} on [{cfg.grid.x0:g}, {cfg.grid.x1:g}] x [{cfg.grid.y0:g}, {cfg.grid.y1:g}]")
    print(f"min: {float(np.min(g.values)):.10g}")
    print(f"max: {float(np.max(g.values)):.10g}")
    return EXIT_OK


def cmd_verify(args) -> int:
    try:
        if args.config:
            cfg = load_config(args.config)
            c = cfg.c
            tol = args.tolerance if args.tolerance is not None else cfg.verify.tolerance
            refine = args.refine if args.refine is not None else cfg.verify.refine
            grids = [sample_config(cfg, k) for k in range(refine + 1)]
        else:
            if args.grid is None:
                raise ConfigError("grid", "give a CSV path or --config")
            if args.c is None:
                raise ConfigError("--c", "verifying a CSV grid needs --c")
            c = args.c
            al.make_params(c)
            tol = args.tolerance if args.tolerance is not None else 1e-6
            refine = args.refine or 0
            grids = [read_csv(args.grid)]
            for _ in range(refine):
                grids.insert(0, grids[0].coarsened())
        if not (tol > 0 and math.isfinite(tol)):
            raise ConfigError("--tolerance", "must be positive")
        result = verify_grids(grids, c, tol)
    except GridTooSmall as exc:
        _err(f"grid too small: {exc}")
        return EXIT_INPUT
    except BiwaveError as exc:
        _err(str(exc))
        return EXIT_INPUT
    print("\n".join(result.lines))
    return EXIT_OK if result.passed else EXIT_FAIL


def cmd_selftest(args) -> int:
    from .selftest import run_selftest

    fault = al.cayley_fault() if args.inject_fault == "cayley" else contextlib.nullcontext()
    with fault:
        ok = run_selftest(args.seed)
    return EXIT_OK if ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cbiwave", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("info", help="print the algebra constants for a given c")
    p.add_argument("--c", type=float, required=True)
    p.set_defaults(func=cmd_info)

    p = sub.add_parser("synth", help="sample a constructed solution to CSV")
    p.add_argument("--config", required=True)
    p.add_argument("--output", required=True)
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("verify", help="check a grid against the biwave operator")
    p.add_argument("grid", nargs="?", help="CSV file with header x,y,u")
    p.add_argument("--config")
    p.add_argument("--c", type=float)
    p.add_argument("--tolerance", type=float)
    p.add_argument("--refine", type=int, choices=range(0, 5))
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("selftest", help="run the seeded invariant battery")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--inject-fault", choices=["cayley"], help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv: Optional[list] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors, which matches our invalid-input code
        return int(exc.code or 0)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
