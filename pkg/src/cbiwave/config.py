"""Run configuration documents and the CSV grid format.

A config is a JSON object::

    {
      "c": 5,
      "grid": {"x0": -1, "x1": 1, "nx": 65, "y0": -1, "y1": 1, "ny": 65},
      "solution": {"type": "hyperbolic", "g1": {"kind": "polynomial", "coeffs": [0, 0, 1]}},
      "verify": {"tolerance": 1e-6, "refine": 0}
    }

``solution.type`` is ``hyperbolic`` (profiles g1, g2, F1, F2), ``elliptic``
(``alpha``, ``beta`` and selectors ``i``, ``j``) or ``monogenic`` (``alpha``,
``beta`` and a component index ``component`` in 1..4; for c > 1 alpha and beta
are ``{"p": profile, "q": profile}`` pairs).  Complex numbers are written as a
plain number or a ``[re, im]`` pair.
"""

from __future__ import annotations

import io
import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Union

import numpy as np

from . import analytic as an
from .algebra import AlgebraParams, make_params
from .errors import BiwaveError, ConfigError, GridTooSmall
from .synthesis import (
    EllipticSolutionSpec,
    Field,
    HyperbolicSolutionSpec,
    solution_components_from_monogenic,
    synth_elliptic,
    synth_hyperbolic,
)
from .verify import MIN_POINTS, ScalarGrid

DEFAULT_TOLERANCE = 1e-6

PROFILE_KINDS = {
    "polynomial": (an.Polynomial, {"coeffs": "real_list"}),
    "sine": (an.Sine, {"amplitude": "real", "frequency": "real", "phase": "real"}),
    "exponential": (an.Exponential, {"amplitude": "real", "rate": "real"}),
    "gaussian": (an.Gaussian, {"amplitude": "real", "center": "real", "width": "real"}),
}

ANALYTIC_KINDS = {
    "polynomial": (an.ComplexPolynomial, {"coeffs": "complex_list"}),
    "exp": (an.ScaledExp, {"a": "complex", "amplitude": "complex"}),
    "sine": (an.ScaledSine, {"a": "complex", "amplitude": "complex"}),
    "gaussian": (an.ComplexGaussian, {"amplitude": "complex", "center": "complex", "width": "real"}),
}


@dataclass(frozen=True)
class GridSpec:
    x0: float = -1.0
    x1: float = 1.0
    nx: int = 65
    y0: float = -1.0
    y1: float = 1.0
    ny: int = 65

    @property
    def region(self):
        return (self.x0, self.x1, self.y0, self.y1)

    def refined(self, levels: int) -> "GridSpec":
        n = lambda k: (k - 1) * 2**levels + 1  # noqa: E731
        return GridSpec(self.x0, self.x1, n(self.nx), self.y0, self.y1, n(self.ny))


@dataclass(frozen=True)
class MonogenicSolutionSpec:
    alpha: Any
    beta: Any
    component: int = 1


@dataclass(frozen=True)
class VerifyOptions:
    tolerance: float = DEFAULT_TOLERANCE
    refine: int = 0


@dataclass(frozen=True)
class RunConfig:
    c: float
    grid: GridSpec
    solution: Union[HyperbolicSolutionSpec, EllipticSolutionSpec, MonogenicSolutionSpec]
    verify: VerifyOptions = field(default_factory=VerifyOptions)

    @property
    def params(self) -> AlgebraParams:
        return make_params(self.c)


# --------------------------------------------------------------------------
# Parsing helpers; every failure names the JSON path of the bad field
# --------------------------------------------------------------------------


def _real(v, path):
    if isinstance(v, bool) or not isinstance(v, (int, float)) or not math.isfinite(v):
        raise ConfigError(path, f"expected a finite number, got {v!r}")
    return float(v)


def _complex(v, path):
    if isinstance(v, list):
        if len(v) != 2:
            raise ConfigError(path, "complex numbers are [re, im] pairs")
        return complex(_real(v[0], f"{path}[0]"), _real(v[1], f"{path}[1]"))
    return complex(_real(v, path))


def _int(v, path, lo=None, hi=None):
    if isinstance(v, bool) or not isinstance(v, int):
        raise ConfigError(path, f"expected an integer, got {v!r}")
    if (lo is not None and v < lo) or (hi is not None and v > hi):
        raise ConfigError(path, f"must lie in [{lo}, {hi}], got {v}")
    return v


def _obj(v, path):
    if not isinstance(v, dict):
        raise ConfigError(path, f"expected an object, got {type(v).__name__}")
    return v


def _convert(kind, v, path):
    if kind == "real":
        return _real(v, path)
    if kind == "complex":
        return _complex(v, path)
    if not isinstance(v, list) or not v:
        raise ConfigError(path, "expected a non-empty list of coefficients")
    conv = _real if kind == "real_list" else _complex
    return tuple(conv(x, f"{path}[{i}]") for i, x in enumerate(v))


def _parse_function(doc, path, kinds):
    doc = _obj(doc, path)
    kind = doc.get("kind")
    if kind not in kinds:
        raise ConfigError(f"{path}.kind", f"unknown kind {kind!r}; expected one of {sorted(kinds)}")
    cls, fields = kinds[kind]
    unknown = set(doc) - set(fields) - {"kind"}
    if unknown:
        raise ConfigError(path, f"unknown field(s) {sorted(unknown)}")
    kwargs = {name: _convert(t, doc[name], f"{path}.{name}") for name, t in fields.items() if name in doc}
    try:
        return cls(**kwargs)
    except ValueError as exc:
        raise ConfigError(path, str(exc)) from None


def parse_profile(doc, path="profile") -> an.Profile1D:
    return _parse_function(doc, path, PROFILE_KINDS)


def parse_analytic(doc, path="analytic") -> an.ComplexAnalytic:
    return _parse_function(doc, path, ANALYTIC_KINDS)


def _parse_split(doc, path) -> an.SplitAnalytic:
    doc = _obj(doc, path)
    unknown = set(doc) - {"p", "q"}
    if unknown:
        raise ConfigError(path, f"unknown field(s) {sorted(unknown)}")
    return an.SplitAnalytic(
        parse_profile(doc["p"], f"{path}.p") if "p" in doc else an.ZERO,
        parse_profile(doc["q"], f"{path}.q") if "q" in doc else an.ZERO,
    )


def _parse_grid(doc, path="grid") -> GridSpec:
    doc = _obj(doc, path)
    vals = {}
    for name in ("x0", "x1", "y0", "y1"):
        if name not in doc:
            raise ConfigError(f"{path}.{name}", "missing")
        vals[name] = _real(doc[name], f"{path}.{name}")
    for name in ("nx", "ny"):
        if name not in doc:
            raise ConfigError(f"{path}.{name}", "missing")
        vals[name] = _int(doc[name], f"{path}.{name}", lo=MIN_POINTS)
    if not vals["x0"] < vals["x1"]:
        raise ConfigError(f"{path}.x1", "must be greater than x0")
    if not vals["y0"] < vals["y1"]:
        raise ConfigError(f"{path}.y1", "must be greater than y0")
    return GridSpec(**vals)


HYPER_KEYS = {"g1", "g2", "F1", "F2"}
ELLIPTIC_KEYS = {"alpha", "beta", "i", "j"}


def _parse_solution(doc, params: AlgebraParams, path="solution"):
    doc = _obj(doc, path)
    kind = doc.get("type")
    if kind is None:
        kind = "hyperbolic" if set(doc) & HYPER_KEYS else "elliptic"
    regime = params.regime.value
    if kind in ("hyperbolic", "elliptic") and kind != regime:
        raise ConfigError(f"{path}.type", f"{kind} solution does not match c={params.c!r} ({regime})")
    if kind == "hyperbolic":
        unknown = set(doc) - HYPER_KEYS - {"type"}
        if unknown:
            raise ConfigError(path, f"unknown field(s) {sorted(unknown)}")
        return HyperbolicSolutionSpec(
            **{k: parse_profile(doc[k], f"{path}.{k}") for k in HYPER_KEYS if k in doc}
        )
    if kind == "elliptic":
        unknown = set(doc) - ELLIPTIC_KEYS - {"type"}
        if unknown:
            raise ConfigError(path, f"unknown field(s) {sorted(unknown)}")
        kw = {k: parse_analytic(doc[k], f"{path}.{k}") for k in ("alpha", "beta") if k in doc}
        for k in ("i", "j"):
            if k in doc:
                kw[k] = _int(doc[k], f"{path}.{k}", 1, 2)
        return EllipticSolutionSpec(**kw)
    if kind == "monogenic":
        unknown = set(doc) - {"type", "alpha", "beta", "component"}
        if unknown:
            raise ConfigError(path, f"unknown field(s) {sorted(unknown)}")
        comp = _int(doc.get("component", 1), f"{path}.component", 1, 4)
        if params.hyperbolic:
            parse = _parse_split
            default = an.SplitAnalytic()
        else:
            parse = parse_analytic
            default = an.CZERO
        a = parse(doc["alpha"], f"{path}.alpha") if "alpha" in doc else default
        b = parse(doc["beta"], f"{path}.beta") if "beta" in doc else default
        return MonogenicSolutionSpec(a, b, comp)
    raise ConfigError(f"{path}.type", f"unknown solution type {kind!r}")


def _parse_verify(doc, path="verify") -> VerifyOptions:
    doc = _obj(doc, path)
    tol = _real(doc.get("tolerance", DEFAULT_TOLERANCE), f"{path}.tolerance")
    if tol <= 0:
        raise ConfigError(f"{path}.tolerance", "must be positive")
    return VerifyOptions(tol, _int(doc.get("refine", 0), f"{path}.refine", 0, 4))


def parse_config(doc) -> RunConfig:
    doc = _obj(doc, "$")
    unknown = set(doc) - {"c", "grid", "solution", "verify", "description"}
    if unknown:
        raise ConfigError("$", f"unknown top-level field(s) {sorted(unknown)}")
    for key in ("c", "grid", "solution"):
        if key not in doc:
            raise ConfigError(key, "missing")
    c = _real(doc["c"], "c")
    try:
        params = make_params(c)
    except BiwaveError as exc:
        raise ConfigError("c", str(exc)) from None
    return RunConfig(
        c=c,
        grid=_parse_grid(doc["grid"]),
        solution=_parse_solution(doc["solution"], params),
        verify=_parse_verify(doc.get("verify", {})),
    )


def load_config(path) -> RunConfig:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(str(path), f"cannot read config: {exc.strerror}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(str(path), f"invalid JSON: {exc}") from None
    return parse_config(doc)


def build_field(cfg: RunConfig) -> Field:
    sol = cfg.solution
    if isinstance(sol, HyperbolicSolutionSpec):
        return synth_hyperbolic(sol, cfg.c)
    if isinstance(sol, EllipticSolutionSpec):
        return synth_elliptic(sol, cfg.c)
    return solution_components_from_monogenic(cfg.params, sol.alpha, sol.beta, sol.component)


def sample_config(cfg: RunConfig, refine: int = 0) -> ScalarGrid:
    g = cfg.grid.refined(refine)
    return ScalarGrid.sample(build_field(cfg), g.x0, g.x1, g.nx, g.y0, g.y1, g.ny)


# --------------------------------------------------------------------------
# CSV grids: header "x,y,u", row-major with y varying fastest
# --------------------------------------------------------------------------


class GridFormatError(ConfigError):
    pass


def format_csv(g: ScalarGrid) -> str:
    X, Y = g.mesh()
    buf = io.StringIO()
    buf.write("x,y,u\n")
    for x, y, v in zip(X.ravel(), Y.ravel(), g.values.ravel()):
        buf.write(f"{x:.16e},{y:.16e},{v:.16e}\n")
    return buf.getvalue()


def write_csv(g: ScalarGrid, path) -> None:
    with open(path, "w", newline="\n") as fh:
        fh.write(format_csv(g))


def parse_csv(text: str, source: str = "<csv>") -> ScalarGrid:
    lines = text.splitlines()
    if not lines or [h.strip() for h in lines[0].split(",")] != ["x", "y", "u"]:
        raise GridFormatError(source, "expected header line 'x,y,u'")
    body = [ln for ln in lines[1:] if ln.strip()]
    try:
        data = np.array([[float(f) for f in ln.split(",")] for ln in body], dtype=float)
    except ValueError as exc:
        raise GridFormatError(source, f"unparseable value: {exc}") from None
    if data.size == 0:
        raise GridTooSmall(f"{source}: no data rows")
    if data.ndim != 2 or data.shape[1] != 3:
        raise GridFormatError(source, "every row needs exactly three fields")
    xs = np.unique(data[:, 0])
    ys = np.unique(data[:, 1])
    nx, ny = len(xs), len(ys)
    if nx * ny != len(data):
        raise GridFormatError(source, f"{len(data)} rows do not form a {nx}x{ny} tensor grid")
    if nx < MIN_POINTS or ny < MIN_POINTS:
        raise GridTooSmall(f"{source}: {nx}x{ny}, need at least {MIN_POINTS} points per axis")
    if not (np.array_equal(data[:, 0], np.repeat(xs, ny)) and np.array_equal(data[:, 1], np.tile(ys, nx))):
        raise GridFormatError(source, "rows must be ordered by x, then y (y varying fastest)")
    hx = (xs[-1] - xs[0]) / (nx - 1)
    hy = (ys[-1] - ys[0]) / (ny - 1)
    if np.max(np.abs(np.diff(xs) - hx)) > 1e-9 * max(1.0, abs(hx)) or np.max(np.abs(np.diff(ys) - hy)) > 1e-9 * max(1.0, abs(hy)):
        raise GridFormatError(source, "grid spacing is not uniform")
    return ScalarGrid(float(xs[0]), float(ys[0]), float(hx), float(hy), data[:, 2].reshape(nx, ny))


def read_csv(path) -> ScalarGrid:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise GridFormatError(str(path), f"cannot read grid: {exc.strerror}") from None
    return parse_csv(text, str(path))
