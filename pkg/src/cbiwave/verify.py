"""Independent checks of the c-biwave operator

    L_c u = u_xxxx - 2c u_xxyy + u_yyyy

by exact polynomial differentiation and by second-order finite differences
on uniform grids, plus the two-wave factorisation of L_c for c > 1.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .algebra import AlgebraParams, make_params
from .errors import GridTooSmall, WrongRegime
from .polynomial import Poly2D

MIN_POINTS = 5
MIN_POINTS_FACTORED = 9


@dataclass(frozen=True)
class ScalarGrid:
    """Samples ``values[ix, iy]`` of a field at ``(x0 + ix*hx, y0 + iy*hy)``.

    Entries outside the valid interior of a stencil result are NaN.
    """

    x0: float
    y0: float
    hx: float
    hy: float
    values: np.ndarray

    def __post_init__(self):
        if self.values.ndim != 2:
            raise ValueError("grid values must be a 2-D array")
        if not (self.hx > 0 and self.hy > 0):
            raise ValueError("grid spacings must be positive")

    @classmethod
    def sample(
        cls,
        func: Callable,
        x0: float = -1.0,
        x1: float = 1.0,
        nx: int = 65,
        y0: float = -1.0,
        y1: float = 1.0,
        ny: int = 65,
    ) -> "ScalarGrid":
        if nx < 2 or ny < 2:
            raise GridTooSmall(f"need at least 2 points per axis, got {nx}x{ny}")
        xs = np.linspace(x0, x1, nx)
        ys = np.linspace(y0, y1, ny)
        X, Y = np.meshgrid(xs, ys, indexing="ij")
        vals = np.asarray(func(X, Y), dtype=float) + np.zeros(X.shape)
        return cls(float(x0), float(y0), (x1 - x0) / (nx - 1), (y1 - y0) / (ny - 1), vals)

    @classmethod
    def sample_h(cls, func, h: float, region=(-1.0, 1.0, -1.0, 1.0)) -> "ScalarGrid":
        """Sample on ``region = (x0, x1, y0, y1)`` with spacing as close to ``h`` as fits."""
        x0, x1, y0, y1 = region
        nx = int(round((x1 - x0) / h)) + 1
        ny = int(round((y1 - y0) / h)) + 1
        return cls.sample(func, x0, x1, nx, y0, y1, ny)

    @property
    def nx(self) -> int:
        return self.values.shape[0]

    @property
    def ny(self) -> int:
        return self.values.shape[1]

    @property
    def xs(self) -> np.ndarray:
        return self.x0 + self.hx * np.arange(self.nx)

    @property
    def ys(self) -> np.ndarray:
        return self.y0 + self.hy * np.arange(self.ny)

    def mesh(self):
        return np.meshgrid(self.xs, self.ys, indexing="ij")

    def with_values(self, values: np.ndarray) -> "ScalarGrid":
        return ScalarGrid(self.x0, self.y0, self.hx, self.hy, values)

    def coarsened(self) -> "ScalarGrid":
        """Every other point in both directions (spacing doubled)."""
        return ScalarGrid(self.x0, self.y0, 2 * self.hx, 2 * self.hy, self.values[::2, ::2].copy())

    def interior(self, margin: int) -> np.ndarray:
        return self.values[margin : self.nx - margin, margin : self.ny - margin]

    def max_abs(self) -> float:
        """Max |value| over finite entries."""
        v = self.values[np.isfinite(self.values)]
        return float(np.max(np.abs(v), initial=0.0))


def _check_size(g: ScalarGrid, need: int) -> None:
    if g.nx < need or g.ny < need:
        raise GridTooSmall(f"{g.nx}x{g.ny}, need at least {need} points per axis")


# --------------------------------------------------------------------------
# Stencils.  Each returns a full-size array with NaN where the stencil does
# not fit, so compositions carry their margins along automatically.
# --------------------------------------------------------------------------


def _shifted(v: np.ndarray, weights: Sequence[float], axis: int) -> np.ndarray:
    r = len(weights) // 2
    n = v.shape[axis]
    out = np.full(v.shape, np.nan)
    acc = 0.0
    for k, w in enumerate(weights):
        sl = [slice(None)] * 2
        sl[axis] = slice(k, n - 2 * r + k)
        acc = acc + w * v[tuple(sl)]
    sl = [slice(None)] * 2
    sl[axis] = slice(r, n - r)
    out[tuple(sl)] = acc
    return out


def d1(v: np.ndarray, h: float, axis: int) -> np.ndarray:
    return _shifted(v, (-0.5, 0.0, 0.5), axis) / h


def d2(v: np.ndarray, h: float, axis: int) -> np.ndarray:
    return _shifted(v, (1.0, -2.0, 1.0), axis) / h**2


def d4(v: np.ndarray, h: float, axis: int) -> np.ndarray:
    return _shifted(v, (1.0, -4.0, 6.0, -4.0, 1.0), axis) / h**4


def fourth_derivative_terms(g: ScalarGrid):
    """(u_xxxx, u_xxyy, u_yyyy) by central differences, NaN outside margin 2."""
    v = g.values
    return d4(v, g.hx, 0), d2(d2(v, g.hy, 1), g.hx, 0), d4(v, g.hy, 1)


# --------------------------------------------------------------------------
# Operators
# --------------------------------------------------------------------------


def biwave_apply_poly(u: Poly2D, c: float) -> Poly2D:
    return u.diff(4, 0) - 2.0 * c * u.diff(2, 2) + u.diff(0, 4)


def biwave_residual_fd(g: ScalarGrid, c: float) -> ScalarGrid:
    _check_size(g, MIN_POINTS)
    uxxxx, uxxyy, uyyyy = fourth_derivative_terms(g)
    return g.with_values(uxxxx - 2.0 * c * uxxyy + uyyyy)


def residual_scale(g: ScalarGrid, c: float) -> float:
    """Magnitude estimate for the terms of L_c u, used to make residuals scale-free.

    The term-wise FD estimate is floored by max|u| / L**4 (L the larger side
    of the domain) so that fields with vanishing fourth derivatives are not
    normalised by pure rounding noise.
    """
    _check_size(g, MIN_POINTS)
    uxxxx, uxxyy, uyyyy = fourth_derivative_terms(g)
    terms = np.abs(uxxxx) + 2.0 * c * np.abs(uxxyy) + np.abs(uyyyy)
    est = float(np.nanmax(terms)) if np.isfinite(terms).any() else 0.0
    extent = max(g.hx * (g.nx - 1), g.hy * (g.ny - 1))
    return max(est, g.max_abs() / extent**4)


def wave_operator(g: ScalarGrid, inv_speed_sq: float) -> ScalarGrid:
    """(d_xx - s d_yy) u, with ``s`` the squared inverse speed in y."""
    v = g.values
    return g.with_values(d2(v, g.hx, 0) - inv_speed_sq * d2(v, g.hy, 1))


class FactorOrder(str, enum.Enum):
    FIRST_THEN_SECOND = "first-then-second"
    SECOND_THEN_FIRST = "second-then-first"


def wave_factor_speeds(p: AlgebraParams) -> tuple[float, float]:
    """Squared inverse y-speeds (2/k2^2, 2/k1^2) of the y1- and y2-wave factors."""
    return 2.0 / p.k2**2, 2.0 / p.k1**2


def wave_factor_apply(g: ScalarGrid, c: float, order: FactorOrder = FactorOrder.FIRST_THEN_SECOND) -> ScalarGrid:
    """Apply the two rescaled wave operators in sequence.

    Their product is L_c exactly: 2/k1^2 + 2/k2^2 = 2c and 4/(k1 k2)^2 = 1.
    """
    p = make_params(c)
    if not p.hyperbolic:
        raise WrongRegime(f"real wave factorisation needs c > 1, got c={c!r}")
    _check_size(g, MIN_POINTS_FACTORED)
    s1, s2 = wave_factor_speeds(p)
    if FactorOrder(order) is FactorOrder.SECOND_THEN_FIRST:
        s1, s2 = s2, s1
    return wave_operator(wave_operator(g, s1), s2)


def wave_factorization_residual(g: ScalarGrid, c: float, order: FactorOrder = FactorOrder.FIRST_THEN_SECOND) -> ScalarGrid:
    """Factored minus direct application of L_c on the common interior."""
    factored = wave_factor_apply(g, c, order)
    direct = biwave_residual_fd(g, c)
    return g.with_values(factored.values - direct.values)


def characteristic_roots(p: AlgebraParams) -> np.ndarray:
    """The four lambda with lambda^4 - 2c lambda^2 + 1 = 0, i.e. +-k1/sqrt2, +-k2/sqrt2.

    Any phi(x + lambda y) is annihilated by L_c.
    """
    s2, s1 = complex(p.slope2), complex(p.slope1)
    return np.array([s2, -s2, s1, -s1], dtype=complex)


def characteristic_polynomial(lam, c: float):
    return lam**4 - 2.0 * c * lam**2 + 1.0


def interior_max(g: ScalarGrid) -> float:
    v = g.values[np.isfinite(g.values)]
    if v.size == 0:
        raise GridTooSmall("no interior points left after the stencil margin")
    return float(np.max(np.abs(v)))


def convergence_orders(errors: Sequence[float], ratio: float = 2.0) -> list[float]:
    """Observed orders log(e_k / e_{k+1}) / log(ratio) for successive refinements."""
    return [math.log(a / b) / math.log(ratio) for a, b in zip(errors, errors[1:])]
