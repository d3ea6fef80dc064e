"""Constructive solutions of u_xxxx - 2c u_xxyy + u_yyyy = 0.

Hyperbolic (c > 1): four profiles riding the two real characteristic
families,

    u = g1(x + y2) + g2(x - y2) + kappa (F1(x + y1) + F2(x - y1)),
    y1 = -(k2/sqrt2) y,  y2 = (k1/sqrt2) y,  kappa = k1^2 / (k1^2 - k2^2).

Elliptic (0 < c < 1): real or imaginary parts of complex analytic functions
of w1 = x + (k2/sqrt2) y and w2 = x - (k1/sqrt2) y.

Every constructor returns a :class:`Field`, a vectorised sampler that also
carries its exact :class:`~cbiwave.polynomial.Poly2D` expansion whenever all
ingredients are polynomial.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .algebra import (
    AlgebraParams,
    Regime,
    _require,
    elliptic_structure_constants,
    hyper_structure_constants,
    idempotents,
    make_params,
)
from .analytic import (
    CZERO,
    ZERO,
    ComplexAnalytic,
    Profile1D,
    SplitAnalytic,
    monogenic_components_elliptic,
    monogenic_components_hyper,
)
from .errors import WrongRegime
from .polynomial import Poly2D
from .verify import ScalarGrid, wave_operator

DEFAULT_REGION = (-1.0, 1.0, -1.0, 1.0)
DEFAULT_POINTS = 65


@dataclass(frozen=True)
class Field:
    func: Callable
    poly: Optional[Poly2D] = None

    def __call__(self, x, y):
        x, y = np.asarray(x, dtype=float), np.asarray(y, dtype=float)
        return np.asarray(self.func(x, y), dtype=float) + np.zeros(np.broadcast(x, y).shape)

    def __add__(self, other: "Field") -> "Field":
        poly = self.poly + other.poly if self.poly is not None and other.poly is not None else None
        return Field(lambda x, y: self(x, y) + other(x, y), poly)

    def __rmul__(self, s: float) -> "Field":
        return Field(lambda x, y: s * self(x, y), None if self.poly is None else s * self.poly)

    def grid(self, region=DEFAULT_REGION, nx: int = DEFAULT_POINTS, ny: int = DEFAULT_POINTS) -> ScalarGrid:
        x0, x1, y0, y1 = region
        return ScalarGrid.sample(self, x0, x1, nx, y0, y1, ny)


def kappa(p: AlgebraParams) -> float:
    """k1^2 / (k1^2 - k2^2), written without the cancelling difference."""
    _require(p, Regime.HYPERBOLIC)
    return -(p.k1**2) / (4.0 * math.sqrt(p.c * p.c - 1.0))


def _profile_poly(prof, a, b) -> Optional[Poly2D]:
    coeffs = prof.coefficients
    return None if coeffs is None else Poly2D.compose_linear(coeffs, a, b)


# --------------------------------------------------------------------------
# Hyperbolic
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class HyperbolicSolutionSpec:
    g1: Profile1D = ZERO
    g2: Profile1D = ZERO
    F1: Profile1D = ZERO
    F2: Profile1D = ZERO


def synth_hyperbolic(spec: HyperbolicSolutionSpec, c: float) -> Field:
    p = make_params(c)
    if not p.hyperbolic:
        raise WrongRegime(f"hyperbolic synthesis needs c > 1, got c={c!r}")
    s1, s2, kap = p.slope1, p.slope2, kappa(p)

    def u(x, y):
        return (
            spec.g1(x + s2 * y)
            + spec.g2(x - s2 * y)
            + kap * (spec.F1(x - s1 * y) + spec.F2(x + s1 * y))
        )

    parts = [
        _profile_poly(spec.g1, 1.0, s2),
        _profile_poly(spec.g2, 1.0, -s2),
        _profile_poly(spec.F1, 1.0, -s1),
        _profile_poly(spec.F2, 1.0, s1),
    ]
    if any(q is None for q in parts):
        poly = None
    else:
        poly = parts[0] + parts[1] + kap * (parts[2] + parts[3])
    return Field(u, poly)


def partial_solution_residual(
    F1: Profile1D,
    F2: Profile1D,
    c: float,
    region=DEFAULT_REGION,
    h: float = 0.02,
) -> ScalarGrid:
    """(d_xx - d_y2y2) U - (F1''(x + y1) + F2''(x - y1)) for U = kappa (F1(x + y1) + F2(x - y1)).

    The right-hand side uses the exact second derivative of each profile, so
    the residual is pure discretisation error and tends to 0 like h^2.
    """
    p = make_params(c)
    if not p.hyperbolic:
        raise WrongRegime(f"partial solution check needs c > 1, got c={c!r}")
    U = synth_hyperbolic(HyperbolicSolutionSpec(F1=F1, F2=F2), c)
    g = ScalarGrid.sample_h(U, h, region)
    lhs = wave_operator(g, 2.0 / p.k1**2)
    X, Y = g.mesh()
    rhs = F1.derivative(X - p.slope1 * Y, 2) + F2.derivative(X + p.slope1 * Y, 2)
    return g.with_values(lhs.values - rhs)


# --------------------------------------------------------------------------
# Elliptic
# --------------------------------------------------------------------------


def _part(z, which: int):
    if which == 1:
        return np.real(z)
    if which == 2:
        return np.imag(z)
    raise ValueError(f"component selector must be 1 or 2, got {which!r}")


def _poly_part(q: Poly2D, which: int) -> Poly2D:
    return q.real if which == 1 else q.imag


@dataclass(frozen=True)
class EllipticSolutionSpec:
    alpha: ComplexAnalytic = CZERO
    beta: ComplexAnalytic = CZERO
    i: int = 1
    j: int = 1

    def __post_init__(self):
        for name in ("i", "j"):
            if getattr(self, name) not in (1, 2):
                raise ValueError(f"selector {name} must be 1 or 2, got {getattr(self, name)!r}")


def synth_elliptic(spec: EllipticSolutionSpec, c: float) -> Field:
    p = make_params(c)
    if not p.elliptic:
        raise WrongRegime(f"elliptic synthesis needs 0 < c < 1, got c={c!r}")
    s1, s2 = p.slope1, p.slope2

    def u(x, y):
        return _part(spec.alpha(x + s1 * y), spec.i) + _part(spec.beta(x - s2 * y), spec.j)

    a = _profile_poly(spec.alpha, 1.0, s1)
    b = _profile_poly(spec.beta, 1.0, -s2)
    poly = None if a is None or b is None else _poly_part(a, spec.i) + _poly_part(b, spec.j)
    return Field(u, poly)


# --------------------------------------------------------------------------
# Components of monogenic functions
# --------------------------------------------------------------------------


def _times_constant(polys, const, T):
    """Coordinates of (sum_i polys[i] b_i) * (sum_j const[j] b_j) via structure constants."""
    n = T.shape[0]
    out = []
    for k in range(n):
        acc = Poly2D.zero()
        for i in range(len(polys)):
            for j in range(n):
                w = T[i, j, k] * const[j]
                if w != 0:
                    acc = acc + w * polys[i]
        out.append(acc)
    return out


def monogenic_component_polys(p: AlgebraParams, alpha, beta) -> Optional[list[Poly2D]]:
    """Exact (u1, u2, u3, u4) as polynomials, or None if an ingredient is not polynomial."""
    first, second = idempotents(p)
    if p.hyperbolic:
        s1, s2 = p.slope1, p.slope2
        pp, qq = _profile_poly(alpha.p, 1.0, -s1), _profile_poly(alpha.q, 1.0, s1)
        rr, ss = _profile_poly(beta.p, 1.0, s2), _profile_poly(beta.q, 1.0, -s2)
        if any(q is None for q in (pp, qq, rr, ss)):
            return None
        T = hyper_structure_constants(p.m)
        a_elem = [0.5 * (pp + qq), 0.5 * (pp - qq), Poly2D.zero(), Poly2D.zero()]
        b_elem = [0.5 * (rr + ss), 0.5 * (rr - ss), Poly2D.zero(), Poly2D.zero()]
        left = _times_constant(a_elem, first.coords, T)
        right = _times_constant(b_elem, second.coords, T)
        return [l + r for l, r in zip(left, right)]
    A = _profile_poly(alpha, 1.0, p.slope1)
    B = _profile_poly(beta, 1.0, -p.slope2)
    if A is None or B is None:
        return None
    T = elliptic_structure_constants(p.mu)
    left = _times_constant([A, Poly2D.zero()], first.coords, T)
    right = _times_constant([B, Poly2D.zero()], second.coords, T)
    cu, ce = left[0] + right[0], left[1] + right[1]
    return [cu.real, cu.imag, ce.real, ce.imag]


def solution_components_from_monogenic(p: AlgebraParams, alpha, beta, k: int) -> Field:
    """The k-th real component (k in 1..4) of the monogenic function built from alpha, beta."""
    if k not in (1, 2, 3, 4):
        raise ValueError(f"component selector must be in 1..4, got {k!r}")
    if p.hyperbolic:
        if not isinstance(alpha, SplitAnalytic) or not isinstance(beta, SplitAnalytic):
            raise TypeError("hyperbolic alpha/beta must be SplitAnalytic pairs")

        def u(x, y):
            return monogenic_components_hyper(alpha, beta, p, x, y)[k - 1]

    else:
        if not isinstance(alpha, ComplexAnalytic) or not isinstance(beta, ComplexAnalytic):
            raise TypeError("elliptic alpha/beta must be ComplexAnalytic functions")

        def u(x, y):
            return monogenic_components_elliptic(alpha, beta, p, x, y)[k - 1]

    polys = monogenic_component_polys(p, alpha, beta)
    return Field(u, None if polys is None else polys[k - 1])
