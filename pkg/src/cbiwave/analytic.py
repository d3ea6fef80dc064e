"""Building-block functions and monogenic functions on B_c.

Profiles are the one-variable functions riding the characteristics
(all C-infinity, with derivatives of any order).  Hyperbolic ``alpha``/``beta``
are split-complex analytic and are parametrised by a d'Alembert pair
``(p, q)``; elliptic ones are ordinary complex analytic functions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, ClassVar, NamedTuple, Optional

import numpy as np
from numpy.polynomial import hermite as H
from numpy.polynomial import polynomial as P

from .algebra import (
    AlgebraParams,
    EllipticElement,
    Regime,
    SplitPair,
    _require,
    decompose_w,
    elliptic_mul,
    hyper_mul,
    idempotents,
)
from .errors import GridTooSmall
from .verify import ScalarGrid, d1

# --------------------------------------------------------------------------
# Real profiles
# --------------------------------------------------------------------------


class Profile1D:
    kind: ClassVar[str]

    def __call__(self, t):
        return self.derivative(t, 0)

    def derivative(self, t, order: int = 1):
        raise NotImplementedError

    @property
    def coefficients(self) -> Optional[tuple]:
        """Power-series coefficients when the profile is a polynomial, else None."""
        return None


@dataclass(frozen=True)
class Polynomial(Profile1D):
    coeffs: tuple = (0.0,)
    kind: ClassVar[str] = "polynomial"

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(float(c) for c in self.coeffs) or (0.0,))

    def derivative(self, t, order: int = 1):
        return P.polyval(np.asarray(t, dtype=float), P.polyder(self.coeffs, order) if order else self.coeffs)

    @property
    def coefficients(self):
        return self.coeffs


@dataclass(frozen=True)
class Sine(Profile1D):
    """amplitude * sin(frequency * t + phase)"""

    amplitude: float = 1.0
    frequency: float = 1.0
    phase: float = 0.0
    kind: ClassVar[str] = "sine"

    def derivative(self, t, order: int = 1):
        w = self.frequency
        return self.amplitude * w**order * np.sin(w * np.asarray(t) + self.phase + order * math.pi / 2)


@dataclass(frozen=True)
class Exponential(Profile1D):
    """amplitude * exp(rate * t)"""

    amplitude: float = 1.0
    rate: float = 1.0
    kind: ClassVar[str] = "exponential"

    def derivative(self, t, order: int = 1):
        return self.amplitude * self.rate**order * np.exp(self.rate * np.asarray(t))


@dataclass(frozen=True)
class Gaussian(Profile1D):
    """amplitude * exp(-((t - center) / width)**2)"""

    amplitude: float = 1.0
    center: float = 0.0
    width: float = 1.0
    kind: ClassVar[str] = "gaussian"

    def __post_init__(self):
        if not self.width > 0:
            raise ValueError("gaussian width must be positive")

    def derivative(self, t, order: int = 1):
        # d^n/ds^n exp(-s^2) = (-1)^n H_n(s) exp(-s^2), physicists' Hermite
        s = (np.asarray(t, dtype=float) - self.center) / self.width
        hn = H.hermval(s, [0.0] * order + [1.0])
        return self.amplitude * (-1) ** order * hn * np.exp(-s * s) / self.width**order


ZERO = Polynomial((0.0,))


# --------------------------------------------------------------------------
# Complex analytic functions (elliptic regime)
# --------------------------------------------------------------------------


class ComplexAnalytic:
    kind: ClassVar[str]

    def __call__(self, w):
        return self.derivative(w, 0)

    def derivative(self, w, order: int = 1):
        raise NotImplementedError

    @property
    def coefficients(self) -> Optional[tuple]:
        return None


@dataclass(frozen=True)
class ComplexPolynomial(ComplexAnalytic):
    coeffs: tuple = (0j,)
    kind: ClassVar[str] = "polynomial"

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(complex(c) for c in self.coeffs) or (0j,))

    def derivative(self, w, order: int = 1):
        c = P.polyder(self.coeffs, order) if order else self.coeffs
        return P.polyval(np.asarray(w, dtype=complex), c)

    @property
    def coefficients(self):
        return self.coeffs


@dataclass(frozen=True)
class ScaledExp(ComplexAnalytic):
    """amplitude * exp(a * w)"""

    a: complex = 1.0
    amplitude: complex = 1.0
    kind: ClassVar[str] = "exp"

    def derivative(self, w, order: int = 1):
        return self.amplitude * self.a**order * np.exp(self.a * np.asarray(w, dtype=complex))


@dataclass(frozen=True)
class ScaledSine(ComplexAnalytic):
    """amplitude * sin(a * w)"""

    a: complex = 1.0
    amplitude: complex = 1.0
    kind: ClassVar[str] = "sine"

    def derivative(self, w, order: int = 1):
        w = np.asarray(w, dtype=complex)
        return self.amplitude * self.a**order * np.sin(self.a * w + order * math.pi / 2)


@dataclass(frozen=True)
class ComplexGaussian(ComplexAnalytic):
    """amplitude * exp(-((w - center) / width)**2), entire in w"""

    amplitude: complex = 1.0
    center: complex = 0.0
    width: float = 1.0
    kind: ClassVar[str] = "gaussian"

    def __post_init__(self):
        if not self.width > 0:
            raise ValueError("gaussian width must be positive")

    def derivative(self, w, order: int = 1):
        s = (np.asarray(w, dtype=complex) - self.center) / self.width
        hn = H.hermval(s, [0.0] * order + [1.0])
        return self.amplitude * (-1) ** order * hn * np.exp(-s * s) / self.width**order


CZERO = ComplexPolynomial((0j,))


# --------------------------------------------------------------------------
# Split-complex analytic pairs
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class SplitAnalytic:
    """alpha = alpha1 + f alpha2 with

    alpha1 = (p(x + y1) + q(x - y1)) / 2,  alpha2 = (p(x + y1) - q(x - y1)) / 2,

    which solves d(alpha)/dy1 = f d(alpha)/dx by construction.
    """

    p: Profile1D = ZERO
    q: Profile1D = ZERO


def eval_split(sa: SplitAnalytic, x, y1):
    fp = sa.p(np.add(x, y1))
    fq = sa.q(np.subtract(x, y1))
    return (fp + fq) / 2.0, (fp - fq) / 2.0


class ComponentVector(NamedTuple):
    u1: np.ndarray
    u2: np.ndarray
    u3: np.ndarray
    u4: np.ndarray


def monogenic_components_hyper(alpha: SplitAnalytic, beta: SplitAnalytic, p: AlgebraParams, x, y) -> ComponentVector:
    """Components of g(w) = alpha(w1) i1 + beta(w2) i2 on (u, f, e, fe)."""
    _require(p, Regime.HYPERBOLIC)
    sc = decompose_w(x, y, p)
    a = SplitPair(*eval_split(alpha, x, sc.w1.b)).as_element()
    b = SplitPair(*eval_split(beta, x, sc.w2.b)).as_element()
    i1, i2 = idempotents(p)
    g = hyper_mul(a, i1, p) + hyper_mul(b, i2, p)
    return ComponentVector(g.cu, g.cf, g.ce, g.cfe)


def monogenic_components_elliptic(alpha: ComplexAnalytic, beta: ComplexAnalytic, p: AlgebraParams, x, y) -> ComponentVector:
    """Real components of f(w) = alpha(w1) I- + beta(w2) I+."""
    _require(p, Regime.ELLIPTIC)
    sc = decompose_w(x, y, p)
    i_minus, i_plus = idempotents(p)
    a = EllipticElement(alpha(sc.w1), 0j)
    b = EllipticElement(beta(sc.w2), 0j)
    f = elliptic_mul(a, i_minus, p) + elliptic_mul(b, i_plus, p)
    return ComponentVector(*f.components())


def spectral_parts(cv: ComponentVector, p: AlgebraParams):
    """Recover the idempotent-basis coefficients from components.

    Hyperbolic: returns (alpha1, alpha2, beta1, beta2), real.
    Elliptic: returns (alpha, beta), complex.
    """
    s1, s2 = p.slope1, p.slope2
    u1, u2, u3, u4 = (np.asarray(u) for u in cv)
    if p.hyperbolic:
        return u1 - s1 * u4, u2 - s1 * u3, u1 + s2 * u4, u2 + s2 * u3
    cu, ce = u1 + 1j * u2, u3 + 1j * u4
    return cu + s1 * ce, cu - s2 * ce


# --------------------------------------------------------------------------
# Cauchy-Riemann residuals
# --------------------------------------------------------------------------


class CRResidual(NamedTuple):
    r1: ScalarGrid
    r2: ScalarGrid
    r3: ScalarGrid
    r4: ScalarGrid

    def max_abs(self) -> float:
        return max(r.max_abs() for r in self)


def cr_residual(
    sampler: Callable[..., ComponentVector],
    p: AlgebraParams,
    region=(-1.0, 1.0, -1.0, 1.0),
    h: float = 0.02,
) -> CRResidual:
    """Central-difference residuals of e dg/dx = u dg/dy in component form.

    The third and fourth equations couple through m (hyperbolic) or mu
    (elliptic); note the sign flip in the fourth.  Only interior points are
    finite; the one-point boundary frame is NaN.
    """
    if not h > 0:
        raise ValueError("h must be positive")
    x0, x1, y0, y1 = region
    nx = int(round((x1 - x0) / h)) + 1
    ny = int(round((y1 - y0) / h)) + 1
    if nx < 3 or ny < 3:
        raise GridTooSmall(f"CR residual needs at least 3 points per axis, got {nx}x{ny}")
    xs, ys = np.linspace(x0, x1, nx), np.linspace(y0, y1, ny)
    hx, hy = (x1 - x0) / (nx - 1), (y1 - y0) / (ny - 1)
    X, Y = np.meshgrid(xs, ys, indexing="ij")
    comps = [np.asarray(u, dtype=float) + np.zeros(X.shape) for u in sampler(X, Y)]
    dx = [d1(u, hx, 0) for u in comps]
    dy = [d1(u, hy, 1) for u in comps]
    if p.hyperbolic:
        k, sign4 = p.m, -1.0
    else:
        k, sign4 = p.mu, 1.0
    res = (
        dy[0] - dx[2],
        dy[1] - dx[3],
        dy[2] - (dx[0] - k * dx[3]),
        dy[3] - (dx[1] + sign4 * k * dx[2]),
    )
    return CRResidual(*(ScalarGrid(x0, y0, hx, hy, r) for r in res))
