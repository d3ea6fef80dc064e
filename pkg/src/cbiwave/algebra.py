"""Arithmetic in the two commutative algebras attached to the c-biwave operator.

For ``c > 1`` the algebra is four-dimensional over the reals with basis
``(u, f, e, fe)``; for ``0 < c < 1`` it is two-dimensional over the complex
numbers with basis ``(u, e)``.  In both cases ``u`` is the identity and the
pair ``(u, e)`` satisfies ``u^4 - 2c u^2 e^2 + e^4 = 0``.

Element coordinates may be numpy arrays, in which case every operation acts
pointwise; this is what the grid samplers in :mod:`cbiwave.analytic` rely on.
"""

from __future__ import annotations

import contextlib
import enum
import math
import warnings
from dataclasses import dataclass
from typing import NamedTuple, Union

import numpy as np

from .errors import DegenerateParameter, InvalidParameter, NotInvertible, WrongRegime

SQRT2 = math.sqrt(2.0)

DEGENERATE_TOL = 1e-9
CONDITIONING_TOL = 1e-3
ELEMENT_TOL = 1e-12


class ConditioningWarning(RuntimeWarning):
    pass


class Regime(str, enum.Enum):
    HYPERBOLIC = "hyperbolic"
    ELLIPTIC = "elliptic"


@dataclass(frozen=True)
class AlgebraParams:
    """Derived constants of one algebra instance.

    ``k1``/``k2`` are real for the hyperbolic regime and complex conjugates for
    the elliptic one.  ``m`` is only set when hyperbolic, ``mu`` only when
    elliptic.
    """

    c: float
    regime: Regime
    k1: Union[float, complex]
    k2: Union[float, complex]
    m: float | None = None
    mu: float | None = None

    @property
    def hyperbolic(self) -> bool:
        return self.regime is Regime.HYPERBOLIC

    @property
    def elliptic(self) -> bool:
        return self.regime is Regime.ELLIPTIC

    @property
    def slope1(self):
        """k2/sqrt(2): speed of the first characteristic family."""
        return self.k2 / SQRT2

    @property
    def slope2(self):
        """k1/sqrt(2): speed of the second characteristic family."""
        return self.k1 / SQRT2


def make_params(c: float) -> AlgebraParams:
    try:
        c = float(c)
    except (TypeError, ValueError):
        raise InvalidParameter(f"c must be a real number, got {c!r}") from None
    if not math.isfinite(c) or c <= 0.0:
        raise InvalidParameter(f"c must be finite and positive, got {c!r}")
    if abs(c - 1.0) < DEGENERATE_TOL:
        raise DegenerateParameter(f"degenerate parameter c={c!r}: the case c=1 is excluded")
    if abs(c - 1.0) < CONDITIONING_TOL:
        warnings.warn(
            f"c={c!r} is close to 1; the synthesis coefficient k1^2/(k1^2-k2^2) is ill-conditioned",
            ConditioningWarning,
            stacklevel=2,
        )
    if c > 1.0:
        a, b = math.sqrt(c + 1.0), math.sqrt(c - 1.0)
        return AlgebraParams(c, Regime.HYPERBOLIC, a - b, a + b, m=math.sqrt(2.0 * (c - 1.0)))
    a, b = math.sqrt(c + 1.0), math.sqrt(1.0 - c)
    return AlgebraParams(
        c, Regime.ELLIPTIC, complex(a, -b), complex(a, b), mu=math.sqrt(2.0 * (1.0 - c))
    )


def _require(p: AlgebraParams, regime: Regime) -> None:
    if p.regime is not regime:
        raise WrongRegime(f"operation needs the {regime.value} algebra, got c={p.c!r} ({p.regime.value})")


def _close(a, b, tol):
    a = np.asarray(a)
    b = np.asarray(b)
    scale = max(1.0, float(np.max(np.abs(a), initial=0.0)), float(np.max(np.abs(b), initial=0.0)))
    return bool(np.all(np.abs(a - b) <= tol * scale))


# --------------------------------------------------------------------------
# Hyperbolic algebra, c > 1
# --------------------------------------------------------------------------

U, F, E, FE = range(4)
HYPER_BASIS = ("u", "f", "e", "fe")

# Test hook: added to m in the e*e entry of the table (see ``cayley_fault``).
_cayley_fault = 0.0


@contextlib.contextmanager
def cayley_fault(delta: float = 1e-3):
    """Temporarily corrupt the e*e structure constant (fault injection)."""
    global _cayley_fault
    saved = _cayley_fault
    _cayley_fault = delta
    try:
        yield
    finally:
        _cayley_fault = saved


def hyper_structure_constants(m: float) -> np.ndarray:
    """Return ``T`` with ``b_i * b_j = sum_k T[i, j, k] b_k`` on basis (u, f, e, fe).

    Only f^2 = u, e^2 = u - m fe and fe = ef are given; the rest follows from
    associativity and commutativity: f.fe = e, e.fe = f - m e, fe.fe = e^2.
    """
    T = np.zeros((4, 4, 4))
    for j in range(4):
        T[U, j, j] = 1.0
    T[F, F, U] = 1.0
    T[F, E, FE] = 1.0
    T[F, FE, E] = 1.0
    T[E, E, U], T[E, E, FE] = 1.0, -(m + _cayley_fault)
    T[E, FE, F], T[E, FE, E] = 1.0, -m
    T[FE, FE, U], T[FE, FE, FE] = 1.0, -m
    for i in range(4):
        for j in range(i):
            T[i, j] = T[j, i]
    return T


@dataclass(frozen=True)
class HyperElement:
    """x u + y f + z e + v fe over the reals."""

    cu: float = 0.0
    cf: float = 0.0
    ce: float = 0.0
    cfe: float = 0.0

    __array_ufunc__ = None

    @classmethod
    def from_coords(cls, coords) -> "HyperElement":
        return cls(*coords)

    @property
    def coords(self) -> np.ndarray:
        return np.array(np.broadcast_arrays(self.cu, self.cf, self.ce, self.cfe), dtype=float)

    def __add__(self, other):
        if not isinstance(other, HyperElement):
            return NotImplemented
        return HyperElement(self.cu + other.cu, self.cf + other.cf, self.ce + other.ce, self.cfe + other.cfe)

    def __sub__(self, other):
        if not isinstance(other, HyperElement):
            return NotImplemented
        return HyperElement(self.cu - other.cu, self.cf - other.cf, self.ce - other.ce, self.cfe - other.cfe)

    def __neg__(self):
        return HyperElement(-self.cu, -self.cf, -self.ce, -self.cfe)

    def __mul__(self, s):
        # scalars only; element products need the algebra parameters
        if isinstance(s, (HyperElement, EllipticElement)):
            return NotImplemented
        return HyperElement(s * self.cu, s * self.cf, s * self.ce, s * self.cfe)

    __rmul__ = __mul__

    def isclose(self, other: "HyperElement", tol: float = ELEMENT_TOL) -> bool:
        return _close(self.coords, other.coords, tol)


HYPER_UNIT = HyperElement(1.0, 0.0, 0.0, 0.0)
HYPER_F = HyperElement(0.0, 1.0, 0.0, 0.0)
HYPER_E = HyperElement(0.0, 0.0, 1.0, 0.0)
HYPER_FE = HyperElement(0.0, 0.0, 0.0, 1.0)


def hyper_mul(a: HyperElement, b: HyperElement, p: AlgebraParams) -> HyperElement:
    _require(p, Regime.HYPERBOLIC)
    T = hyper_structure_constants(p.m)
    out = np.einsum("i...,j...,ijk->k...", a.coords, b.coords, T)
    return HyperElement(*out)


# --------------------------------------------------------------------------
# Elliptic algebra, 0 < c < 1
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class EllipticElement:
    """s u + t e with complex s, t.

    The real view is ``(u1, u2, u3, u4)`` with ``s = u1 + i u2`` and
    ``t = u3 + i u4``.
    """

    cu: complex = 0j
    ce: complex = 0j

    __array_ufunc__ = None

    @classmethod
    def from_components(cls, u1, u2, u3, u4) -> "EllipticElement":
        return cls(u1 + 1j * np.asarray(u2), u3 + 1j * np.asarray(u4))

    @property
    def coords(self) -> np.ndarray:
        return np.array(np.broadcast_arrays(self.cu, self.ce), dtype=complex)

    def components(self):
        cu, ce = np.asarray(self.cu, dtype=complex), np.asarray(self.ce, dtype=complex)
        return cu.real, cu.imag, ce.real, ce.imag

    def __add__(self, other):
        if not isinstance(other, EllipticElement):
            return NotImplemented
        return EllipticElement(self.cu + other.cu, self.ce + other.ce)

    def __sub__(self, other):
        if not isinstance(other, EllipticElement):
            return NotImplemented
        return EllipticElement(self.cu - other.cu, self.ce - other.ce)

    def __neg__(self):
        return EllipticElement(-self.cu, -self.ce)

    def __mul__(self, s):
        if isinstance(s, (HyperElement, EllipticElement)):
            return NotImplemented
        return EllipticElement(s * self.cu, s * self.ce)

    __rmul__ = __mul__

    def isclose(self, other: "EllipticElement", tol: float = ELEMENT_TOL) -> bool:
        return _close(self.coords, other.coords, tol)


ELLIPTIC_UNIT = EllipticElement(1 + 0j, 0j)
ELLIPTIC_E = EllipticElement(0j, 1 + 0j)


def elliptic_structure_constants(mu: float) -> np.ndarray:
    """``T[i, j, k]`` on the complex basis (u, e): u.u = u, u.e = e, e.e = u + i mu e."""
    T = np.zeros((2, 2, 2), dtype=complex)
    T[0, 0, 0] = T[0, 1, 1] = T[1, 0, 1] = 1.0
    T[1, 1, 0], T[1, 1, 1] = 1.0, 1j * mu
    return T


def elliptic_mul(a: EllipticElement, b: EllipticElement, p: AlgebraParams) -> EllipticElement:
    _require(p, Regime.ELLIPTIC)
    s1, t1, s2, t2 = a.cu, a.ce, b.cu, b.ce
    return EllipticElement(s1 * s2 + t1 * t2, s1 * t2 + s2 * t1 + 1j * p.mu * t1 * t2)


# --------------------------------------------------------------------------
# Regime-generic helpers
# --------------------------------------------------------------------------

Element = Union[HyperElement, EllipticElement]


def mul(a: Element, b: Element, p: AlgebraParams) -> Element:
    return hyper_mul(a, b, p) if p.hyperbolic else elliptic_mul(a, b, p)


def unit(p: AlgebraParams) -> Element:
    return HYPER_UNIT if p.hyperbolic else ELLIPTIC_UNIT


def zero(p: AlgebraParams) -> Element:
    return HyperElement() if p.hyperbolic else EllipticElement()


def basis_e(p: AlgebraParams) -> Element:
    return HYPER_E if p.hyperbolic else ELLIPTIC_E


def power(a: Element, n: int, p: AlgebraParams) -> Element:
    out = unit(p)
    for _ in range(n):
        out = mul(out, a, p)
    return out


def idempotents(p: AlgebraParams) -> tuple[Element, Element]:
    """(i1, i2) for c > 1, (I-, I+) for 0 < c < 1."""
    s = p.k1 + p.k2
    if p.hyperbolic:
        return (
            HyperElement(p.k1 / s, 0.0, 0.0, -SQRT2 / s),
            HyperElement(p.k2 / s, 0.0, 0.0, SQRT2 / s),
        )
    return EllipticElement(p.k1 / s, SQRT2 / s), EllipticElement(p.k2 / s, -SQRT2 / s)


def e_from_idempotents(p: AlgebraParams) -> Element:
    """Rebuild the basis element e out of the idempotent pair."""
    first, second = idempotents(p)
    if p.hyperbolic:
        return hyper_mul(HYPER_F, p.slope2 * second, p) - hyper_mul(HYPER_F, p.slope1 * first, p)
    return p.slope1 * first - p.slope2 * second


def generator_residual(p: AlgebraParams) -> Element:
    """u^4 - 2c u^2 e^2 + e^4, which vanishes in both algebras."""
    u, e = unit(p), basis_e(p)
    u2, e2 = mul(u, u, p), mul(e, e, p)
    return mul(u2, u2, p) - 2.0 * p.c * mul(u2, e2, p) + mul(e2, e2, p)


def key_identity_gap(p: AlgebraParams) -> float:
    """k2/sqrt(2) * m + 1 - k2^2/2; zero for every hyperbolic c."""
    _require(p, Regime.HYPERBOLIC)
    return p.k2 / SQRT2 * p.m + 1.0 - p.k2**2 / 2.0


# --------------------------------------------------------------------------
# Elliptic extras: inverses in B_c, matrix representation, trace form
# --------------------------------------------------------------------------


def bc_determinant(s: float, t: float, p: AlgebraParams) -> complex:
    """Closed-form determinant s^2 - t^2 + i mu t s of the inversion system."""
    _require(p, Regime.ELLIPTIC)
    return s * s - t * t + 1j * p.mu * t * s


def bc_inverse_system(s: float, t: float, p: AlgebraParams) -> np.ndarray:
    """Coefficient matrix of (s u + t e)(x u + y e) = u in the unknowns (x, y)."""
    _require(p, Regime.ELLIPTIC)
    return np.array([[s, t], [t, s + 1j * p.mu * t]], dtype=complex)


def invert_in_Bc(s: float, t: float, p: AlgebraParams) -> EllipticElement:
    _require(p, Regime.ELLIPTIC)
    if s == 0 and t == 0:
        raise NotInvertible("the zero element of B_c has no inverse")
    delta = bc_determinant(s, t, p)
    if delta == 0:
        raise NotInvertible(f"determinant underflows for (s, t) = ({s!r}, {t!r})")
    return EllipticElement((s + 1j * p.mu * t) / delta, -t / delta)


def matrix_rep(a: EllipticElement, p: AlgebraParams) -> np.ndarray:
    _require(p, Regime.ELLIPTIC)
    e = np.array([[0.0, 1.0], [1.0, 1j * p.mu]], dtype=complex)
    return a.cu * np.eye(2, dtype=complex) + a.ce * e


def trace_form(p: AlgebraParams) -> np.ndarray:
    """Gram matrix tr(rep(b_i b_j)) on the basis (u, e)."""
    basis = (ELLIPTIC_UNIT, ELLIPTIC_E)
    return np.array(
        [[np.trace(matrix_rep(elliptic_mul(a, b, p), p)) for b in basis] for a in basis]
    )


def trace_form_det(p: AlgebraParams) -> complex:
    return complex(np.linalg.det(trace_form(p)))


# --------------------------------------------------------------------------
# Spectral (idempotent-basis) coordinates of w = x u + y e
# --------------------------------------------------------------------------


class SplitPair(NamedTuple):
    """a + f b, a split-complex number living in span{u, f}."""

    a: float
    b: float

    def as_element(self) -> HyperElement:
        return HyperElement(self.a, self.b, 0.0, 0.0)


class SpectralCoords(NamedTuple):
    w1: Union[SplitPair, complex]
    w2: Union[SplitPair, complex]


def decompose_w(x, y, p: AlgebraParams) -> SpectralCoords:
    if p.hyperbolic:
        return SpectralCoords(SplitPair(x, -p.slope1 * y), SplitPair(x, p.slope2 * y))
    return SpectralCoords(x + p.slope1 * y, x - p.slope2 * y)


def recombine(sc: SpectralCoords, p: AlgebraParams) -> Element:
    """Inverse of :func:`decompose_w`: w1 * first + w2 * second."""
    first, second = idempotents(p)
    if p.hyperbolic:
        return hyper_mul(sc.w1.as_element(), first, p) + hyper_mul(sc.w2.as_element(), second, p)
    return sc.w1 * first + sc.w2 * second


def w_element(x, y, p: AlgebraParams) -> Element:
    return x * unit(p) + y * basis_e(p)
