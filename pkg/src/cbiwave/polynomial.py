"""Dense bivariate polynomials with exact differentiation.

Used as the independent oracle for the biwave operator: differentiating a
coefficient matrix involves no discretisation, so a polynomial solution must
map to the zero polynomial up to rounding in the coefficients.
"""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np

from .errors import PolynomialOverflow

MAX_DEGREE = 32


class Poly2D:
    """sum_{i,j} coef[i, j] x**i y**j.

    Coefficients may be complex; :attr:`real` / :attr:`imag` split such a
    polynomial into two real ones.
    """

    __array_ufunc__ = None

    def __init__(self, coef):
        coef = np.atleast_2d(np.asarray(coef))
        if coef.dtype.kind not in "fc":
            coef = coef.astype(float)
        if coef.shape[0] > MAX_DEGREE + 1 or coef.shape[1] > MAX_DEGREE + 1:
            raise PolynomialOverflow(f"degree exceeds the cap of {MAX_DEGREE}: shape {coef.shape}")
        self.coef = coef

    @classmethod
    def zero(cls) -> "Poly2D":
        return cls(np.zeros((1, 1)))

    @classmethod
    def monomial(cls, i: int, j: int, value=1.0) -> "Poly2D":
        coef = np.zeros((i + 1, j + 1), dtype=np.result_type(value, float))
        coef[i, j] = value
        return cls(coef)

    @classmethod
    def linear_form_power(cls, a, b, n: int) -> "Poly2D":
        """(a x + b y)**n via the binomial theorem."""
        dtype = np.result_type(a, b, float)
        coef = np.zeros((n + 1, n + 1), dtype=dtype)
        for k in range(n + 1):
            coef[n - k, k] = math.comb(n, k) * a ** (n - k) * b**k
        return cls(coef)

    @classmethod
    def compose_linear(cls, coeffs: Sequence, a, b) -> "Poly2D":
        """P(a x + b y) where P(t) = sum_n coeffs[n] t**n."""
        out = cls.zero()
        for n, cn in enumerate(coeffs):
            if cn != 0:
                out = out + cn * cls.linear_form_power(a, b, n)
        return out

    # -- shape helpers -----------------------------------------------------

    @property
    def shape(self):
        return self.coef.shape

    @property
    def degree(self) -> int:
        nz = np.argwhere(self.coef != 0)
        if len(nz) == 0:
            return -1
        return int(nz.sum(axis=1).max())

    def _padded(self, shape):
        out = np.zeros(shape, dtype=self.coef.dtype)
        out[: self.shape[0], : self.shape[1]] = self.coef
        return out

    @property
    def real(self) -> "Poly2D":
        return Poly2D(np.real(self.coef).astype(float))

    @property
    def imag(self) -> "Poly2D":
        return Poly2D(np.imag(self.coef).astype(float))

    def max_abs_coef(self) -> float:
        return float(np.max(np.abs(self.coef), initial=0.0))

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, Poly2D):
            if np.isscalar(other):
                other = Poly2D([[other]])
            else:
                return NotImplemented
        shape = (max(self.shape[0], other.shape[0]), max(self.shape[1], other.shape[1]))
        dtype = np.result_type(self.coef, other.coef)
        return Poly2D(self._padded(shape).astype(dtype) + other._padded(shape).astype(dtype))

    __radd__ = __add__

    def __neg__(self):
        return Poly2D(-self.coef)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Poly2D):
            n = self.shape[0] + other.shape[0] - 1
            m = self.shape[1] + other.shape[1] - 1
            out = np.zeros((n, m), dtype=np.result_type(self.coef, other.coef))
            for i, j in zip(*np.nonzero(self.coef)):
                out[i : i + other.shape[0], j : j + other.shape[1]] += self.coef[i, j] * other.coef
            return Poly2D(out)
        if np.isscalar(other):
            return Poly2D(self.coef * other)
        return NotImplemented

    __rmul__ = __mul__

    def __call__(self, x, y):
        # Horner in x over rows of y-polynomials
        x = np.asarray(x)
        y = np.asarray(y)
        out = 0
        for row in self.coef[::-1]:
            out = out * x + np.polynomial.polynomial.polyval(y, row)
        return out + np.zeros(np.broadcast(x, y).shape)

    def diff(self, dx: int = 0, dy: int = 0) -> "Poly2D":
        c = self.coef
        n, m = c.shape
        if dx >= n or dy >= m:
            return Poly2D(np.zeros((1, 1), dtype=c.dtype))
        fx = np.array([math.perm(i, dx) for i in range(dx, n)], dtype=float)
        fy = np.array([math.perm(j, dy) for j in range(dy, m)], dtype=float)
        return Poly2D(c[dx:, dy:] * fx[:, None] * fy[None, :])

    def trim(self, tol: float = 0.0) -> "Poly2D":
        nz = np.argwhere(np.abs(self.coef) > tol)
        if len(nz) == 0:
            return Poly2D(np.zeros((1, 1), dtype=self.coef.dtype))
        i, j = nz.max(axis=0)
        return Poly2D(self.coef[: i + 1, : j + 1])

    def __eq__(self, other):
        if not isinstance(other, Poly2D):
            return NotImplemented
        shape = (max(self.shape[0], other.shape[0]), max(self.shape[1], other.shape[1]))
        return bool(np.array_equal(self._padded(shape), other._padded(shape)))

    def allclose(self, other: "Poly2D", atol: float = 1e-12) -> bool:
        shape = (max(self.shape[0], other.shape[0]), max(self.shape[1], other.shape[1]))
        return bool(np.allclose(self._padded(shape), other._padded(shape), rtol=0.0, atol=atol))

    def __repr__(self):
        terms = []
        for i, j in zip(*np.nonzero(self.coef)):
            terms.append(f"{self.coef[i, j]:.6g}*x^{i}*y^{j}")
        return "Poly2D(" + (" + ".join(terms) or "0") + ")"
