"""Seeded random profiles, analytic functions and test fields.

Parameter ranges keep every field O(1)-O(10) on [-1, 1]^2 so that fourth
differences at h >= 0.01 stay well above the rounding floor.
"""

from __future__ import annotations

import numpy as np

from . import analytic as an
from .synthesis import EllipticSolutionSpec, HyperbolicSolutionSpec

HYPERBOLIC_CS = (1.5, 2.0, 5.0, 10.0)
ELLIPTIC_CS = (0.1, 0.5, 0.9)


def transcendental_profile(rng: np.random.Generator) -> an.Profile1D:
    kind = rng.integers(3)
    if kind == 0:
        return an.Sine(rng.uniform(0.5, 2.0), rng.uniform(0.5, 2.5), rng.uniform(0.0, 2 * np.pi))
    if kind == 1:
        return an.Exponential(rng.uniform(-1.0, 1.0), rng.uniform(-1.2, 1.2))
    return an.Gaussian(rng.uniform(0.5, 2.0), rng.uniform(-1.0, 1.0), rng.uniform(0.5, 1.5))


def polynomial_profile(rng: np.random.Generator, max_degree: int = 6) -> an.Polynomial:
    deg = int(rng.integers(0, max_degree + 1))
    return an.Polynomial(tuple(rng.uniform(-1.0, 1.0, deg + 1)))


def _cplx(rng, lo, hi):
    return complex(rng.uniform(lo, hi), rng.uniform(lo, hi))


def transcendental_analytic(rng: np.random.Generator) -> an.ComplexAnalytic:
    a, amp = _cplx(rng, -1.5, 1.5), _cplx(rng, -1.0, 1.0)
    kind = rng.integers(3)
    if kind == 0:
        return an.ScaledExp(a, amp)
    if kind == 1:
        return an.ScaledSine(a, amp)
    return an.ComplexGaussian(amp, _cplx(rng, -0.5, 0.5), rng.uniform(0.7, 1.5))


def polynomial_analytic(rng: np.random.Generator, max_degree: int = 6) -> an.ComplexPolynomial:
    deg = int(rng.integers(0, max_degree + 1))
    return an.ComplexPolynomial(tuple(_cplx(rng, -1.0, 1.0) for _ in range(deg + 1)))


def split_pair(rng, make=transcendental_profile) -> an.SplitAnalytic:
    return an.SplitAnalytic(make(rng), make(rng))


def hyperbolic_spec(rng, make=transcendental_profile) -> HyperbolicSolutionSpec:
    return HyperbolicSolutionSpec(make(rng), make(rng), make(rng), make(rng))


def elliptic_spec(rng, make=transcendental_analytic) -> EllipticSolutionSpec:
    return EllipticSolutionSpec(make(rng), make(rng), int(rng.integers(1, 3)), int(rng.integers(1, 3)))


def trig_field(rng: np.random.Generator, terms: int = 3):
    """Random sum of plane cosines and the exact value of L_c applied to it.

    Returns ``(u, lu)`` where ``lu(x, y, c)`` is the exact biwave image.
    """
    amp = rng.uniform(-1.0, 1.0, terms)
    kx = rng.uniform(-3.0, 3.0, terms)
    ky = rng.uniform(-3.0, 3.0, terms)
    ph = rng.uniform(0.0, 2 * np.pi, terms)

    def u(x, y):
        x, y = np.asarray(x)[..., None], np.asarray(y)[..., None]
        return np.sum(amp * np.cos(kx * x + ky * y + ph), axis=-1)

    def lu(x, y, c):
        x, y = np.asarray(x)[..., None], np.asarray(y)[..., None]
        sym = kx**4 - 2.0 * c * kx**2 * ky**2 + ky**4
        return np.sum(amp * sym * np.cos(kx * x + ky * y + ph), axis=-1)

    return u, lu
