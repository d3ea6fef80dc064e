import numpy as np
import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from cbiwave.errors import PolynomialOverflow
from cbiwave.polynomial import MAX_DEGREE, Poly2D
from cbiwave.verify import biwave_apply_poly

X, Y = sp.symbols("x y")

small = st.integers(-5, 5).map(float)
coef_mats = st.integers(1, 6).flatmap(
    lambda n: st.integers(1, 6).flatmap(
        lambda m: st.lists(small, min_size=n * m, max_size=n * m).map(lambda v: np.array(v).reshape(n, m))
    )
)


def to_sympy(p: Poly2D):
    return sum(sp.nsimplify(p.coef[i, j]) * X**i * Y**j for i in range(p.shape[0]) for j in range(p.shape[1]))


def from_sympy(expr) -> Poly2D:
    poly = sp.Poly(sp.expand(expr), X, Y)
    deg = max(poly.degree(X), 0), max(poly.degree(Y), 0)
    coef = np.zeros((deg[0] + 1, deg[1] + 1))
    for (i, j), v in poly.terms():
        coef[i, j] = float(v)
    return Poly2D(coef)


@settings(max_examples=60, deadline=None)
@given(coef_mats, st.integers(0, 4), st.integers(0, 4))
def test_diff_matches_sympy(coef, dx, dy):
    p = Poly2D(coef)
    expected = from_sympy(sp.diff(to_sympy(p), X, dx, Y, dy)) if dx + dy else p
    assert p.diff(dx, dy).allclose(expected, atol=1e-9)


@settings(max_examples=40, deadline=None)
@given(coef_mats, coef_mats)
def test_product_matches_sympy(a, b):
    p, q = Poly2D(a), Poly2D(b)
    assert (p * q).allclose(from_sympy(to_sympy(p) * to_sympy(q)), atol=1e-9)


@given(coef_mats, st.floats(-2, 2), st.floats(-2, 2))
def test_call_matches_direct_sum(coef, x, y):
    p = Poly2D(coef)
    direct = sum(coef[i, j] * x**i * y**j for i in range(coef.shape[0]) for j in range(coef.shape[1]))
    assert p(x, y) == pytest.approx(direct, abs=1e-9 * (1 + abs(direct)))


def test_compose_linear_binomial():
    a, b = 1.5, -0.25
    q = Poly2D.compose_linear([1.0, 0.0, 2.0, 0.0, -1.0], a, b)
    t = a * X + b * Y
    assert q.allclose(from_sympy(1 + 2 * t**2 - t**4), atol=1e-12)


def test_complex_compose_real_imag():
    lam = 0.5 + 0.75j
    q = Poly2D.compose_linear([0, 0, 0, 1], 1.0, lam)
    xs, ys = np.array([0.3, -1.2]), np.array([0.7, 0.1])
    np.testing.assert_allclose(q.real(xs, ys), ((xs + lam * ys) ** 3).real, atol=1e-13)
    np.testing.assert_allclose(q.imag(xs, ys), ((xs + lam * ys) ** 3).imag, atol=1e-13)


def test_degree_drops_by_derivative_order():
    p = Poly2D.monomial(5, 3)
    assert p.degree == 8
    assert p.diff(2, 1).degree == 5
    assert p.diff(6, 0).degree == -1


def test_degree_cap():
    Poly2D.monomial(MAX_DEGREE, 0)
    with pytest.raises(PolynomialOverflow):
        Poly2D.monomial(MAX_DEGREE + 1, 0)
    with pytest.raises(PolynomialOverflow):
        Poly2D.monomial(20, 0) * Poly2D.monomial(20, 0)


# -- biwave operator on polynomials ------------------------------------------


@pytest.mark.parametrize("c", [0.3, 2.0, 7.0])
def test_biwave_kills_x3y(c):
    assert biwave_apply_poly(Poly2D.monomial(3, 1), c).max_abs_coef() == 0.0


@pytest.mark.parametrize("c", [0.3, 2.0, 7.0])
def test_biwave_x4(c):
    assert biwave_apply_poly(Poly2D.monomial(4, 0), c) == Poly2D([[24.0]])


def test_biwave_x2y2_c5():
    assert biwave_apply_poly(Poly2D.monomial(2, 2), 5.0).allclose(Poly2D([[-40.0]]))


@settings(max_examples=30, deadline=None)
@given(coef_mats, st.floats(0.1, 10))
def test_biwave_matches_sympy(coef, c):
    p = Poly2D(coef)
    u = to_sympy(p)
    expr = sp.diff(u, X, 4) - 2 * sp.nsimplify(c) * sp.diff(u, X, 2, Y, 2) + sp.diff(u, Y, 4)
    assert biwave_apply_poly(p, c).allclose(from_sympy(expr), atol=1e-8 * (1 + np.abs(coef).max()))


def test_factor_coefficients_symbolically():
    # (d_xx - a d_yy)(d_xx - b d_yy) on a generic quartic, a + b = 2c, ab = 1
    from cbiwave.algebra import make_params
    from cbiwave.verify import wave_factor_speeds

    c = 5.0
    a, b = wave_factor_speeds(make_params(c))
    u = Poly2D(np.arange(1.0, 26.0).reshape(5, 5))
    w1 = lambda q, s: q.diff(2, 0) - s * q.diff(0, 2)  # noqa: E731
    assert w1(w1(u, a), b).allclose(biwave_apply_poly(u, c), atol=1e-9)
    assert a + b == pytest.approx(2 * c)
    assert a * b == pytest.approx(1.0)
