import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cbiwave import algebra as al
from cbiwave.errors import DegenerateParameter, InvalidParameter, NotInvertible, WrongRegime

mpmath.mp.dps = 40

finite = st.floats(-10, 10, allow_nan=False, allow_infinity=False)
hyper_c = st.sampled_from([1.5, 2.0, 5.0, 10.0]) | st.floats(1.01, 50.0)
ell_c = st.sampled_from([0.1, 0.5, 0.9]) | st.floats(0.02, 0.98)


def hyper_elements():
    return st.builds(al.HyperElement, finite, finite, finite, finite)


def elliptic_elements():
    return st.builds(
        al.EllipticElement, st.complex_numbers(max_magnitude=10, allow_nan=False), st.complex_numbers(max_magnitude=10, allow_nan=False)
    )


# -- independent model of the hyperbolic algebra ---------------------------
# For c > 1 the algebra splits as R^4: each character sends f to sigma = +-1
# and e to a root of eps^2 + m sigma eps - 1 = 0 (from e^2 = u - m fe).
# Products are pointwise on character values.


def characters(m):
    rows = []
    for sigma in (1.0, -1.0):
        for eps in np.roots([1.0, m * sigma, -1.0]):
            rows.append([1.0, sigma, eps, sigma * eps])
    return np.array(rows)


def model_mul(a, b, m):
    X = characters(m)
    return np.linalg.solve(X, (X @ a.coords) * (X @ b.coords))


# -- make_params ----------------------------------------------------------


def test_params_hyperbolic_c5():
    p = al.make_params(5)
    assert p.regime is al.Regime.HYPERBOLIC
    # closed forms evaluated at 40 digits
    assert p.m == pytest.approx(float(mpmath.sqrt(8)), abs=1e-15)
    assert p.k1 == pytest.approx(float(mpmath.sqrt(6) - 2), abs=1e-15)
    assert p.k2 == pytest.approx(float(mpmath.sqrt(6) + 2), abs=1e-15)
    assert p.m == pytest.approx(2.8284271, abs=1e-7)
    assert p.k1 == pytest.approx(0.4494897, abs=1e-7)
    assert p.k2 == pytest.approx(4.4494897, abs=1e-7)


def test_params_elliptic_c_half():
    p = al.make_params(0.5)
    assert p.regime is al.Regime.ELLIPTIC
    assert p.mu == 1.0
    k1 = mpmath.sqrt(1.5) - 1j * mpmath.sqrt(0.5)
    assert p.k1 == pytest.approx(complex(k1), abs=1e-15)
    assert p.k2 == pytest.approx(complex(k1).conjugate(), abs=1e-15)
    assert p.k1 == pytest.approx(1.2247449 - 0.7071068j, abs=1e-7)


@pytest.mark.parametrize("c", [1.0, 1.0 + 5e-10, 1.0 - 5e-10])
def test_degenerate_c(c):
    with pytest.raises(DegenerateParameter):
        al.make_params(c)


@pytest.mark.parametrize("c", [0.0, -1.0, float("nan"), float("inf"), "abc"])
def test_invalid_c(c):
    with pytest.raises(InvalidParameter):
        al.make_params(c)


def test_near_degenerate_warns():
    with pytest.warns(al.ConditioningWarning):
        al.make_params(1.0005)


@given(hyper_c)
def test_hyperbolic_param_invariants(c):
    p = al.make_params(c)
    assert p.k1 > 0 and p.k2 > 0
    assert p.k1 * p.k2 == pytest.approx(2.0, abs=1e-12)
    assert p.k1**2 + p.k2**2 == pytest.approx(4 * c, rel=1e-12)
    assert abs(al.key_identity_gap(p)) <= 1e-12 * max(1.0, p.k2**2)


@given(ell_c)
def test_elliptic_param_invariants(c):
    p = al.make_params(c)
    assert p.k1 * p.k2 == pytest.approx(2.0, abs=1e-12)
    assert p.k2 == p.k1.conjugate()


# -- multiplication -------------------------------------------------------


def test_hyper_identity_element():
    p = al.make_params(5)
    a = al.HyperElement(3, 2, -1, 1)
    assert al.hyper_mul(al.HYPER_UNIT, a, p).isclose(a)


def test_hyper_cayley_entries_c5():
    p = al.make_params(5)
    m = math.sqrt(8)
    expect = al.HyperElement(1, 0, 0, -m)
    assert al.hyper_mul(al.HYPER_E, al.HYPER_E, p).isclose(expect)
    assert al.hyper_mul(al.HYPER_FE, al.HYPER_FE, p).isclose(expect)
    assert al.hyper_mul(al.HYPER_F, al.HYPER_F, p).isclose(al.HYPER_UNIT)
    assert al.hyper_mul(al.HYPER_F, al.HYPER_E, p).isclose(al.HYPER_FE)
    assert al.hyper_mul(al.HYPER_F, al.HYPER_FE, p).isclose(al.HYPER_E)
    assert al.hyper_mul(al.HYPER_E, al.HYPER_FE, p).isclose(al.HyperElement(0, 1, -m, 0))


@pytest.mark.parametrize("c", [1.5, 2.0, 5.0, 10.0])
def test_structure_constants_match_character_model(c):
    p = al.make_params(c)
    basis = [al.HYPER_UNIT, al.HYPER_F, al.HYPER_E, al.HYPER_FE]
    for a in basis:
        for b in basis:
            got = al.hyper_mul(a, b, p).coords
            np.testing.assert_allclose(got, model_mul(a, b, p.m), atol=1e-12)


@pytest.mark.parametrize("c", [1.5, 5.0])
def test_structure_constants_associative_on_basis(c):
    T = al.hyper_structure_constants(al.make_params(c).m)
    left = np.einsum("ijl,lkn->ijkn", T, T)
    right = np.einsum("jkl,iln->ijkn", T, T)
    np.testing.assert_allclose(left, right, atol=1e-12)
    np.testing.assert_array_equal(T, T.transpose(1, 0, 2))


@settings(max_examples=200)
@given(hyper_elements(), hyper_elements(), hyper_elements(), hyper_c)
def test_hyper_commutative_associative(a, b, d, c):
    p = al.make_params(c)
    assert al.hyper_mul(a, b, p).isclose(al.hyper_mul(b, a, p), 1e-12)
    lhs = al.hyper_mul(al.hyper_mul(a, b, p), d, p)
    rhs = al.hyper_mul(a, al.hyper_mul(b, d, p), p)
    assert lhs.isclose(rhs, 1e-11)


@settings(max_examples=200)
@given(elliptic_elements(), elliptic_elements(), elliptic_elements(), ell_c)
def test_elliptic_commutative_associative(a, b, d, c):
    p = al.make_params(c)
    assert al.elliptic_mul(a, b, p).isclose(al.elliptic_mul(b, a, p), 1e-12)
    lhs = al.elliptic_mul(al.elliptic_mul(a, b, p), d, p)
    rhs = al.elliptic_mul(a, al.elliptic_mul(b, d, p), p)
    assert lhs.isclose(rhs, 1e-11)


def test_elliptic_products_c_half():
    p = al.make_params(0.5)
    assert al.elliptic_mul(al.ELLIPTIC_UNIT, al.ELLIPTIC_E, p).isclose(al.ELLIPTIC_E)
    assert al.elliptic_mul(al.ELLIPTIC_E, al.ELLIPTIC_E, p).isclose(al.EllipticElement(1, 1j))
    w = al.EllipticElement(1, 1)
    assert al.elliptic_mul(w, al.EllipticElement(1 - 1j, 1j), p).isclose(al.ELLIPTIC_UNIT)


def test_wrong_regime():
    with pytest.raises(WrongRegime):
        al.hyper_mul(al.HYPER_UNIT, al.HYPER_UNIT, al.make_params(0.5))
    with pytest.raises(WrongRegime):
        al.elliptic_mul(al.ELLIPTIC_UNIT, al.ELLIPTIC_UNIT, al.make_params(2))
    with pytest.raises(WrongRegime):
        al.invert_in_Bc(1, 0, al.make_params(2))
    with pytest.raises(WrongRegime):
        al.matrix_rep(al.ELLIPTIC_E, al.make_params(2))


def test_array_coordinates_act_pointwise():
    p = al.make_params(2)
    xs = np.linspace(-1, 1, 5)
    a = al.HyperElement(xs, 1.0, 0.0, xs**2)
    b = al.HyperElement(0.5, xs, 1.0, 0.0)
    prod = al.hyper_mul(a, b, p)
    for k, x in enumerate(xs):
        single = al.hyper_mul(al.HyperElement(x, 1.0, 0.0, x**2), al.HyperElement(0.5, x, 1.0, 0.0), p)
        np.testing.assert_allclose(prod.coords[:, k], single.coords, atol=1e-14)


# -- idempotents and friends ---------------------------------------------


def test_idempotent_coordinates_c5():
    i1, _ = al.idempotents(al.make_params(5))
    s = 2 * mpmath.sqrt(6)  # k1 + k2 = 2 sqrt(c + 1)
    assert i1.cu == pytest.approx(float((mpmath.sqrt(6) - 2) / s), abs=1e-15)
    assert i1.cfe == pytest.approx(float(-mpmath.sqrt(2) / s), abs=1e-15)
    assert i1.cu == pytest.approx(0.0917517, abs=1e-7)
    assert i1.cfe == pytest.approx(-0.2886751, abs=1e-7)


@pytest.mark.parametrize("c", [1.1, 2.0, 5.0, 37.0, 0.05, 0.25, 0.5, 0.95])
def test_idempotent_identities(c):
    p = al.make_params(c)
    a, b = al.idempotents(p)
    assert al.mul(a, a, p).isclose(a)
    assert al.mul(b, b, p).isclose(b)
    assert al.mul(a, b, p).isclose(al.zero(p))
    assert (a + b).isclose(al.unit(p))


@pytest.mark.parametrize("c,expected", [(5, (0, 0, 1, 0)), (2, (0, 0, 1, 0)), (0.5, (0, 1)), (0.25, (0, 1))])
def test_e_from_idempotents(c, expected):
    e = al.e_from_idempotents(al.make_params(c))
    np.testing.assert_allclose(e.coords, expected, atol=1e-12)


@pytest.mark.parametrize("c", [5.0, 0.5, 3.0, 1.2, 0.9])
def test_generator_residual_vanishes(c):
    assert np.max(np.abs(al.generator_residual(al.make_params(c)).coords)) <= 1e-12


def test_e_fourth_power_c3():
    # hand expansion: e^4 = (1 + m^2) u - (2m + m^3) fe with m = 2
    p = al.make_params(3)
    assert p.m == pytest.approx(2.0)
    e4 = al.power(al.HYPER_E, 4, p)
    assert e4.isclose(al.HyperElement(5, 0, 0, -12))


def test_generator_residual_sensitive_to_fault():
    p = al.make_params(5)
    with al.cayley_fault(1e-3):
        assert np.max(np.abs(al.generator_residual(p).coords)) > 1e-4
    assert np.max(np.abs(al.generator_residual(p).coords)) <= 1e-12


# -- inverses in B_c --------------------------------------------------------


def test_invert_examples():
    p = al.make_params(0.5)
    assert al.invert_in_Bc(1, 0, p).isclose(al.ELLIPTIC_UNIT)
    assert al.invert_in_Bc(1, 1, p).isclose(al.EllipticElement(1 - 1j, 1j))
    assert al.bc_determinant(1, 1, p) == pytest.approx(1j)
    with pytest.raises(NotInvertible):
        al.invert_in_Bc(0, 0, p)


@given(finite, finite, ell_c)
def test_inverse_property(s, t, c):
    if s == 0 and t == 0:
        return
    p = al.make_params(c)
    if abs(al.bc_determinant(s, t, p)) < 1e-6 * (s * s + t * t) or s * s + t * t < 1e-200:
        return
    w = al.EllipticElement(s, t)
    assert al.elliptic_mul(w, al.invert_in_Bc(s, t, p), p).isclose(al.ELLIPTIC_UNIT, 1e-9)
    assert al.bc_determinant(s, t, p) == pytest.approx(np.linalg.det(al.bc_inverse_system(s, t, p)), abs=1e-9 * (1 + s * s + t * t))


# -- matrix representation ---------------------------------------------------


def test_matrix_rep_e():
    p = al.make_params(0.5)
    np.testing.assert_allclose(al.matrix_rep(al.ELLIPTIC_E, p), [[0, 1], [1, 1j]])


def test_trace_form_c_half():
    p = al.make_params(0.5)
    G = al.trace_form(p)
    assert G[0, 0] == pytest.approx(2)
    assert G[0, 1] == pytest.approx(1j)
    assert G[1, 1] == pytest.approx(1)  # 2 - mu^2
    assert al.trace_form_det(p) == pytest.approx(3)


@given(elliptic_elements(), elliptic_elements(), ell_c)
def test_matrix_rep_homomorphism(a, b, c):
    p = al.make_params(c)
    lhs = al.matrix_rep(al.elliptic_mul(a, b, p), p)
    rhs = al.matrix_rep(a, p) @ al.matrix_rep(b, p)
    np.testing.assert_allclose(lhs, rhs, atol=1e-10)


# -- spectral coordinates ---------------------------------------------------


@pytest.mark.parametrize("c", [5.0, 0.5])
def test_decompose_y_zero(c):
    p = al.make_params(c)
    sc = al.decompose_w(1.0, 0.0, p)
    if p.hyperbolic:
        assert sc.w1 == (1.0, 0.0) and sc.w2 == (1.0, 0.0)
    else:
        assert sc.w1 == 1 and sc.w2 == 1


def test_decompose_examples():
    sc = al.decompose_w(0.0, 1.0, al.make_params(5))
    assert sc.w1.a == 0 and sc.w1.b == pytest.approx(-3.1462643, abs=1e-7)
    assert sc.w2.a == 0 and sc.w2.b == pytest.approx(0.3178372, abs=1e-7)
    sc = al.decompose_w(0.0, 1.0, al.make_params(0.5))
    assert sc.w1 == pytest.approx(0.8660254 + 0.5j, abs=1e-7)
    assert sc.w2 == pytest.approx(-0.8660254 + 0.5j, abs=1e-7)


@given(finite, finite, hyper_c | ell_c)
def test_decompose_roundtrip(x, y, c):
    p = al.make_params(c)
    back = al.recombine(al.decompose_w(x, y, p), p)
    assert back.isclose(al.w_element(x, y, p), 1e-12)
