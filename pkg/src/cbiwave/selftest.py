"""Seeded invariant battery behind ``cbiwave selftest``.

Each suite returns ``(ok, detail)``; the report is a pure function of the
seed, so repeated runs print byte-identical output.
"""

from __future__ import annotations

from typing import Callable

import numpy as np

from . import algebra as al
from . import randspec
from .analytic import (
    ComponentVector,
    cr_residual,
    monogenic_components_elliptic,
    monogenic_components_hyper,
)
from .analytic import Polynomial, Sine, ZERO
from .polynomial import Poly2D
from .synthesis import partial_solution_residual, synth_elliptic, synth_hyperbolic
from .verify import (
    FactorOrder,
    ScalarGrid,
    biwave_apply_poly,
    biwave_residual_fd,
    characteristic_polynomial,
    characteristic_roots,
    convergence_orders,
    interior_max,
    wave_factor_apply,
)

C_GRID = tuple(np.geomspace(1.01, 100.0, 25)) + tuple(np.linspace(0.02, 0.98, 25))
TOL = 1e-12


def _random_element(rng, p):
    if p.hyperbolic:
        return al.HyperElement(*rng.uniform(-1.0, 1.0, 4))
    z = rng.uniform(-1.0, 1.0, 4)
    return al.EllipticElement(complex(z[0], z[1]), complex(z[2], z[3]))


def _rel(a, b):
    a, b = a.coords, b.coords
    return float(np.max(np.abs(a - b)) / max(1.0, np.max(np.abs(a)), np.max(np.abs(b))))


def suite_algebra_laws(rng):
    worst = 0.0
    for c in randspec.HYPERBOLIC_CS + randspec.ELLIPTIC_CS:
        p = al.make_params(c)
        for _ in range(200):
            a, b, d = (_random_element(rng, p) for _ in range(3))
            worst = max(
                worst,
                _rel(al.mul(a, b, p), al.mul(b, a, p)),
                _rel(al.mul(al.mul(a, b, p), d, p), al.mul(a, al.mul(b, d, p), p)),
            )
    return worst <= TOL, f"max rel err {worst:.2e}"


def suite_generator_identity(rng):
    worst = max(float(np.max(np.abs(al.generator_residual(al.make_params(c)).coords))) for c in C_GRID)
    return worst <= TOL, f"max |u^4 - 2c u^2 e^2 + e^4| {worst:.2e}"


def suite_idempotents(rng):
    worst = 0.0
    for c in C_GRID:
        p = al.make_params(c)
        a, b = al.idempotents(p)
        worst = max(
            worst,
            _rel(al.mul(a, a, p), a),
            _rel(al.mul(b, b, p), b),
            _rel(a + b, al.unit(p)),
            _rel(al.mul(a, b, p), al.zero(p)),
            _rel(al.e_from_idempotents(p), al.basis_e(p)),
        )
    return worst <= TOL, f"max err {worst:.2e}"


def suite_key_identity(rng):
    worst = max(abs(al.key_identity_gap(al.make_params(c))) for c in C_GRID if c > 1)
    return worst <= TOL, f"max |k2 m/sqrt2 + 1 - k2^2/2| {worst:.2e}"


def suite_characteristic_roots(rng):
    worst, worst_k = 0.0, 0.0
    for c in C_GRID:
        p = al.make_params(c)
        worst = max(worst, float(np.max(np.abs(characteristic_polynomial(characteristic_roots(p), c)))))
        worst_k = max(worst_k, abs(p.k1 * p.k2 - 2.0))
    return worst <= 1e-10 and worst_k <= TOL, f"max |quartic| {worst:.2e}, max |k1 k2 - 2| {worst_k:.2e}"


def suite_bc_inverse(rng):
    worst, worst_det = 0.0, 0.0
    for c in randspec.ELLIPTIC_CS:
        p = al.make_params(c)
        for _ in range(200):
            s, t = rng.uniform(-2.0, 2.0, 2)
            w = al.EllipticElement(s, t)
            worst = max(worst, _rel(al.elliptic_mul(w, al.invert_in_Bc(s, t, p), p), al.ELLIPTIC_UNIT))
            d1, d2 = al.bc_determinant(s, t, p), np.linalg.det(al.bc_inverse_system(s, t, p))
            worst_det = max(worst_det, abs(d1 - d2))
        try:
            al.invert_in_Bc(0.0, 0.0, p)
            return False, "zero element was inverted"
        except al.NotInvertible:
            pass
    return worst <= TOL and worst_det <= TOL, f"max |w w^-1 - u| {worst:.2e}, det mismatch {worst_det:.2e}"


def suite_trace_form(rng):
    worst, worst_hom = 0.0, 0.0
    for c in randspec.ELLIPTIC_CS:
        p = al.make_params(c)
        worst = max(worst, abs(al.trace_form_det(p) - 2.0 * (1.0 + c)))
        for _ in range(100):
            a, b = _random_element(rng, p), _random_element(rng, p)
            lhs = al.matrix_rep(al.elliptic_mul(a, b, p), p)
            rhs = al.matrix_rep(a, p) @ al.matrix_rep(b, p)
            worst_hom = max(worst_hom, float(np.max(np.abs(lhs - rhs))))
    return worst <= TOL and worst_hom <= TOL, f"det err {worst:.2e}, homomorphism err {worst_hom:.2e}"


def suite_cauchy_riemann(rng):
    ratios = []
    for k in range(6):
        if k % 2 == 0:
            p = al.make_params(randspec.HYPERBOLIC_CS[k // 2])
            a, b = randspec.split_pair(rng), randspec.split_pair(rng)
            sampler = lambda x, y, a=a, b=b, p=p: monogenic_components_hyper(a, b, p, x, y)  # noqa: E731
        else:
            p = al.make_params(randspec.ELLIPTIC_CS[k // 2])
            a, b = randspec.transcendental_analytic(rng), randspec.transcendental_analytic(rng)
            sampler = lambda x, y, a=a, b=b, p=p: monogenic_components_elliptic(a, b, p, x, y)  # noqa: E731
        r = [cr_residual(sampler, p, h=h).max_abs() for h in (0.02, 0.01)]
        ratios.append(r[0] / r[1])
    bad = cr_residual(lambda x, y: ComponentVector(y, 0 * x, 0 * x, 0 * x), al.make_params(5.0), h=0.05)
    neg = float(np.nanmax(np.abs(bad.r1.values - 1.0)))
    ok = all(2.5 <= r <= 6.0 for r in ratios) and neg <= 1e-6
    return ok, f"h-halving ratios {min(ratios):.2f}..{max(ratios):.2f}, non-monogenic control err {neg:.1e}"


def suite_polynomial_oracle(rng):
    worst = 0.0
    for k in range(8):
        if k % 2 == 0:
            c = randspec.HYPERBOLIC_CS[k // 2]
            f = synth_hyperbolic(randspec.hyperbolic_spec(rng, randspec.polynomial_profile), c)
        else:
            c = randspec.ELLIPTIC_CS[k // 2 % 3]
            f = synth_elliptic(randspec.elliptic_spec(rng, randspec.polynomial_analytic), c)
        scale = max(f.poly.max_abs_coef(), 1e-300)
        worst = max(worst, biwave_apply_poly(f.poly, c).max_abs_coef() / scale)
    neg = biwave_apply_poly(Poly2D.monomial(4, 0), 5.0)
    ok = worst <= 1e-9 and neg.allclose(Poly2D([[24.0]]))
    return ok, f"max rel coefficient residual {worst:.2e}"


def suite_fd_convergence(rng):
    orders = []
    for k in range(4):
        if k % 2 == 0:
            c = randspec.HYPERBOLIC_CS[k // 2]
            f = synth_hyperbolic(randspec.hyperbolic_spec(rng), c)
        else:
            c = randspec.ELLIPTIC_CS[k // 2]
            f = synth_elliptic(randspec.elliptic_spec(rng), c)
        errs = [interior_max(biwave_residual_fd(ScalarGrid.sample_h(f, h), c)) for h in (0.04, 0.02, 0.01)]
        orders += convergence_orders(errs)
    g = ScalarGrid.sample_h(lambda x, y: x**4, 0.05)
    neg = interior_max(biwave_residual_fd(g, 5.0))
    ok = all(1.3 <= o <= 2.7 for o in orders) and abs(neg - 24.0) <= 1e-3
    return ok, f"orders {min(orders):.2f}..{max(orders):.2f}, x^4 control residual {neg:.6f}"


def suite_factorization(rng):
    worst_rel, orders = 0.0, []
    for c in (1.5, 5.0):
        u, lu = randspec.trig_field(rng)
        errs = {order: [] for order in FactorOrder}
        for h in (0.02, 0.01):
            g = ScalarGrid.sample_h(u, h)
            direct = biwave_residual_fd(g, c).values
            X, Y = g.mesh()
            exact = lu(X, Y, c)
            for order in FactorOrder:
                fac = wave_factor_apply(g, c, order).values
                worst_rel = max(worst_rel, float(np.nanmax(np.abs(fac - direct)) / np.nanmax(np.abs(direct))))
                errs[order].append(float(np.nanmax(np.abs(fac - exact))))
        for e in errs.values():
            orders += convergence_orders(e)
    ok = worst_rel <= 1e-2 and all(1.3 <= o <= 2.7 for o in orders)
    return ok, f"factored vs direct rel {worst_rel:.2e}, orders {min(orders):.2f}..{max(orders):.2f}"


def suite_partial_solution(rng):
    orders = []
    for F in (Polynomial((0, 0, 0, 0, 1)), Sine()):
        for c in (2.0, 5.0):
            errs = [interior_max(partial_solution_residual(F, ZERO, c, h=h)) for h in (0.04, 0.02, 0.01)]
            orders += convergence_orders(errs)
    ok = all(1.7 <= o <= 2.3 for o in orders)
    return ok, f"orders {min(orders):.2f}..{max(orders):.2f}"


SUITES: list[tuple[str, Callable]] = [
    ("algebra-laws", suite_algebra_laws),
    ("generator-identity", suite_generator_identity),
    ("idempotents", suite_idempotents),
    ("key-identity", suite_key_identity),
    ("characteristic-roots", suite_characteristic_roots),
    ("bc-inverse", suite_bc_inverse),
    ("trace-form", suite_trace_form),
    ("cauchy-riemann", suite_cauchy_riemann),
    ("polynomial-oracle", suite_polynomial_oracle),
    ("fd-convergence", suite_fd_convergence),
    ("factorization", suite_factorization),
    ("partial-solution", suite_partial_solution),
]


def run_selftest(seed: int = 42, emit: Callable[[str], None] = print) -> bool:
    all_ok = True
    for index, (name, suite) in enumerate(SUITES):
        rng = np.random.default_rng([seed, index])
        try:
            ok, detail = suite(rng)
        except Exception as exc:  # a crashing suite is a failing suite
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        all_ok &= ok
        emit(f"{name:<22} {'PASS' if ok else 'FAIL'}  {detail}")
    emit(f"selftest: {'PASS' if all_ok else 'FAIL'} (seed {seed})")
    return all_ok
