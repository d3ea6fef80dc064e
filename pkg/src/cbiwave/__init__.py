"""Hypercomplex-algebra construction and verification of c-biwave solutions."""

from .algebra import (
    AlgebraParams,
    EllipticElement,
    HyperElement,
    Regime,
    decompose_w,
    e_from_idempotents,
    elliptic_mul,
    generator_residual,
    hyper_mul,
    idempotents,
    invert_in_Bc,
    make_params,
    matrix_rep,
    trace_form_det,
)
from .analytic import (
    ComplexGaussian,
    ComplexPolynomial,
    ComponentVector,
    Exponential,
    Gaussian,
    Polynomial,
    ScaledExp,
    ScaledSine,
    Sine,
    SplitAnalytic,
    cr_residual,
    eval_split,
    monogenic_components_elliptic,
    monogenic_components_hyper,
)
from .errors import (
    BiwaveError,
    ConfigError,
    DegenerateParameter,
    GridTooSmall,
    InvalidParameter,
    NotInvertible,
    WrongRegime,
)
from .polynomial import Poly2D
from .synthesis import (
    EllipticSolutionSpec,
    Field,
    HyperbolicSolutionSpec,
    partial_solution_residual,
    solution_components_from_monogenic,
    synth_elliptic,
    synth_hyperbolic,
)
from .verify import (
    FactorOrder,
    ScalarGrid,
    biwave_apply_poly,
    biwave_residual_fd,
    characteristic_roots,
    wave_factorization_residual,
)

__version__ = "0.1.0"

__all__ = [
    "AlgebraParams",
    "biwave_apply_poly",
    "biwave_residual_fd",
    "BiwaveError",
    "characteristic_roots",
    "ComplexGaussian",
    "ComplexPolynomial",
    "ComponentVector",
    "ConfigError",
    "cr_residual",
    "decompose_w",
    "DegenerateParameter",
    "e_from_idempotents",
    "elliptic_mul",
    "EllipticElement",
    "EllipticSolutionSpec",
    "eval_split",
    "Exponential",
    "FactorOrder",
    "Field",
    "Gaussian",
    "generator_residual",
    "GridTooSmall",
    "hyper_mul",
    "HyperbolicSolutionSpec",
    "HyperElement",
    "idempotents",
    "InvalidParameter",
    "invert_in_Bc",
    "make_params",
    "matrix_rep",
    "monogenic_components_elliptic",
    "monogenic_components_hyper",
    "NotInvertible",
    "partial_solution_residual",
    "Poly2D",
    "Polynomial",
    "Regime",
    "ScalarGrid",
    "ScaledExp",
    "ScaledSine",
    "Sine",
    "solution_components_from_monogenic",
    "SplitAnalytic",
    "synth_elliptic",
    "synth_hyperbolic",
    "trace_form_det",
    "wave_factorization_residual",
    "WrongRegime",
]
