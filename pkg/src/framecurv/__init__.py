"""framecurv: sectional curvature of 2D metrics from constant-pairing frames.

Describe a surface by two vector fields X1, X2 on a chart together with
the three constants a11 = g(X1,X1), a12 = g(X1,X2), a22 = g(X2,X2); the
library computes the sectional curvature symbolically, by a closed form
in the structural functions of the frame, by the full step-by-step
derivation, by simplified forms for orthonormal/orthogonal frames, and
independently through coordinate Christoffel symbols for cross-checking.
"""

from .classify import ClassificationVerdict, ModelSpace, classify
from .errors import (
    DegenerateMetric,
    DomainError,
    EmptyInput,
    InputError,
    ParseError,
    PreconditionViolated,
    SingularFrame,
)
from .expr import (
    Binary,
    Constant,
    Expr,
    Unary,
    Variable,
    compile_expr,
    differentiate,
    evaluate,
    free_variables,
    parse_expr,
    simplify,
    to_text,
)
from .frames import (
    EPS_FRAME,
    Chart,
    ChartFrame,
    ConnectionData,
    MetricConstants,
    RiemannPair,
    StructuralFunctions,
    VectorField,
    check_frame,
    commutator,
    connection_weights,
    covariant_derivatives,
    eval_on_grid,
    field_derivative,
    frame_determinant,
    gram_determinant,
    grid_points,
    interior_samples,
    k_closed_form,
    k_orthogonal,
    k_orthogonal_a11,
    k_orthonormal,
    k_pipeline,
    riemann_frame_components,
    structural_functions,
    validation_points,
)
from .oracle import (
    CoordinateMetric,
    LeftInvariantFixture,
    christoffels,
    coordinate_metric,
    k_oracle,
    k_oracle_expr,
)

__version__ = "0.1.0"

__all__ = [
    "Binary",
    "Chart",
    "ChartFrame",
    "ClassificationVerdict",
    "ConnectionData",
    "Constant",
    "CoordinateMetric",
    "DegenerateMetric",
    "DomainError",
    "EPS_FRAME",
    "EmptyInput",
    "Expr",
    "InputError",
    "LeftInvariantFixture",
    "MetricConstants",
    "ModelSpace",
    "ParseError",
    "PreconditionViolated",
    "RiemannPair",
    "SingularFrame",
    "StructuralFunctions",
    "Unary",
    "Variable",
    "VectorField",
    "check_frame",
    "christoffels",
    "classify",
    "commutator",
    "compile_expr",
    "connection_weights",
    "coordinate_metric",
    "covariant_derivatives",
    "differentiate",
    "eval_on_grid",
    "evaluate",
    "field_derivative",
    "frame_determinant",
    "free_variables",
    "gram_determinant",
    "grid_points",
    "interior_samples",
    "k_closed_form",
    "k_oracle",
    "k_oracle_expr",
    "k_orthogonal",
    "k_orthogonal_a11",
    "k_orthonormal",
    "k_pipeline",
    "parse_expr",
    "riemann_frame_components",
    "simplify",
    "structural_functions",
    "to_text",
    "validation_points",
]
