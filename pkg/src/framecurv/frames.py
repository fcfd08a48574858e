"""Curvature of a 2D metric described by a frame with constant pairings.

The input is a chart with two vector fields X1, X2 (given componentwise as
expressions) together with three constants a11 = g(X1,X1), a12 = g(X1,X2),
a22 = g(X2,X2).  Writing [X1,X2] = c1*X1 + c2*X2 for the structural
functions and det(A) = a11*a22 - a12^2, the sectional curvature is the
scalar field

    K = (a12*r1 + a22*r2) / det(A)^2

where (r1, r2) are the frame components of det(A) * R(X1,X2)X1 built from

    w1 = a11*c1 + a12*c2        w2 = a12*c1 + a22*c2
    s  = c1*w1 + c2*w2 - X1(w2) + X2(w1)
    r1 = a12*s                  r2 = -a11*s

with X(f) the derivative of f along the field X.  The curvature operator
convention is R(X,Y)Z = D_[X,Y] Z - (D_X D_Y - D_Y D_X) Z, the negative of
the convention many textbooks use; the sign is pinned by tests against the
coordinate-based computation in the oracle module.

Everything is symbolic until the final evaluation, so there is no
finite-difference error anywhere in this module.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .errors import DegenerateMetric, DomainError, PreconditionViolated, SingularFrame
from .expr import (
    Constant,
    Expr,
    add,
    compile_expr,
    con,
    differentiate,
    div,
    mul,
    neg,
    parse_expr,
    powc,
    simplify,
    sub,
)

__all__ = [
    "EPS_FRAME",
    "DEFAULT_SEED",
    "Chart",
    "VectorField",
    "ChartFrame",
    "MetricConstants",
    "StructuralFunctions",
    "ConnectionData",
    "RiemannPair",
    "grid_points",
    "interior_samples",
    "validation_points",
    "frame_determinant",
    "check_frame",
    "field_derivative",
    "commutator",
    "structural_functions",
    "connection_weights",
    "covariant_derivatives",
    "riemann_frame_components",
    "gram_determinant",
    "k_closed_form",
    "k_pipeline",
    "k_orthonormal",
    "k_orthogonal",
    "k_orthogonal_a11",
    "eval_on_grid",
]

# frame matrix determinants below this magnitude count as singular
EPS_FRAME = 1e-10

# default seed for the extra random points used in precondition checks
DEFAULT_SEED = 42

# fraction of the interval length kept away from each domain endpoint
_EDGE_INSET = 1e-6

_IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")

Point = dict[str, float]


@dataclass(frozen=True)
class Chart:
    """Two named coordinates, each with a closed interval of interest."""

    vars: tuple[str, str]
    domain: tuple[tuple[float, float], tuple[float, float]]

    def __post_init__(self):
        names = tuple(self.vars)
        if len(names) != 2 or names[0] == names[1]:
            raise ValueError("a chart needs exactly two distinct variables")
        for name in names:
            if not isinstance(name, str) or not _IDENT_RE.match(name):
                raise ValueError(f"invalid variable name {name!r}")
        intervals = tuple(
            (float(lo), float(hi)) for lo, hi in self.domain
        )
        if len(intervals) != 2:
            raise ValueError("a chart needs one interval per variable")
        for lo, hi in intervals:
            if not (lo < hi):
                raise ValueError(f"empty interval [{lo}, {hi}]")
        object.__setattr__(self, "vars", names)
        object.__setattr__(self, "domain", intervals)

    def interval(self, name: str) -> tuple[float, float]:
        return self.domain[self.vars.index(name)]


@dataclass(frozen=True)
class VectorField:
    """A vector field given by its two component expressions."""

    components: tuple[Expr, Expr]

    def __post_init__(self):
        parts = tuple(self.components)
        if len(parts) != 2:
            raise ValueError("a vector field needs exactly two components")
        object.__setattr__(self, "components", parts)

    @classmethod
    def parse(cls, texts: Sequence[str], chart: Chart) -> "VectorField":
        return cls(tuple(simplify(parse_expr(t, chart.vars)) for t in texts))


@dataclass(frozen=True)
class ChartFrame:
    """A pair of vector fields expected to be independent on the chart."""

    chart: Chart
    x1: VectorField
    x2: VectorField

    @classmethod
    def from_strings(
        cls, chart: Chart, x1: Sequence[str], x2: Sequence[str]
    ) -> "ChartFrame":
        return cls(chart, VectorField.parse(x1, chart), VectorField.parse(x2, chart))


@dataclass(frozen=True)
class MetricConstants:
    """The three constant pairings a11 = g(X1,X1), a12 = g(X1,X2), a22 = g(X2,X2)."""

    a11: float
    a12: float
    a22: float

    def __post_init__(self):
        for field_name in ("a11", "a12", "a22"):
            object.__setattr__(self, field_name, float(getattr(self, field_name)))

    @property
    def det(self) -> float:
        return self.a11 * self.a22 - self.a12 * self.a12

    @property
    def lorentzian(self) -> bool:
        return self.det < 0.0


@dataclass(frozen=True)
class StructuralFunctions:
    """Coefficients of [X1,X2] = c1*X1 + c2*X2."""

    c1: Expr
    c2: Expr


@dataclass(frozen=True)
class ConnectionData:
    """Connection of a constant-pairing frame.

    w1 and w2 are the metric-row contractions of the structural functions
    (w_i = a_i1*c1 + a_i2*c2); every covariant derivative of the frame is a
    multiple of one of them.  d11..d22 hold the frame coefficients of
    D_{X_i} X_j as (along X1, along X2) pairs.
    """

    w1: Expr
    w2: Expr
    d11: tuple[Expr, Expr]
    d12: tuple[Expr, Expr]
    d21: tuple[Expr, Expr]
    d22: tuple[Expr, Expr]


@dataclass(frozen=True)
class RiemannPair:
    """Frame components of det(A) * R(X1,X2)X1: r1 along X1, r2 along X2."""

    r1: Expr
    r2: Expr


# ---------------------------------------------------------------------------
# sampling


def grid_points(chart: Chart, n: int) -> list[Point]:
    """Uniform n-by-n grid over the chart, endpoints inset by 1e-6 of each
    interval length, row-major in the first variable."""
    if n < 2:
        raise ValueError("grid needs n >= 2")

    def axis(lo: float, hi: float) -> list[float]:
        inset = _EDGE_INSET * (hi - lo)
        a, b = lo + inset, hi - inset
        return [a + (b - a) * i / (n - 1) for i in range(n)]

    (lo1, hi1), (lo2, hi2) = chart.domain
    v1, v2 = chart.vars
    return [{v1: x, v2: y} for x in axis(lo1, hi1) for y in axis(lo2, hi2)]


def interior_samples(chart: Chart, count: int, seed: int = DEFAULT_SEED) -> list[Point]:
    """Deterministic uniform-random interior points."""
    rng = random.Random(seed)
    (lo1, hi1), (lo2, hi2) = chart.domain
    in1 = _EDGE_INSET * (hi1 - lo1)
    in2 = _EDGE_INSET * (hi2 - lo2)
    v1, v2 = chart.vars
    return [
        {
            v1: lo1 + in1 + (hi1 - lo1 - 2 * in1) * rng.random(),
            v2: lo2 + in2 + (hi2 - lo2 - 2 * in2) * rng.random(),
        }
        for _ in range(count)
    ]


def validation_points(
    chart: Chart, n: int = 21, extra: int = 20, seed: int = DEFAULT_SEED
) -> list[Point]:
    """The sample set used to enforce "at every point" preconditions: an
    n-by-n grid plus `extra` seeded random interior points."""
    return grid_points(chart, n) + interior_samples(chart, extra, seed)


def _eval_compiled(fn: Callable[..., float], point: Point, order: Sequence[str]) -> float:
    try:
        return fn(*(point[name] for name in order))
    except DomainError as exc:
        raise DomainError(exc.message, point=point) from None


# ---------------------------------------------------------------------------
# frame algebra


def frame_determinant(frame: ChartFrame) -> Expr:
    """det of the matrix whose columns are the components of X1 and X2."""
    x1, x2 = frame.x1.components, frame.x2.components
    return simplify(sub(mul(x1[0], x2[1]), mul(x2[0], x1[1])))


def check_frame(frame: ChartFrame, points: Iterable[Point]) -> None:
    """Raise SingularFrame if |det| <= EPS_FRAME at any of the points."""
    det = frame_determinant(frame)
    fn = compile_expr(det, frame.chart.vars)
    for point in points:
        value = _eval_compiled(fn, point, frame.chart.vars)
        if abs(value) <= EPS_FRAME:
            raise SingularFrame(
                f"frame determinant {value!r} within {EPS_FRAME} of zero", point=point
            )


def field_derivative(field: VectorField, f: Expr, chart: Chart) -> Expr:
    """X(f) = X^1 * df/dv1 + X^2 * df/dv2."""
    v1, v2 = chart.vars
    return add(
        mul(field.components[0], differentiate(f, v1)),
        mul(field.components[1], differentiate(f, v2)),
    )


def commutator(frame: ChartFrame) -> VectorField:
    """[X1,X2] componentwise: sum_j X1^j d_j X2^k - X2^j d_j X1^k."""
    chart = frame.chart
    x1, x2 = frame.x1.components, frame.x2.components
    parts = []
    for k in range(2):
        first = add(
            mul(x1[0], differentiate(x2[k], chart.vars[0])),
            mul(x1[1], differentiate(x2[k], chart.vars[1])),
        )
        second = add(
            mul(x2[0], differentiate(x1[k], chart.vars[0])),
            mul(x2[1], differentiate(x1[k], chart.vars[1])),
        )
        parts.append(simplify(sub(first, second)))
    return VectorField((parts[0], parts[1]))


def structural_functions(
    frame: ChartFrame,
    comm: VectorField | None = None,
    sample_points: Iterable[Point] | None = None,
) -> StructuralFunctions:
    """Solve [X1,X2] = c1*X1 + c2*X2 for c1, c2 by Cramer's rule.

    The frame determinant is checked at the sample points (default: the
    21x21 validation grid plus 20 seeded random points); SingularFrame is
    raised if it comes within EPS_FRAME of zero anywhere.
    """
    if comm is None:
        comm = commutator(frame)
    x1, x2 = frame.x1.components, frame.x2.components
    w = comm.components
    det = frame_determinant(frame)
    if isinstance(det, Constant) and det.value == 0.0:
        raise SingularFrame("frame determinant is identically zero")
    points = (
        list(sample_points) if sample_points is not None else validation_points(frame.chart)
    )
    check_frame(frame, points)
    c1 = simplify(div(sub(mul(w[0], x2[1]), mul(x2[0], w[1])), det))
    c2 = simplify(div(sub(mul(x1[0], w[1]), mul(w[0], x1[1])), det))
    return StructuralFunctions(c1, c2)


def connection_weights(metric: MetricConstants, c: StructuralFunctions) -> tuple[Expr, Expr]:
    """w_i = a_i1*c1 + a_i2*c2, the two scalars every covariant derivative
    of the frame is proportional to."""
    w1 = simplify(add(mul(con(metric.a11), c.c1), mul(con(metric.a12), c.c2)))
    w2 = simplify(add(mul(con(metric.a12), c.c1), mul(con(metric.a22), c.c2)))
    return w1, w2


def covariant_derivatives(
    metric: MetricConstants, w1: Expr, w2: Expr
) -> ConnectionData:
    """Frame coefficients of D_{X_i} X_j for the Levi-Civita connection:

        D_{X1} X1 = (w1/det)(a12*X1 - a11*X2)
        D_{X1} X2 = (w1/det)(a22*X1 - a12*X2)
        D_{X2} X1 = (w2/det)(a12*X1 - a11*X2)
        D_{X2} X2 = (w2/det)(a22*X1 - a12*X2)

    The eight pairings these produce are (0, -w1, w1, 0, 0, -w2, w2, 0) in
    the order g(D1X1,X1), g(D1X1,X2), g(D1X2,X1), g(D1X2,X2), g(D2X1,X1),
    g(D2X1,X2), g(D2X2,X1), g(D2X2,X2).
    """
    det = metric.det
    if det == 0.0:
        raise DegenerateMetric("constant pairings have zero determinant")

    def pair(scale: Expr, u: float, v: float) -> tuple[Expr, Expr]:
        return (mul(con(u / det), scale), mul(con(v / det), scale))

    return ConnectionData(
        w1=w1,
        w2=w2,
        d11=pair(w1, metric.a12, -metric.a11),
        d12=pair(w1, metric.a22, -metric.a12),
        d21=pair(w2, metric.a12, -metric.a11),
        d22=pair(w2, metric.a22, -metric.a12),
    )


def _riemann_pair(
    metric: MetricConstants,
    frame: ChartFrame,
    c: StructuralFunctions,
    w1: Expr,
    w2: Expr,
) -> tuple[Expr, Expr]:
    chart = frame.chart
    s = add(
        sub(
            add(mul(c.c1, w1), mul(c.c2, w2)),
            field_derivative(frame.x1, w2, chart),
        ),
        field_derivative(frame.x2, w1, chart),
    )
    return mul(con(metric.a12), s), mul(con(metric.a11), neg(s))


def riemann_frame_components(
    metric: MetricConstants,
    frame: ChartFrame,
    c: StructuralFunctions,
    conn: ConnectionData,
) -> RiemannPair:
    """Frame components (r1, r2) of det(A) * R(X1,X2)X1:

        s  = c1*w1 + c2*w2 - X1(w2) + X2(w1)
        r1 = a12*s,   r2 = -a11*s
    """
    if metric.det == 0.0:
        raise DegenerateMetric("constant pairings have zero determinant")
    r1, r2 = _riemann_pair(metric, frame, c, conn.w1, conn.w2)
    return RiemannPair(simplify(r1), simplify(r2))


def gram_determinant(metric: MetricConstants) -> float:
    """Gram determinant of the plane spanned by the frame:
    g(X1,X1)g(X2,X2) - g(X1,X2)^2 = det(A)."""
    return metric.det


def k_closed_form(
    metric: MetricConstants, frame: ChartFrame, c: StructuralFunctions
) -> Expr:
    """Sectional curvature K = (a12*r1 + a22*r2) / det(A)^2 directly from
    the structural functions."""
    det = metric.det
    if det == 0.0:
        raise DegenerateMetric("constant pairings have zero determinant")
    w1, w2 = connection_weights(metric, c)
    r1, r2 = _riemann_pair(metric, frame, c, w1, w2)
    num = add(mul(con(metric.a12), r1), mul(con(metric.a22), r2))
    return simplify(div(num, con(det * det)))


def k_pipeline(
    metric: MetricConstants,
    frame: ChartFrame,
    sample_points: Iterable[Point] | None = None,
) -> Expr:
    """Sectional curvature through every intermediate step: commutator,
    structural functions, connection weights, covariant derivatives, the
    Riemann pair, then K = g(R(X1,X2)X1, X2) / Gram expanded via the
    constant pairings."""
    if metric.det == 0.0:
        raise DegenerateMetric("constant pairings have zero determinant")
    comm = commutator(frame)
    c = structural_functions(frame, comm, sample_points=sample_points)
    w1, w2 = connection_weights(metric, c)
    conn = covariant_derivatives(metric, w1, w2)
    pair = riemann_frame_components(metric, frame, c, conn)
    det = con(metric.det)
    paired_with_x2 = add(
        mul(con(metric.a12), div(pair.r1, det)),
        mul(con(metric.a22), div(pair.r2, det)),
    )
    return simplify(div(paired_with_x2, con(gram_determinant(metric))))


def k_orthonormal(frame: ChartFrame, c: StructuralFunctions) -> Expr:
    """K for pairings exactly (-1, 0, 1):
    K = -c1^2 + c2^2 - X2(c1) - X1(c2).  The caller asserts the metric."""
    chart = frame.chart
    body = sub(
        sub(
            add(neg(powc(c.c1, 2.0)), powc(c.c2, 2.0)),
            field_derivative(frame.x2, c.c1, chart),
        ),
        field_derivative(frame.x1, c.c2, chart),
    )
    return simplify(body)


def _orthogonal_numerator(
    metric: MetricConstants, frame: ChartFrame, c: StructuralFunctions
) -> Expr:
    if metric.a12 != 0.0:
        raise PreconditionViolated("orthogonal form needs a12 == 0")
    if metric.a11 == 0.0 or metric.a22 == 0.0:
        raise DegenerateMetric("orthogonal form needs a11 != 0 and a22 != 0")
    chart = frame.chart
    a11, a22 = con(metric.a11), con(metric.a22)
    return sub(
        sub(
            sub(neg(mul(a11, powc(c.c1, 2.0))), mul(a22, powc(c.c2, 2.0))),
            mul(a11, field_derivative(frame.x2, c.c1, chart)),
        ),
        neg(mul(a22, field_derivative(frame.x1, c.c2, chart))),
    )


def k_orthogonal(
    metric: MetricConstants, frame: ChartFrame, c: StructuralFunctions
) -> Expr:
    """K for a12 == 0:

        K = (-a11*c1^2 - a22*c2^2 - a11*X2(c1) + a22*X1(c2)) / (a11*a22)

    The denominator a11*a22 is what the general formula reduces to; it
    agrees with k_closed_form for every orthogonal input.
    """
    num = _orthogonal_numerator(metric, frame, c)
    return simplify(div(num, con(metric.a11 * metric.a22)))


def k_orthogonal_a11(
    metric: MetricConstants, frame: ChartFrame, c: StructuralFunctions
) -> Expr:
    """Variant of k_orthogonal dividing by a11 alone.

    Disagrees with the general formula by exactly the factor a22 whenever
    a22 != 1; kept so that the discrepancy can be demonstrated and flagged.
    """
    num = _orthogonal_numerator(metric, frame, c)
    return simplify(div(num, con(metric.a11)))


def eval_on_grid(k: Expr, chart: Chart, n: int) -> list[tuple[Point, float]]:
    """Evaluate a scalar field on the n-by-n chart grid.

    Returns (point, value) pairs in grid order.  DomainError is re-raised
    with the offending point attached.
    """
    points = grid_points(chart, n)
    fn = compile_expr(k, chart.vars)
    return [(p, _eval_compiled(fn, p, chart.vars)) for p in points]
