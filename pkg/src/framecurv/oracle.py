"""Independent curvature computation through coordinate components.

This module never touches the frame formulas: it converts the frame data
into the coordinate metric G = E^-T A E^-1 (E is the matrix whose columns
are the frame components), then runs the classical chart machinery -
Christoffel symbols from G, the Riemann tensor from the Christoffels, and
finally

    K = g(R(d1,d2)d1, d2) / (g11*g22 - g12^2)

for the coordinate fields d1, d2.  Everything downstream of G is computed
from G alone (inverse by adjugate, derivatives symbolically), so agreement
with the frame-side formulas is a genuine cross-check.

Sign convention: the curvature operator is R(X,Y)Z = D_[X,Y] Z -
(D_X D_Y - D_Y D_X) Z, i.e. the negative of the textbook-common
R = D_X D_Y - D_Y D_X - D_[X,Y].  A unit-radius negative-curvature chart
must come out as K = -1; tests pin this against a deliberately
textbook-convention computation of the same tensor.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import DegenerateMetric, SingularFrame
from .expr import (
    Constant,
    Expr,
    add,
    con,
    differentiate,
    div,
    evaluate,
    mul,
    neg,
    simplify,
    sub,
)
from .frames import Chart, ChartFrame, MetricConstants, frame_determinant

__all__ = [
    "CoordinateMetric",
    "LeftInvariantFixture",
    "coordinate_metric",
    "christoffels",
    "k_oracle_expr",
    "k_oracle",
]

Matrix = tuple[tuple[Expr, Expr], tuple[Expr, Expr]]


@dataclass(frozen=True)
class CoordinateMetric:
    """Symbolic coordinate components of the metric on a chart."""

    chart: Chart
    g: Matrix
    g_inv: Matrix
    det_g: Expr


@dataclass(frozen=True)
class LeftInvariantFixture:
    """Pairings induced by an invertible 2x2 matrix with rows (a, b), (c, d)
    acting on a frame whose bracket is [X1,X2] = -X1.

    The induced constants are a11 = c^2 - a^2, a12 = c*d - a*b,
    a22 = d^2 - b^2, with det(A) = -(a*d - b*c)^2 < 0, so the metric is
    always Lorentzian.
    """

    a: float
    b: float
    c: float
    d: float

    def __post_init__(self):
        for field_name in ("a", "b", "c", "d"):
            object.__setattr__(self, field_name, float(getattr(self, field_name)))
        if self.det_b == 0.0:
            raise ValueError("matrix must be invertible")

    @property
    def det_b(self) -> float:
        return self.a * self.d - self.b * self.c

    @property
    def metric(self) -> MetricConstants:
        return MetricConstants(
            self.c * self.c - self.a * self.a,
            self.c * self.d - self.a * self.b,
            self.d * self.d - self.b * self.b,
        )


def coordinate_metric(frame: ChartFrame, metric: MetricConstants) -> CoordinateMetric:
    """G = E^-T A E^-1 symbolically, with G^-1 and det G derived from G's
    own entries (adjugate), so that everything downstream depends on the
    coordinate components only."""
    if metric.det == 0.0:
        raise DegenerateMetric("constant pairings have zero determinant")
    det_e = frame_determinant(frame)
    if isinstance(det_e, Constant) and det_e.value == 0.0:
        raise SingularFrame("frame determinant is identically zero")
    x1, x2 = frame.x1.components, frame.x2.components
    # E columns are the frames; F = E^-1 via the 2x2 adjugate
    f = (
        (div(x2[1], det_e), neg(div(x2[0], det_e))),
        (neg(div(x1[1], det_e)), div(x1[0], det_e)),
    )
    a11, a12, a22 = con(metric.a11), con(metric.a12), con(metric.a22)

    def g_entry(i: int, j: int) -> Expr:
        return simplify(
            add(
                add(
                    mul(a11, mul(f[0][i], f[0][j])),
                    mul(a12, add(mul(f[0][i], f[1][j]), mul(f[1][i], f[0][j]))),
                ),
                mul(a22, mul(f[1][i], f[1][j])),
            )
        )

    g00 = g_entry(0, 0)
    g01 = g_entry(0, 1)  # shared with g10: G is symmetric
    g11 = g_entry(1, 1)
    det_g = simplify(sub(mul(g00, g11), mul(g01, g01)))
    inv00 = div(g11, det_g)
    inv01 = div(neg(g01), det_g)
    inv11 = div(g00, det_g)
    return CoordinateMetric(
        chart=frame.chart,
        g=((g00, g01), (g01, g11)),
        g_inv=((inv00, inv01), (inv01, inv11)),
        det_g=det_g,
    )


def christoffels(cm: CoordinateMetric) -> tuple[tuple[tuple[Expr, Expr], ...], ...]:
    """Gamma[k][i][j] = 1/2 * sum_l g_inv[k][l] * (d_i g[j][l] + d_j g[i][l]
    - d_l g[i][j]), symmetric in (i, j) by construction."""
    names = cm.chart.vars
    dg = [
        [[differentiate(cm.g[i][j], names[l]) for j in range(2)] for i in range(2)]
        for l in range(2)
    ]
    half = con(0.5)

    def gamma(k: int, i: int, j: int) -> Expr:
        total: Expr = con(0.0)
        for l in range(2):
            bracket = sub(add(dg[i][j][l], dg[j][i][l]), dg[l][i][j])
            total = add(total, mul(cm.g_inv[k][l], bracket))
        return simplify(mul(half, total))

    out = []
    for k in range(2):
        g00 = gamma(k, 0, 0)
        g01 = gamma(k, 0, 1)
        g11 = gamma(k, 1, 1)
        out.append(((g00, g01), (g01, g11)))
    return tuple(out)


def _textbook_riemann_components(
    cm: CoordinateMetric, gamma: tuple[tuple[tuple[Expr, Expr], ...], ...]
) -> tuple[Expr, Expr]:
    """Components along (d1, d2) of the textbook-convention
    (D_1 D_2 - D_2 D_1) applied to d1:

        R^l = d_1 Gamma^l_21 - d_2 Gamma^l_11
              + sum_m (Gamma^l_1m Gamma^m_21 - Gamma^l_2m Gamma^m_11)
    """
    names = cm.chart.vars
    out = []
    for l in range(2):
        terms: Expr = sub(
            differentiate(gamma[l][1][0], names[0]),
            differentiate(gamma[l][0][0], names[1]),
        )
        for m in range(2):
            terms = add(
                terms,
                sub(
                    mul(gamma[l][0][m], gamma[m][1][0]),
                    mul(gamma[l][1][m], gamma[m][0][0]),
                ),
            )
        out.append(simplify(terms))
    return out[0], out[1]


def _build_oracle_expr(frame: ChartFrame, metric: MetricConstants) -> Expr:
    cm = coordinate_metric(frame, metric)
    gamma = christoffels(cm)
    std0, std1 = _textbook_riemann_components(cm, gamma)
    # library convention is the negative of the textbook operator
    r0, r1 = neg(std0), neg(std1)
    paired_with_d2 = add(mul(r0, cm.g[0][1]), mul(r1, cm.g[1][1]))
    return simplify(div(paired_with_d2, cm.det_g))


@lru_cache(maxsize=64)
def _oracle_expr_cached(frame: ChartFrame, metric: MetricConstants) -> Expr:
    return _build_oracle_expr(frame, metric)


def k_oracle_expr(frame: ChartFrame, metric: MetricConstants) -> Expr:
    """The oracle curvature as a single symbolic expression on the chart."""
    return _oracle_expr_cached(frame, metric)


def k_oracle(frame: ChartFrame, metric: MetricConstants, point: dict[str, float]) -> float:
    """Evaluate the coordinate-based curvature at one interior point.

    Raises SingularFrame if the frame matrix is numerically singular at
    the point, DegenerateMetric for det(A) == 0, and DomainError if the
    expressions leave their domain there.
    """
    det_value = evaluate(frame_determinant(frame), point)
    if abs(det_value) <= 1e-10:
        raise SingularFrame(
            f"frame determinant {det_value!r} within 1e-10 of zero", point=dict(point)
        )
    return evaluate(k_oracle_expr(frame, metric), point)
