"""Shared test utilities: tolerance checks, finite differences, and seeded
random generators for expressions, frames, and metrics.

The generators are deliberately independent of the library internals: they
only build inputs, never expected values.
"""

from __future__ import annotations

import random

from framecurv import (
    Chart,
    ChartFrame,
    DomainError,
    MetricConstants,
    VectorField,
    compile_expr,
    evaluate,
)
from framecurv.expr import Expr, add, con, func, mul, powc, var
from framecurv.frames import interior_samples, validation_points


def close(a: float, b: float, tol: float) -> bool:
    """|a-b| <= tol*max(1, |a|, |b|): relative with an absolute floor."""
    return abs(a - b) <= tol * max(1.0, abs(a), abs(b))


def central_diff(e: Expr, point: dict[str, float], name: str, h: float = 1e-5) -> float:
    hi = dict(point)
    lo = dict(point)
    hi[name] += h
    lo[name] -= h
    return (evaluate(e, hi) - evaluate(e, lo)) / (2.0 * h)


# ---------------------------------------------------------------------------
# random expressions


def random_expr(rng: random.Random, names: list[str], depth: int) -> Expr:
    """Random tree over the full op set; domain errors are the caller's
    problem (rejection-sample points)."""
    if depth <= 0 or rng.random() < 0.25:
        if rng.random() < 0.4:
            return con(round(rng.uniform(-2.5, 2.5), 3))
        return var(rng.choice(names))
    choice = rng.random()
    left = random_expr(rng, names, depth - 1)
    if choice < 0.45:
        op = rng.choice(["add", "sub", "mul", "div"])
        right = random_expr(rng, names, depth - 1)
        from framecurv.expr import Binary

        return Binary(op, left, right)
    if choice < 0.55:
        return powc(left, float(rng.choice([2, 3])))
    if choice < 0.62:
        from framecurv.expr import Unary

        return Unary("neg", left)
    op = rng.choice(["sin", "cos", "tan", "sinh", "cosh", "tanh", "exp", "log", "sqrt"])
    from framecurv.expr import Unary

    return Unary(op, left)


def random_point(rng: random.Random, names: list[str]) -> dict[str, float]:
    return {name: rng.uniform(-1.5, 1.5) for name in names}


def usable_case(e: Expr, point: dict[str, float], names: list[str], h: float = 1e-5):
    """Evaluate e at the point and at the FD stencil; return the values or
    None when the case is numerically unusable (domain error or blowup)."""
    try:
        center = evaluate(e, point)
        stencil = []
        for name in names:
            hi = dict(point)
            lo = dict(point)
            hi[name] += h
            lo[name] -= h
            stencil.append((evaluate(e, hi), evaluate(e, lo)))
    except (DomainError, KeyError):
        return None
    import math

    values = [center] + [v for pair in stencil for v in pair]
    if any(not math.isfinite(v) or abs(v) > 1e6 for v in values):
        return None
    return center


# ---------------------------------------------------------------------------
# random manifolds (frames + metrics) for differential testing


def _poly2(rng: random.Random, names: list[str]) -> Expr:
    """Degree <= 2 polynomial with small coefficients."""
    u, v = var(names[0]), var(names[1])
    basis = [con(1.0), u, v, powc(u, 2.0), mul(u, v), powc(v, 2.0)]
    total: Expr = con(round(rng.uniform(-1.5, 1.5), 3))
    for term in basis[1:]:
        if rng.random() < 0.6:
            coeff = round(rng.uniform(-1.5, 1.5), 3)
            total = add(total, mul(con(coeff), term))
    return total

def _component(rng: random.Random, names: list[str]) -> Expr:
    body = _poly2(rng, names)
    roll = rng.random()
    if roll < 0.2:
        return func("sin", body)
    if roll < 0.4:
        return func("cosh", body)
    return body


def random_metric(rng: random.Random, lorentzian: bool) -> MetricConstants:
    """Nondegenerate constants of the requested signature."""
    while True:
        a11 = round(rng.uniform(-2.5, 2.5), 3)
        a12 = round(rng.uniform(-2.5, 2.5), 3)
        a22 = round(rng.uniform(-2.5, 2.5), 3)
        metric = MetricConstants(a11, a12, a22)
        if abs(metric.det) < 0.3:
            continue
        if metric.lorentzian == lorentzian:
            return metric


def random_frame(
    rng: random.Random, eval_points_count: int = 25
) -> tuple[ChartFrame, list[dict[str, float]]]:
    """Rejection-sampled nondegenerate frame on [-1,1]^2 plus the interior
    points it was vetted on: |det E| >= 0.05 and |components| <= 10 at the
    evaluation points and the validation set."""
    chart = Chart(("u", "v"), ((-1.0, 1.0), (-1.0, 1.0)))
    eval_points = interior_samples(chart, eval_points_count, seed=rng.randrange(1 << 30))
    vet_points = eval_points + validation_points(chart, n=11, extra=10, seed=7)
    while True:
        comps = [_component(rng, list(chart.vars)) for _ in range(4)]
        frame = ChartFrame(
            chart,
            VectorField((comps[0], comps[1])),
            VectorField((comps[2], comps[3])),
        )
        fns = [compile_expr(c, chart.vars) for c in comps]
        try:
            ok = True
            for point in vet_points:
                args = tuple(point[name] for name in chart.vars)
                values = [fn(*args) for fn in fns]
                det = values[0] * values[3] - values[2] * values[1]
                if abs(det) < 0.05 or max(abs(v) for v in values) > 10.0:
                    ok = False
                    break
        except DomainError:
            ok = False
        if ok:
            return frame, eval_points
