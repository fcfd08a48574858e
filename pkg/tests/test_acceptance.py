"""Acceptance gate: one test per top-level criterion, each printing a
single PASS/FAIL line (run pytest with -s to see the lines as they go).

Every numeric bound here is the contract for the library as a whole;
module-level tests cover the fine-grained behavior.
"""

import math
import random
import time
from contextlib import contextmanager

from framecurv import (
    Chart,
    ChartFrame,
    MetricConstants,
    ModelSpace,
    classify,
    compile_expr,
    differentiate,
    evaluate,
    grid_points,
    interior_samples,
    k_closed_form,
    k_oracle,
    k_oracle_expr,
    k_orthogonal,
    k_orthogonal_a11,
    k_orthonormal,
    k_pipeline,
    structural_functions,
)
from framecurv.expr import con, mul
from framecurv.frames import VectorField, connection_weights, covariant_derivatives
from framecurv.oracle import LeftInvariantFixture
from helpers import (
    central_diff,
    close,
    random_expr,
    random_frame,
    random_metric,
    random_point,
    usable_case,
)

ADS_CHART = Chart(("phi", "theta"), ((0.0, 6.28), (-1.5, 1.5)))
ADS_FRAME = ChartFrame.from_strings(ADS_CHART, ("1/cosh(theta)", "0"), ("0", "1"))
LORENTZ = MetricConstants(-1.0, 0.0, 1.0)

HALF_PLANE = Chart(("x", "y"), ((0.0, 1.0), (0.5, 3.0)))
SCALING_FRAME = ChartFrame.from_strings(HALF_PLANE, ("y", "0"), ("0", "y"))


@contextmanager
def criterion(num: int, label: str):
    start = time.perf_counter()
    try:
        yield
    except BaseException:
        print(f"[C{num}] {label}: FAIL")
        raise
    print(f"[C{num}] {label}: PASS ({time.perf_counter() - start:.2f}s)")


def test_c1_constant_negative_curvature_fixture():
    with criterion(1, "negative unit curvature fixture: all methods on a 10x10 grid"):
        start = time.perf_counter()
        pts = grid_points(ADS_CHART, 10)
        c = structural_functions(ADS_FRAME)
        close_methods = {
            "closed": k_closed_form(LORENTZ, ADS_FRAME, c),
            "pipeline": k_pipeline(LORENTZ, ADS_FRAME),
            "orthonormal": k_orthonormal(ADS_FRAME, c),
        }
        for name, k in close_methods.items():
            for p in pts:
                value = evaluate(k, p)
                assert abs(value - (-1.0)) <= 1e-9, (name, p, value)
        for p in pts:
            value = k_oracle(ADS_FRAME, LORENTZ, p)
            assert abs(value - (-1.0)) <= 1e-8, ("oracle", p, value)
        elapsed = time.perf_counter() - start
        assert elapsed < 2.0, f"took {elapsed:.2f}s, budget is 2s"


def test_c2_combination_frames_have_constant_curvature():
    with criterion(2, "combination frames: K equals the predicted constant"):
        rng = random.Random(101)
        pts = interior_samples(HALF_PLANE, 10, seed=11)
        done = 0
        while done < 5:
            alpha, beta, gamma, delta = (round(rng.uniform(-2.0, 2.0), 3) for _ in range(4))
            if abs(alpha * delta - beta * gamma) < 0.1:
                continue
            done += 1
            # legs Y1 = alpha*X1 + gamma*X2, Y2 = beta*X1 + delta*X2 over
            # X1 = (y, 0), X2 = (0, y); predicted constant is gamma^2 - delta^2
            frame = ChartFrame.from_strings(
                HALF_PLANE,
                (f"{alpha!r}*y", f"{gamma!r}*y"),
                (f"{beta!r}*y", f"{delta!r}*y"),
            )
            expected = gamma * gamma - delta * delta
            c = structural_functions(frame, sample_points=pts)
            k = k_closed_form(LORENTZ, frame, c)
            for p in pts:
                assert close(evaluate(k, p), expected, 1e-8), (alpha, beta, gamma, delta, p)
                assert close(k_oracle(frame, LORENTZ, p), expected, 1e-8)


def test_c3_matrix_induced_pairings():
    with criterion(3, "matrix-induced pairings: K == a11 / det(B)^2"):
        rng = random.Random(102)
        pts = interior_samples(HALF_PLANE, 10, seed=12)
        done = 0
        while done < 5:
            entries = [rng.randint(-3, 3) for _ in range(4)]
            if entries[0] * entries[3] - entries[1] * entries[2] == 0:
                continue
            done += 1
            fixture = LeftInvariantFixture(*entries)
            expected = fixture.metric.a11 / fixture.det_b**2
            c = structural_functions(SCALING_FRAME, sample_points=pts)
            k = k_closed_form(fixture.metric, SCALING_FRAME, c)
            for p in pts:
                assert close(evaluate(k, p), expected, 1e-8), (entries, p)
                assert close(k_oracle(SCALING_FRAME, fixture.metric, p), expected, 1e-8)


def test_c4_constant_frames_are_flat():
    with criterion(4, "constant frames are flat to 1e-12"):
        rng = random.Random(103)
        pts = grid_points(ADS_CHART, 5)
        done = 0
        while done < 10:
            comps = [round(rng.uniform(-3.0, 3.0), 2) for _ in range(4)]
            if abs(comps[0] * comps[3] - comps[1] * comps[2]) < 0.1:
                continue
            done += 1
            frame = ChartFrame.from_strings(
                ADS_CHART,
                (f"{comps[0]!r}", f"{comps[1]!r}"),
                (f"{comps[2]!r}", f"{comps[3]!r}"),
            )
            metric = random_metric(rng, lorentzian=bool(done % 2))
            c = structural_functions(frame)
            for k in (k_closed_form(metric, frame, c), k_pipeline(metric, frame)):
                for p in pts:
                    assert abs(evaluate(k, p)) <= 1e-12, (comps, p)
            for p in pts:
                assert abs(k_oracle(frame, metric, p)) <= 1e-12, (comps, p)


def test_c5_three_way_agreement_on_random_manifolds():
    with criterion(5, "50 random manifolds: closed, pipeline, oracle agree to 1e-6"):
        start = time.perf_counter()
        rng = random.Random(104)
        for index in range(50):
            frame, pts = random_frame(rng, eval_points_count=25)
            metric = random_metric(rng, lorentzian=bool(index % 2))
            c = structural_functions(frame, sample_points=pts)
            names = frame.chart.vars
            fn_a = compile_expr(k_closed_form(metric, frame, c), names)
            fn_b = compile_expr(k_pipeline(metric, frame, sample_points=pts), names)
            fn_o = compile_expr(k_oracle_expr(frame, metric), names)
            for p in pts:
                args = tuple(p[v] for v in names)
                a, b, o = fn_a(*args), fn_b(*args), fn_o(*args)
                assert close(a, b, 1e-6), (index, p, a, b)
                assert close(a, o, 1e-6), (index, p, a, o)
                assert close(b, o, 1e-6), (index, p, b, o)
        elapsed = time.perf_counter() - start
        assert elapsed < 30.0, f"took {elapsed:.2f}s, budget is 30s"


def test_c6_invariance_suite():
    with criterion(6, "invariance: basis swap, rescaling, torsion, compatibility"):
        rng = random.Random(105)
        cases = [(ADS_FRAME, LORENTZ), (SCALING_FRAME, MetricConstants(-3.0, -1.0, 0.0))]
        while len(cases) < 22:
            frame, _ = random_frame(rng, eval_points_count=6)
            cases.append((frame, random_metric(rng, lorentzian=bool(len(cases) % 2))))
        for frame, metric in cases:
            pts = interior_samples(frame.chart, 6, seed=13)
            c = structural_functions(frame, sample_points=pts)
            k = k_closed_form(metric, frame, c)

            # swapping the legs together with a11 <-> a22
            swapped = ChartFrame(frame.chart, frame.x2, frame.x1)
            m_swapped = MetricConstants(metric.a22, metric.a12, metric.a11)
            k_swapped = k_closed_form(
                m_swapped, swapped, structural_functions(swapped, sample_points=pts)
            )

            # rescaling the first leg by s with a11 -> s^2 a11, a12 -> s a12
            s = 1.0 + rng.random() * 2.0
            scaled = ChartFrame(
                frame.chart,
                VectorField(
                    (
                        mul(con(s), frame.x1.components[0]),
                        mul(con(s), frame.x1.components[1]),
                    )
                ),
                frame.x2,
            )
            m_scaled = MetricConstants(s * s * metric.a11, s * metric.a12, metric.a22)
            k_scaled = k_closed_form(
                m_scaled, scaled, structural_functions(scaled, sample_points=pts)
            )

            w1, w2 = connection_weights(metric, c)
            conn = covariant_derivatives(metric, w1, w2)

            def pair(coeffs, leg, p):
                u, v = evaluate(coeffs[0], p), evaluate(coeffs[1], p)
                if leg == 0:
                    return u * metric.a11 + v * metric.a12
                return u * metric.a12 + v * metric.a22

            for p in pts:
                base = evaluate(k, p)
                assert close(base, evaluate(k_swapped, p), 1e-9)
                assert close(base, evaluate(k_scaled, p), 1e-9)
                # zero torsion: difference of mixed derivatives is the bracket
                assert abs(
                    evaluate(conn.d12[0], p) - evaluate(conn.d21[0], p) - evaluate(c.c1, p)
                ) <= 1e-9
                assert abs(
                    evaluate(conn.d12[1], p) - evaluate(conn.d21[1], p) - evaluate(c.c2, p)
                ) <= 1e-9
                # compatibility: constant pairings force g(D Xi, Xj) + g(Xi, D Xj) = 0
                scale = max(1.0, abs(evaluate(w1, p)), abs(evaluate(w2, p)))
                for da, db, j, l in (
                    (conn.d11, conn.d11, 0, 0),
                    (conn.d11, conn.d12, 1, 0),
                    (conn.d12, conn.d12, 1, 1),
                    (conn.d21, conn.d21, 0, 0),
                    (conn.d21, conn.d22, 1, 0),
                    (conn.d22, conn.d22, 1, 1),
                ):
                    assert abs(pair(da, j, p) + pair(db, l, p)) <= 1e-9 * scale


def test_c7_orthogonal_denominator_variants():
    with criterion(7, "orthogonal pairings: fixed denominator matches, a11-only differs"):
        metric = MetricConstants(-1.0, 0.0, 4.0)
        c = structural_functions(SCALING_FRAME)
        k_ref = k_closed_form(metric, SCALING_FRAME, c)
        k_fixed = k_orthogonal(metric, SCALING_FRAME, c)
        k_raw = k_orthogonal_a11(metric, SCALING_FRAME, c)
        for p in interior_samples(HALF_PLANE, 15, seed=14):
            ref = evaluate(k_ref, p)
            assert close(evaluate(k_fixed, p), ref, 1e-9)
            raw = evaluate(k_raw, p)
            assert close(raw, metric.a22 * ref, 1e-12)
            assert abs(raw - ref) > 0.1
        # scaled first leg, a11 = -4: the fixed form still reads the true -1
        frame = ChartFrame.from_strings(ADS_CHART, ("2/cosh(theta)", "0"), ("0", "1"))
        m2 = MetricConstants(-4.0, 0.0, 1.0)
        c2 = structural_functions(frame)
        k2 = k_orthogonal(m2, frame, c2)
        for p in interior_samples(ADS_CHART, 15, seed=15):
            assert abs(evaluate(k2, p) - (-1.0)) <= 1e-9


def test_c8_classification():
    with criterion(8, "classification: negative, flat, and non-constant manifolds"):
        pts = grid_points(ADS_CHART, 21)

        def verdict_for(frame, metric):
            c = structural_functions(frame)
            k = k_closed_form(metric, frame, c)
            samples = [(p, evaluate(k, p)) for p in pts]
            return classify(samples, metric.lorentzian, 1e-6)

        negative = verdict_for(ADS_FRAME, LORENTZ)
        assert negative.kind is ModelSpace.ANTI_DE_SITTER
        assert abs(negative.k_value - (-1.0)) <= 1e-6

        flat_frame = ChartFrame.from_strings(ADS_CHART, ("1", "0.3"), ("-0.2", "2"))
        flat = verdict_for(flat_frame, MetricConstants(2.0, 1.0, -1.0))
        assert flat.kind is ModelSpace.MINKOWSKI

        varying = ChartFrame.from_strings(ADS_CHART, ("1/cosh(theta^2)", "0"), ("0", "1"))
        nonconst = verdict_for(varying, LORENTZ)
        assert nonconst.kind is ModelSpace.NON_CONSTANT
        assert nonconst.k_value is None
        # the variation is genuine: the independent computation sees it too
        a = k_oracle(varying, LORENTZ, {"phi": 1.0, "theta": 0.1})
        b = k_oracle(varying, LORENTZ, {"phi": 1.0, "theta": 1.2})
        assert abs(a - b) > 1e-3


def test_c9_derivatives_match_finite_differences():
    with criterion(9, "200 random expressions: derivative matches finite differences"):
        rng = random.Random(106)
        names = ["x", "y"]
        done = 0
        while done < 200:
            e = random_expr(rng, names, depth=4)
            point = random_point(rng, names)
            if usable_case(e, point, names) is None:
                continue
            name = rng.choice(names)
            symbolic = differentiate(e, name)
            try:
                got = evaluate(symbolic, point)
                want = central_diff(e, point, name)
            except Exception:
                continue
            if not math.isfinite(got) or not math.isfinite(want) or abs(want) > 1e5:
                continue
            done += 1
            assert close(got, want, 1e-6), (e, point, name, got, want)
