"""Constant linear combinations of a bracket-closed frame.

Start from X1 = (y, 0), X2 = (0, y) on the upper strip, whose commutator
is [X1, X2] = -X1.  Take constant combinations

    Y1 = alpha*X1 + gamma*X2,    Y2 = beta*X1 + delta*X2

and declare the pair (Y1, Y2) to have unit Lorentzian pairings (-1, 0, 1).
The structural functions come out as the constants c1 = -delta, c2 = gamma,
and the curvature is the constant K = gamma^2 - delta^2, whatever alpha
and beta are.

Run from the repository root:  python demos/orthonormal_combinations.py
"""

import random

from framecurv import (
    Chart,
    ChartFrame,
    MetricConstants,
    evaluate,
    k_closed_form,
    structural_functions,
)

chart = Chart(("x", "y"), ((0.0, 1.0), (0.5, 3.0)))
metric = MetricConstants(-1.0, 0.0, 1.0)
point = {"x": 0.25, "y": 1.4}

rng = random.Random(7)
tuples = [(1.0, 0.0, 2.0, 1.0)]
while len(tuples) < 5:
    alpha, beta, gamma, delta = (round(rng.uniform(-2, 2), 2) for _ in range(4))
    if abs(alpha * delta - beta * gamma) > 0.1:
        tuples.append((alpha, beta, gamma, delta))

print(f"{'alpha':>6} {'beta':>6} {'gamma':>6} {'delta':>6} | {'c1':>7} {'c2':>7} | {'K':>9} {'gamma^2-delta^2':>16}")
for alpha, beta, gamma, delta in tuples:
    frame = ChartFrame.from_strings(
        chart,
        (f"{alpha!r}*y", f"{gamma!r}*y"),
        (f"{beta!r}*y", f"{delta!r}*y"),
    )
    c = structural_functions(frame)
    k = k_closed_form(metric, frame, c)
    print(
        f"{alpha:6.2f} {beta:6.2f} {gamma:6.2f} {delta:6.2f} | "
        f"{evaluate(c.c1, point):7.3f} {evaluate(c.c2, point):7.3f} | "
        f"{evaluate(k, point):9.4f} {gamma**2 - delta**2:16.4f}"
    )

print("\nK depends only on gamma and delta: the frame legs' first-leg")
print("coefficients alpha, beta never enter the curvature.")
