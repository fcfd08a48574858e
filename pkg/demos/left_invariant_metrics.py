"""Pairings induced by a constant matrix acting on a bracket-closed frame.

Over X1 = (y, 0), X2 = (0, y) (commutator [X1,X2] = -X1), an invertible
matrix B with rows (a, b), (c, d) induces the constant pairings

    a11 = c^2 - a^2,  a12 = c*d - a*b,  a22 = d^2 - b^2,

which are automatically Lorentzian (det A = -(det B)^2 < 0).  The
curvature is the constant K = a11 / det(B)^2, so its sign - and hence the
model space - is decided by a11 alone.

Run from the repository root:  python demos/left_invariant_metrics.py
"""

from framecurv import (
    Chart,
    ChartFrame,
    classify,
    eval_on_grid,
    k_closed_form,
    structural_functions,
)
from framecurv.oracle import LeftInvariantFixture

chart = Chart(("x", "y"), ((0.0, 1.0), (0.5, 3.0)))
frame = ChartFrame.from_strings(chart, ("y", "0"), ("0", "y"))
c = structural_functions(frame)

matrices = [
    (2, 1, 1, 1),  # a11 < 0
    (1, 1, 1, 2),  # a11 = 0
    (1, 1, 2, 1),  # a11 > 0
]

print(f"{'B rows':>14} | {'(a11, a12, a22)':>20} | {'K':>8} | model space")
for entries in matrices:
    fixture = LeftInvariantFixture(*entries)
    metric = fixture.metric
    k = k_closed_form(metric, frame, c)
    samples = eval_on_grid(k, chart, 9)
    verdict = classify(samples, metric.lorentzian, 1e-9)
    predicted = metric.a11 / fixture.det_b**2
    rows = f"({entries[0]},{entries[1]})({entries[2]},{entries[3]})"
    triple = f"({metric.a11:+.0f}, {metric.a12:+.0f}, {metric.a22:+.0f})"
    print(f"{rows:>14} | {triple:>20} | {predicted:8.2f} | {verdict.kind.value}")

print("\nAll three signatures of constant curvature appear, each matching")
print("K = a11 / det(B)^2 and classified from grid samples alone.")
