"""Why the orthogonal-frame shortcut needs the product a11*a22 below the line.

For an orthogonal frame (a12 = 0) the curvature reduces to a compact
expression whose denominator must be a11*a22.  A tempting simplification
divides by a11 alone; it is correct when a22 == 1 and silently wrong by
exactly the factor a22 otherwise.  Both variants ship (the a11-only one
as `k_orthogonal_a11`, for diagnosis), and this script shows the gap on a
frame where a22 = 4.

Run from the repository root:  python demos/denominator_variants.py
"""

from framecurv import (
    Chart,
    ChartFrame,
    MetricConstants,
    evaluate,
    interior_samples,
    k_closed_form,
    k_orthogonal,
    k_orthogonal_a11,
    structural_functions,
)

chart = Chart(("x", "y"), ((0.0, 1.0), (0.5, 3.0)))
frame = ChartFrame.from_strings(chart, ("y", "0"), ("0", "y"))
metric = MetricConstants(-1.0, 0.0, 4.0)  # orthogonal, a22 != 1

c = structural_functions(frame)
k_general = k_closed_form(metric, frame, c)
k_fixed = k_orthogonal(metric, frame, c)
k_raw = k_orthogonal_a11(metric, frame, c)

print(f"pairings: a11 = {metric.a11}, a12 = {metric.a12}, a22 = {metric.a22}")
print(f"{'point (x, y)':>16} | {'general':>9} | {'a11*a22 form':>12} | {'a11-only form':>13} | ratio")
for p in interior_samples(chart, 5, seed=9):
    general = evaluate(k_general, p)
    fixed = evaluate(k_fixed, p)
    raw = evaluate(k_raw, p)
    print(
        f"({p['x']:5.2f}, {p['y']:5.2f})  | {general:9.4f} | {fixed:12.4f} | "
        f"{raw:13.4f} | {raw / general:5.2f}"
    )

print(f"\nThe a11-only denominator overshoots by the constant factor a22 = {metric.a22:.0f};")
print("the a11*a22 denominator reproduces the general formula exactly.")
