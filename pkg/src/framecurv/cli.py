"""Command-line interface: curvature reports from a JSON manifold file.

Commands
    compute   evaluate K on a grid (or at --at) for the chosen method(s)
    check     cross-check closed vs pipeline vs oracle at random points
    classify  name the model space from grid samples of K
    simplify  print the normalized K expression as text

The input file is a strict JSON document:

    {
      "vars":   ["phi", "theta"],
      "domain": {"phi": [0, 6.2832], "theta": [-1.5, 1.5]},
      "frame":  {"X1": ["1/cosh(theta)", "0"], "X2": ["0", "1"]},
      "metric": {"a11": -1, "a12": 0, "a22": 1}
    }

Unknown fields are rejected.  Reports are a single JSON document on
stdout; notes for humans go to stderr.  Exit codes: 0 success, 1 input
error, 2 check failure, 3 numeric domain error.  Identical inputs and
flags produce byte-identical reports.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass
from typing import Sequence

from .classify import classify
from .errors import (
    DegenerateMetric,
    DomainError,
    InputError,
    ParseError,
    PreconditionViolated,
    SingularFrame,
)
from .expr import Expr, compile_expr, parse_expr, simplify, to_text
from .frames import (
    Chart,
    ChartFrame,
    MetricConstants,
    Point,
    VectorField,
    commutator,
    grid_points,
    interior_samples,
    k_closed_form,
    k_orthogonal,
    k_orthogonal_a11,
    k_orthonormal,
    k_pipeline,
    structural_functions,
)
from .oracle import k_oracle_expr

__all__ = ["ManifoldInput", "parse_input", "run", "main"]

DEFAULT_GRID = 21
DEFAULT_SAMPLES = 25
DEFAULT_TOL = 1e-6
DEFAULT_SEED = 42

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_CHECK = 2
EXIT_DOMAIN = 3

METHODS = ("closed", "pipeline", "oracle", "orthonormal", "orthogonal", "orthogonal-a11")

_A11_NOTE = (
    "method 'orthogonal-a11' divides by a11 alone; it disagrees with the "
    "general formula by the factor a22 unless a22 == 1"
)


@dataclass(frozen=True)
class ManifoldInput:
    chart: Chart
    frame: ChartFrame
    metric: MetricConstants


def _require_keys(obj: dict, required: Sequence[str], optional: Sequence[str], where: str):
    allowed = set(required) | set(optional)
    for key in obj:
        if key not in allowed:
            raise InputError(f"{where}: unknown field {key!r}")
    for key in required:
        if key not in obj:
            raise InputError(f"{where}: missing field {key!r}")


def _number(value, where: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise InputError(f"{where}: expected a number, got {value!r}")
    out = float(value)
    if not math.isfinite(out):
        raise InputError(f"{where}: value must be finite")
    return out


def parse_input(data: bytes) -> ManifoldInput:
    """Parse and validate the JSON manifold description."""
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise InputError(f"input is not valid UTF-8: {exc}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"input is not valid JSON: {exc.msg} at offset {exc.pos}") from None
    if not isinstance(doc, dict):
        raise InputError("top level must be a JSON object")
    _require_keys(doc, ["vars", "domain", "frame", "metric"], [], "input")

    names = doc["vars"]
    if (
        not isinstance(names, list)
        or len(names) != 2
        or not all(isinstance(v, str) for v in names)
    ):
        raise InputError("vars: expected a list of two variable names")

    domain = doc["domain"]
    if not isinstance(domain, dict):
        raise InputError("domain: expected an object")
    _require_keys(domain, names, [], "domain")
    intervals = []
    for name in names:
        interval = domain[name]
        if not isinstance(interval, list) or len(interval) != 2:
            raise InputError(f"domain.{name}: expected [lo, hi]")
        lo = _number(interval[0], f"domain.{name}[0]")
        hi = _number(interval[1], f"domain.{name}[1]")
        if not lo < hi:
            raise InputError(f"domain.{name}: empty interval [{lo}, {hi}]")
        intervals.append((lo, hi))
    try:
        chart = Chart(tuple(names), (intervals[0], intervals[1]))
    except ValueError as exc:
        raise InputError(f"vars: {exc}") from None

    frame_doc = doc["frame"]
    if not isinstance(frame_doc, dict):
        raise InputError("frame: expected an object")
    _require_keys(frame_doc, ["X1", "X2"], [], "frame")
    fields = {}
    for key in ("X1", "X2"):
        comps = frame_doc[key]
        if (
            not isinstance(comps, list)
            or len(comps) != 2
            or not all(isinstance(c, str) for c in comps)
        ):
            raise InputError(f"frame.{key}: expected two component expressions")
        parsed = []
        for idx, text_comp in enumerate(comps):
            try:
                parsed.append(simplify(parse_expr(text_comp, names)))
            except ParseError as exc:
                raise InputError(
                    f"frame.{key}[{idx}]: {exc.message} (at byte {exc.position})"
                ) from None
        fields[key] = VectorField((parsed[0], parsed[1]))
    frame = ChartFrame(chart, fields["X1"], fields["X2"])

    metric_doc = doc["metric"]
    if not isinstance(metric_doc, dict):
        raise InputError("metric: expected an object")
    _require_keys(metric_doc, ["a11", "a12", "a22"], ["a21"], "metric")
    a11 = _number(metric_doc["a11"], "metric.a11")
    a12 = _number(metric_doc["a12"], "metric.a12")
    a22 = _number(metric_doc["a22"], "metric.a22")
    if "a21" in metric_doc:
        a21 = _number(metric_doc["a21"], "metric.a21")
        if a21 != a12:
            raise InputError(f"metric: a12 given inconsistently ({a12} vs a21={a21})")
    metric = MetricConstants(a11, a12, a22)
    if metric.det == 0.0:
        raise InputError(f"metric: det A = 0 for ({a11}, {a12}, {a22})")
    return ManifoldInput(chart, frame, metric)


# ---------------------------------------------------------------------------
# method table


def _structurals(mi: ManifoldInput, points: list[Point]):
    comm = commutator(mi.frame)
    sample = points + interior_samples(mi.chart, 20, DEFAULT_SEED)
    return structural_functions(mi.frame, comm, sample_points=sample)


def _method_exprs(
    mi: ManifoldInput, requested: str, points: list[Point], diagnostics: list[str]
) -> dict[str, Expr]:
    """Build the K expression for each requested method.

    For --method all, inapplicable shortcut forms are skipped with a
    diagnostic; an explicitly requested inapplicable method is an input
    error.
    """
    orthonormal_ok = (mi.metric.a11, mi.metric.a12, mi.metric.a22) == (-1.0, 0.0, 1.0)
    orthogonal_ok = mi.metric.a12 == 0.0
    wanted = list(METHODS[:3]) if requested == "all" else [requested]
    if requested == "all":
        if orthonormal_ok:
            wanted.append("orthonormal")
        else:
            diagnostics.append("orthonormal skipped: metric is not (-1, 0, 1)")
        if orthogonal_ok:
            wanted.append("orthogonal")
        else:
            diagnostics.append("orthogonal skipped: a12 != 0")

    out: dict[str, Expr] = {}
    c = None
    for name in wanted:
        if name in ("closed", "orthonormal", "orthogonal", "orthogonal-a11") and c is None:
            c = _structurals(mi, points)
        if name == "closed":
            out[name] = k_closed_form(mi.metric, mi.frame, c)
        elif name == "pipeline":
            sample = points + interior_samples(mi.chart, 20, DEFAULT_SEED)
            out[name] = k_pipeline(mi.metric, mi.frame, sample_points=sample)
        elif name == "oracle":
            out[name] = k_oracle_expr(mi.frame, mi.metric)
        elif name == "orthonormal":
            if not orthonormal_ok:
                raise InputError("--method orthonormal needs metric exactly (-1, 0, 1)")
            out[name] = k_orthonormal(mi.frame, c)
        elif name == "orthogonal":
            if not orthogonal_ok:
                raise InputError("--method orthogonal needs a12 == 0")
            out[name] = k_orthogonal(mi.metric, mi.frame, c)
        else:  # orthogonal-a11
            if not orthogonal_ok:
                raise InputError("--method orthogonal-a11 needs a12 == 0")
            diagnostics.append(_A11_NOTE)
            out[name] = k_orthogonal_a11(mi.metric, mi.frame, c)
    return out


def _eval_points(k: Expr, chart: Chart, points: list[Point]) -> list[float]:
    fn = compile_expr(k, chart.vars)
    values = []
    for point in points:
        try:
            value = fn(*(point[v] for v in chart.vars))
        except DomainError as exc:
            raise DomainError(exc.message, point=point) from None
        if not math.isfinite(value):
            raise DomainError(f"non-finite curvature value {value!r}", point=point)
        values.append(value)
    return values


def _deviation(a: float, b: float) -> float:
    return abs(a - b) / max(1.0, abs(a), abs(b))


def _agreement(per_method: dict[str, list[float]]) -> float:
    names = sorted(per_method)
    worst = 0.0
    for i, first in enumerate(names):
        for second in names[i + 1 :]:
            for a, b in zip(per_method[first], per_method[second]):
                worst = max(worst, _deviation(a, b))
    return worst


def _point_json(point: Point, chart: Chart) -> dict:
    return {name: point[name] for name in chart.vars}


# ---------------------------------------------------------------------------
# commands


def _parse_at(text: str, chart: Chart) -> Point:
    point: Point = {}
    for item in text.split(","):
        if "=" not in item:
            raise InputError(f"--at: expected var=value, got {item!r}")
        name, _, raw = item.partition("=")
        name = name.strip()
        if name not in chart.vars:
            raise InputError(f"--at: unknown variable {name!r}")
        if name in point:
            raise InputError(f"--at: duplicate variable {name!r}")
        try:
            point[name] = float(raw)
        except ValueError:
            raise InputError(f"--at: bad number {raw.strip()!r}") from None
    for name in chart.vars:
        if name not in point:
            raise InputError(f"--at: missing variable {name!r}")
        lo, hi = chart.interval(name)
        if not (lo <= point[name] <= hi):
            raise InputError(f"--at: {name}={point[name]} outside [{lo}, {hi}]")
    return point


def _cmd_compute(mi: ManifoldInput, args) -> tuple[dict, int]:
    diagnostics: list[str] = []
    if args.at is not None:
        points = [_parse_at(args.at, mi.chart)]
    else:
        points = grid_points(mi.chart, args.grid)
    exprs = _method_exprs(mi, args.method, points, diagnostics)
    per_method = {name: _eval_points(k, mi.chart, points) for name, k in exprs.items()}
    methods_json = {
        name: {
            "values": [
                {"point": _point_json(p, mi.chart), "k": v}
                for p, v in zip(points, values)
            ]
        }
        for name, values in per_method.items()
    }
    report = {
        "command": "compute",
        "method": args.method,
        "grid": None if args.at is not None else args.grid,
        "at": _point_json(points[0], mi.chart) if args.at is not None else None,
        "methods": methods_json,
        "agreement": _agreement(per_method) if len(per_method) > 1 else 0.0,
        "diagnostics": diagnostics,
    }
    return report, EXIT_OK


def _cmd_check(mi: ManifoldInput, args) -> tuple[dict, int]:
    diagnostics: list[str] = []
    points = interior_samples(mi.chart, args.samples, args.seed)
    exprs = {}
    for name in ("closed", "pipeline", "oracle"):
        exprs.update(_method_exprs(mi, name, points, diagnostics))
    per_method = {name: _eval_points(k, mi.chart, points) for name, k in exprs.items()}
    agreement = _agreement(per_method)
    ok = agreement <= args.tol
    report = {
        "command": "check",
        "samples": args.samples,
        "seed": args.seed,
        "tol": args.tol,
        "agreement": agreement,
        "ok": ok,
        "methods": {
            name: {"min": min(values), "max": max(values)}
            for name, values in per_method.items()
        },
        "diagnostics": diagnostics,
    }
    return report, EXIT_OK if ok else EXIT_CHECK


def _cmd_classify(mi: ManifoldInput, args) -> tuple[dict, int]:
    points = grid_points(mi.chart, args.grid)
    c = _structurals(mi, points)
    k = k_closed_form(mi.metric, mi.frame, c)
    values = _eval_points(k, mi.chart, points)
    verdict = classify(list(zip(points, values)), mi.metric.lorentzian, args.tol)
    report = {
        "command": "classify",
        "grid": args.grid,
        "tol": args.tol,
        "classification": verdict.to_json(),
        "diagnostics": [],
    }
    return report, EXIT_OK


def _cmd_simplify(mi: ManifoldInput, args) -> tuple[dict, int]:
    diagnostics: list[str] = []
    points = grid_points(mi.chart, DEFAULT_GRID)
    exprs = _method_exprs(mi, args.method, points, diagnostics)
    name, k = next(iter(exprs.items()))
    report = {
        "command": "simplify",
        "method": name,
        "k": to_text(simplify(k)),
        "diagnostics": diagnostics,
    }
    return report, EXIT_OK


# ---------------------------------------------------------------------------
# entry point


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="framecurv",
        description="Sectional curvature of a 2D metric given by a constant-pairing frame.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser):
        p.add_argument("-i", "--input", required=True, metavar="FILE",
                       help="JSON manifold description")

    p_compute = sub.add_parser("compute", help="evaluate K on a grid or at a point")
    common(p_compute)
    p_compute.add_argument("--method", choices=METHODS + ("all",), default="closed")
    p_compute.add_argument("--grid", type=int, default=DEFAULT_GRID, metavar="N")
    p_compute.add_argument("--at", metavar="VAR=VAL,VAR=VAL", default=None,
                           help="evaluate at one point instead of the grid")
    p_compute.set_defaults(fn=_cmd_compute)

    p_check = sub.add_parser("check", help="closed vs pipeline vs oracle agreement")
    common(p_check)
    p_check.add_argument("--samples", type=int, default=DEFAULT_SAMPLES, metavar="N")
    p_check.add_argument("--tol", type=float, default=DEFAULT_TOL, metavar="X")
    p_check.add_argument("--seed", type=int, default=DEFAULT_SEED, metavar="N")
    p_check.set_defaults(fn=_cmd_check)

    p_classify = sub.add_parser("classify", help="name the model space from grid samples")
    common(p_classify)
    p_classify.add_argument("--grid", type=int, default=DEFAULT_GRID, metavar="N")
    p_classify.add_argument("--tol", type=float, default=DEFAULT_TOL, metavar="X")
    p_classify.set_defaults(fn=_cmd_classify)

    p_simplify = sub.add_parser("simplify", help="print the normalized K expression")
    common(p_simplify)
    p_simplify.add_argument("--method", choices=METHODS + ("all",), default="closed")
    p_simplify.set_defaults(fn=_cmd_simplify)

    return parser


def _emit(report: dict) -> None:
    sys.stdout.write(json.dumps(report, indent=2, sort_keys=True) + "\n")


def run(argv: Sequence[str]) -> int:
    """Run one CLI invocation; returns the exit code."""
    parser = _build_parser()
    args = parser.parse_args(list(argv))
    if getattr(args, "grid", 2) < 2:
        _emit({"error": {"exitCode": EXIT_INPUT, "kind": "input",
                         "message": "--grid must be at least 2"}})
        sys.stderr.write("error: --grid must be at least 2\n")
        return EXIT_INPUT
    if getattr(args, "samples", 1) < 1:
        _emit({"error": {"exitCode": EXIT_INPUT, "kind": "input",
                         "message": "--samples must be at least 1"}})
        sys.stderr.write("error: --samples must be at least 1\n")
        return EXIT_INPUT
    try:
        with open(args.input, "rb") as handle:
            data = handle.read()
    except OSError as exc:
        _emit({"error": {"exitCode": EXIT_INPUT, "kind": "input", "message": str(exc)}})
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT
    try:
        mi = parse_input(data)
        report, code = args.fn(mi, args)
    except (InputError, PreconditionViolated, DegenerateMetric) as exc:
        _emit({"error": {"exitCode": EXIT_INPUT, "kind": "input", "message": str(exc)}})
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT
    except (DomainError, SingularFrame) as exc:
        doc = {"exitCode": EXIT_DOMAIN, "kind": "domain", "message": exc.message}
        if exc.point is not None:
            doc["point"] = exc.point
        _emit({"error": doc})
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_DOMAIN
    _emit(report)
    if code == EXIT_CHECK:
        sys.stderr.write(
            f"check failed: agreement {report['agreement']:.3e} > tol {report['tol']:.3e}\n"
        )
    return code


def main(argv: Sequence[str] | None = None) -> int:
    return run(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    sys.exit(main())
