"""Command-line front end.

One subcommand per pipeline stage so each stage can be pinned independently:

* ``analyze``       -- full pipeline, JSON report on stdout;
* ``count``         -- one lattice count or a CSV series;
* ``widths``        -- CSV table of width-order estimates 1/t(n);
* ``epsdim``        -- the dimension bracket for a target accuracy;
* ``fourier-check`` -- seeded random inequality suite with worst slacks.

Exit codes: 0 success, 1 usage or input error, 2 a screen or hypothesis
failed (reported on stdout, not silent), 3 a resource cap was hit.  Output
is deterministic for identical arguments: keys are sorted, rationals are
"p/q" strings, and no timings are emitted unless --timings is given.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from fractions import Fraction

from . import degeneracy as _degeneracy
from . import fourier as _fourier
from . import lattice as _lattice
from . import widths as _widths
from .errors import CapExceeded, HypothesisError, UnboundedRegion
from .lp import duality_check
from .newton import PointSet, compactness_check, convex_hull, faces, newton_diagram, vertex_set
from .serialize import fraction_str, jsonable, parse_fraction
from .symbol import ParseError, SymbolPolynomial, exponent_set, parse_polynomial, poly_from_json, render

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_SCREEN = 2
EXIT_CAP = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        _fail_usage(message)


def _fail_usage(message: str):
    json.dump({"code": "usage", "message": message}, sys.stderr, sort_keys=True)
    sys.stderr.write("\n")
    raise SystemExit(EXIT_USAGE)


def _emit(obj, stream=None):
    json.dump(jsonable(obj), stream or sys.stdout, sort_keys=True, indent=2)
    (stream or sys.stdout).write("\n")


def _load_symbol(args) -> SymbolPolynomial:
    if getattr(args, "poly", None):
        return parse_polynomial(args.poly, getattr(args, "d", None))
    if getattr(args, "input", None):
        with open(args.input) as fh:
            return poly_from_json(fh.read())
    _fail_usage("provide a polynomial with --poly or --input")


def _int_list(text: str) -> list[int]:
    return [int(part) for part in text.split(",") if part.strip()]


def _fraction_list(text: str) -> list[Fraction]:
    return [parse_fraction(part) for part in text.split(",") if part.strip()]


def _enum_config(args) -> _lattice.EnumerationConfig:
    kwargs = {}
    if getattr(args, "mode", None):
        kwargs["mode"] = args.mode
    if getattr(args, "hard_cap", None):
        kwargs["hard_cap"] = args.hard_cap
    if getattr(args, "seed", None) is not None:
        kwargs["seed"] = args.seed
    return _lattice.EnumerationConfig(**kwargs)


# ---------------------------------------------------------------------------
# analyze

def _cmd_analyze(args) -> int:
    started = time.perf_counter()
    poly = _load_symbol(args)
    d = poly.dimension
    A = PointSet.of(exponent_set(poly), d)
    hull = convex_hull(A)
    diagram = newton_diagram(A)
    theta = vertex_set(A)
    comp = compactness_check(A)
    deg_cfg = _degeneracy.DegeneracyConfig(seed=args.seed)
    deg = _degeneracy.degeneracy_report(poly, deg_cfg)

    report = {
        "schema": 1,
        "input": {"polynomial": render(poly), "dimension": d},
        "exponents": [list(e) for e in sorted(A.points)],
        "hull": hull.to_json(),
        "diagram": [list(e) for e in diagram.sorted()],
        "vertex_set": [list(e) for e in theta.sorted()],
        "faces": [
            {"support": [list(p) for p in sorted(f.support)],
             "normal": [fraction_str(x) for x in f.normal],
             "offset": fraction_str(f.offset)}
            for f in faces(A)
        ],
        "compactness": {
            "zero_in_set": comp.zero_in_set,
            "axis_rays": list(comp.axis_rays),
            "compact": comp.compact,
            "provenance": "exact",
        },
        "degeneracy": {
            "verdict": deg.verdict,
            "even_vertices": deg.even_vertices,
            "gamma_hat": deg.gamma_hat,
            "witnesses": [
                {"support": None if w.support is None else [list(p) for p in sorted(w.support)],
                 "kind": w.kind,
                 "points": [[fraction_str(x) for x in pt] for pt in w.points],
                 "values": [fraction_str(v) for v in w.values]}
                for w in deg.witnesses
            ],
            "provenance": "sampled",
        },
        "flags": {"seed": args.seed, "threads": args.threads},
    }

    screen_ok = comp.compact and deg.verdict == _degeneracy.VERDICT_LIKELY_OK
    failures = []
    if not comp.compact:
        failures.append("compactness")
    if deg.verdict != _degeneracy.VERDICT_LIKELY_OK:
        failures.append(f"degeneracy:{deg.verdict}")

    if comp.compact:
        dual = duality_check(theta)
        order = _widths.theoretical_order(poly, force=True)
        report["lp"] = {
            "decay_exponent": fraction_str(dual.reach),
            "dual_value": fraction_str(dual.polar_value),
            "log_power": order.log_power,
            "duality_product_is_one": dual.product_is_one,
            "provenance": "exact",
        }
        report["asymptotics"] = {
            "d_n": order.d_n_formula,
            "n_eps": order.n_eps_formula,
            "screened": screen_ok,
            "provenance": "exact" if screen_ok else "exact-with-caveat",
        }

    if args.n_list:
        estimates = _widths.width_estimates(poly, _int_list(args.n_list), _enum_config(args))
        report["widths"] = [
            {"n": w.n, "t_n": fraction_str(w.t_n),
             "d_n_estimate": fraction_str(w.d_n_estimate), "tie": w.tie}
            for w in estimates
        ]
        report["widths_provenance"] = "exact order statistics; asymptotic claim heuristic at small n"

    if args.fit:
        t_max = Fraction(args.t_max if args.t_max else 10 ** 6)
        grid = _geometric_grid(Fraction(10) ** 3, t_max, args.fit_points)
        series = _lattice.count_series(poly, grid, _enum_config(args))
        fit = _widths.fit_growth(series, d)
        report["fit"] = {
            "series": [{"t": fraction_str(t), "count": c} for t, c in series.entries],
            "growth_exponent": fit.growth_exponent,
            "log_power": fit.log_power,
            "residual_by_power": list(fit.residual_by_power),
            "rational_hint": fraction_str(fit.rational_hint),
            "provenance": "fitted",
        }

    if args.timings:
        report["timings"] = {"total_seconds": time.perf_counter() - started}

    if failures:
        report["screen_failures"] = failures
    _emit(report)
    return EXIT_OK if screen_ok else EXIT_SCREEN


def _geometric_grid(lo: Fraction, hi: Fraction, points: int) -> list[Fraction]:
    if hi <= lo:
        return [lo]
    ratio = (hi / lo) ** Fraction(1, max(points - 1, 1))
    grid = []
    value = lo
    for _ in range(points):
        t = Fraction(int(value))
        if not grid or t > grid[-1]:
            grid.append(t)
        value *= ratio
    if grid[-1] != hi:
        grid.append(hi)
    return grid


# ---------------------------------------------------------------------------
# counting commands

def _cmd_count(args) -> int:
    poly = _load_symbol(args)
    if args.set == "K":
        source = poly
    else:
        points = exponent_set(poly)
        if args.vertices:
            points = vertex_set(PointSet.of(points, poly.dimension)).points
        source = PointSet.of(points, poly.dimension)
    cfg = _enum_config(args)
    if args.grid:
        series = _lattice.count_series(source, _fraction_list(args.grid), cfg)
        sys.stdout.write(series.to_csv())
        return EXIT_OK
    if args.t is None:
        _fail_usage("count needs --t or --grid")
    t = parse_fraction(args.t)
    if args.set == "K":
        value = _lattice.card_k(poly, t, cfg)
    else:
        value = _lattice.count_omega(source, t, cfg)
    sys.stdout.write(f"{value}\n")
    return EXIT_OK


def _cmd_widths(args) -> int:
    poly = _load_symbol(args)
    estimates = _widths.width_estimates(poly, _int_list(args.n), _enum_config(args))
    sys.stdout.write("n,t_n,d_n_estimate,tie\n")
    for w in estimates:
        sys.stdout.write(
            f"{w.n},{fraction_str(w.t_n)},{fraction_str(w.d_n_estimate)},{int(w.tie)}\n")
    return EXIT_OK


def _cmd_epsdim(args) -> int:
    poly = _load_symbol(args)
    lo, hi = _lattice.eps_dimension_bracket(poly, parse_fraction(args.eps), _enum_config(args))
    sys.stdout.write(f"{lo} {hi}\n")
    return EXIT_OK


def _cmd_fourier_check(args) -> int:
    poly = _load_symbol(args)
    tau = _lattice.sorted_symbol_values(poly, 0)[0]
    if tau == 0:
        raise HypothesisError("the symbol vanishes at a lattice point; inequality suite undefined")
    ts = [tau + 1, 2 * tau + 1, Fraction(10)]
    ts = sorted({t for t in ts if t > tau})
    worst_jackson = worst_bernstein = float("inf")
    worst_parseval = worst_pythagoras = 0.0
    trials = 0
    for i in range(args.trials):
        f = _fourier.random_trig(args.seed + i, poly.dimension, args.support, 1.0, args.box)
        if not f.coefficients:
            continue
        trials += 1
        w = _fourier.seminorm_w(poly, f).value
        applied_norm = _fourier.l2_norm(_fourier.apply_symbol(poly, f))
        if w > 0:
            worst_parseval = max(worst_parseval, abs(applied_norm - w) / w)
        for t in ts:
            slack = _fourier.jackson_check(poly, f, t, tau)
            worst_jackson = min(worst_jackson, slack / (1.0 + w))
            g = _fourier.truncate(poly, f, t)
            st_norm_sq = sum(abs(c) ** 2 for _, c in g.coefficients)
            res_sq = sum(abs(c) ** 2 for k, c in f.coefficients if k not in g.support)
            total = _fourier.l2_norm(f) ** 2
            if total > 0:
                worst_pythagoras = max(
                    worst_pythagoras, abs(total - st_norm_sq - res_sq) / total)
            if g.coefficients:
                bslack = _fourier.bernstein_check(poly, g, t, tau)
                worst_bernstein = min(
                    worst_bernstein, bslack / (1.0 + float(t) * _fourier.l2_norm(g)))
    summary = {
        "schema": 1,
        "trials": trials,
        "t_values": [fraction_str(t) for t in ts],
        "worst_jackson_slack_normalized": worst_jackson,
        "worst_bernstein_slack_normalized": worst_bernstein,
        "max_parseval_relative_error": worst_parseval,
        "max_pythagoras_relative_error": worst_pythagoras,
        "pass": bool(
            worst_jackson >= -1e-12 and worst_bernstein >= -1e-12
            and worst_parseval <= 1e-12 and worst_pythagoras <= 1e-12),
    }
    _emit(summary)
    return EXIT_OK if summary["pass"] else EXIT_SCREEN


# ---------------------------------------------------------------------------

def _build_parser() -> _Parser:
    parser = _Parser(prog="newton-widths",
                     description="Newton-polyhedron invariants and width-order estimates "
                                 "for polynomial symbols")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, needs_seed=True):
        p.add_argument("--poly", "-p", help="polynomial text, e.g. '1 + x1^2 + x2^2'")
        p.add_argument("--input", help="JSON file with {d, terms}")
        p.add_argument("--d", type=int, help="ambient dimension override")
        p.add_argument("--mode", choices=["axis_bounded", "adaptive_shell"],
                       help="lattice search mode (default: chosen by the degeneracy screen)")
        p.add_argument("--hard-cap", dest="hard_cap", type=int,
                       help="maximum lattice points to visit")
        if needs_seed:
            p.add_argument("--seed", type=int, default=0, help="sampling seed")
        p.add_argument("--threads", type=int,
                       default=int(os.environ.get("NEWTON_WIDTHS_THREADS", "0")) or None,
                       help="worker hint; computations are deterministic regardless")

    p_an = sub.add_parser("analyze", help="full pipeline, JSON report")
    add_common(p_an)
    p_an.add_argument("--fit", action="store_true", help="fit the lattice-count growth")
    p_an.add_argument("--t-max", dest="t_max", type=float, help="top of the fit grid")
    p_an.add_argument("--fit-points", dest="fit_points", type=int, default=12)
    p_an.add_argument("--n-list", dest="n_list", help="comma list of n for width estimates")
    p_an.add_argument("--timings", action="store_true",
                      help="include wall-clock timings (breaks byte-identical output)")
    p_an.set_defaults(func=_cmd_analyze)

    p_ct = sub.add_parser("count", help="lattice counts")
    add_common(p_ct)
    p_ct.add_argument("--set", choices=["omega", "K"], required=True)
    p_ct.add_argument("--vertices", action="store_true",
                      help="for omega: count over the vertex set instead of the full exponent set")
    p_ct.add_argument("--t", help="single threshold (rational, e.g. 5 or 7/2)")
    p_ct.add_argument("--grid", help="comma list of thresholds; emits CSV")
    p_ct.set_defaults(func=_cmd_count)

    p_w = sub.add_parser("widths", help="width-order estimates 1/t(n)")
    add_common(p_w)
    p_w.add_argument("--n", required=True, help="comma list of n values")
    p_w.set_defaults(func=_cmd_widths)

    p_e = sub.add_parser("epsdim", help="dimension bracket for target accuracy")
    add_common(p_e)
    p_e.add_argument("--eps", required=True, help="target accuracy (rational)")
    p_e.set_defaults(func=_cmd_epsdim)

    p_f = sub.add_parser("fourier-check", help="seeded inequality suite")
    add_common(p_f)
    p_f.add_argument("--trials", type=int, default=100)
    p_f.add_argument("--support", type=int, default=16)
    p_f.add_argument("--box", type=int, default=25)
    p_f.set_defaults(func=_cmd_fourier_check)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        json.dump({"code": "parse", "message": str(exc), "position": exc.position},
                  sys.stderr, sort_keys=True)
        sys.stderr.write("\n")
        return EXIT_USAGE
    except (HypothesisError, UnboundedRegion) as exc:
        json.dump({"code": "hypothesis", "message": str(exc)}, sys.stderr, sort_keys=True)
        sys.stderr.write("\n")
        return EXIT_SCREEN
    except CapExceeded as exc:
        json.dump({"code": "cap", "message": str(exc)}, sys.stderr, sort_keys=True)
        sys.stderr.write("\n")
        return EXIT_CAP
    except ValueError as exc:
        json.dump({"code": "input", "message": str(exc)}, sys.stderr, sort_keys=True)
        sys.stderr.write("\n")
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
