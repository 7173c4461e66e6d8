"""Asymptotic approximation orders for a screened symbol.

The headline quantity, the Kolmogorov width of the unit ball driven by a
symbol P, decays like n^(-r) (log n)^(v*r) where r is the largest multiple
of the all-ones vector inside the hull of the vertex set of the exponent
diagram and v is the affine dimension of the optimizer set of the dual
polar program.  Both come out of exact LPs here.  The width itself is an
infimum over all subspaces and is never claimed as a number; what this
module produces instead is

* the exact pair (r, v) and rendered order formulas,
* numerical width-order estimates 1/t(n) from lattice order statistics,
* growth-exponent fits of counting series on a log-log scale, restricted to
  integer log powers, used to cross-validate the LP values, and
* an exact scan of the ratio |P(k)| / max vertex monomial over a box, which
  is the two-sided comparability constant behind everything above.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import lattice as _lattice
from .degeneracy import (VERDICT_LIKELY_OK, DegeneracyConfig, DegeneracyReport,
                         degeneracy_report)
from .errors import HypothesisError
from .lp import diagonal_reach, polar_sum_max, solution_face_dimension
from .newton import PointSet, compactness_check, vertex_set
from .symbol import Monomial, SymbolPolynomial, evaluate, exponent_set


def _frac_str(f: Fraction) -> str:
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


@dataclass(frozen=True)
class AsymptoticOrder:
    decay_exponent: Fraction          # r > 0
    log_power: int                    # 0 <= v < d
    d_n_formula: str
    n_eps_formula: str
    forced: bool = False              # screens overridden by the caller

    def __post_init__(self):
        if self.decay_exponent <= 0:
            raise ValueError("decay exponent must be positive")
        if self.log_power < 0:
            raise ValueError("log power must be nonnegative")


@dataclass(frozen=True)
class FitResult:
    growth_exponent: float            # fitted exponent of t
    log_power: int                    # fitted integer power of log t
    intercept: float
    residual_by_power: tuple[float, ...]
    rational_hint: Fraction           # best p/q (q <= 12) near the exponent

    def __post_init__(self):
        if not (0 <= self.log_power < len(self.residual_by_power)):
            raise ValueError("log power outside candidate range")


@dataclass(frozen=True)
class WidthEstimate:
    n: int
    t_n: Fraction
    d_n_estimate: Fraction            # exactly 1 / t_n
    tie: bool


@dataclass(frozen=True)
class ConsistencyReport:
    reach: Fraction                   # r from the LP
    dual_value: Fraction              # 1/r from the independent dual LP
    lp_log_power: int
    fit: FitResult
    ratio_min: float
    ratio_max: float
    exponent_agrees: bool             # |fitted - 1/r| <= 0.1
    log_power_agrees: bool
    series: _lattice.CountSeries


def _render_formulas(rho: Fraction, nu: int) -> tuple[str, str]:
    r = _frac_str(rho)
    inv = _frac_str(1 / rho)
    if nu == 0:
        return f"n^-{r}", f"eps^-{inv}"
    power = _frac_str(nu * rho)
    return f"n^-{r} (log n)^{power}", f"eps^-{inv} |log eps|^{nu}"


def theoretical_order(poly: SymbolPolynomial, force: bool = False,
                      degeneracy_config: DegeneracyConfig | None = None,
                      report: DegeneracyReport | None = None) -> AsymptoticOrder:
    """Exact (decay exponent, log power) from the vertex set of the symbol.

    Preconditions: the exponent set contains the origin and meets every
    positive coordinate axis, and the degeneracy screen says
    ``likely_nondegenerate``.  ``force=True`` skips both screens; the result
    is then flagged, because the order formula is not backed by the screen.
    """
    A = PointSet.of(exponent_set(poly), poly.dimension)
    comp = compactness_check(A)
    if not comp.compact and not force:
        missing = [j + 1 for j, ok in enumerate(comp.axis_rays) if not ok]
        parts = []
        if not comp.zero_in_set:
            parts.append("the exponent set lacks the origin (unit ball not bounded)")
        if missing:
            parts.append(f"no exponent on coordinate axis(es) {missing} (lattice sets infinite)")
        raise HypothesisError("order formula unavailable: " + "; ".join(parts))
    if report is None and not force:
        report = degeneracy_report(poly, degeneracy_config)
    if not force and report.verdict != VERDICT_LIKELY_OK:
        raise HypothesisError(
            f"order formula unavailable: degeneracy screen verdict is {report.verdict!r}")
    theta = vertex_set(A)
    rho = diagonal_reach(theta)
    nu = solution_face_dimension(theta)
    d_n, n_eps = _render_formulas(rho, nu)
    return AsymptoticOrder(rho, nu, d_n, n_eps, forced=force)


def anisotropic_formula_check(beta: Sequence[int]) -> Fraction:
    """Reach of {0} united with the per-axis points beta_j * u^j, checked
    against the closed form 1 / sum(1/beta_j)."""
    beta = [int(b) for b in beta]
    if any(b < 1 for b in beta):
        raise ValueError("beta entries must be positive integers")
    d = len(beta)
    points = [tuple(0 for _ in range(d))]
    for j, b in enumerate(beta):
        p = [0] * d
        p[j] = b
        points.append(tuple(p))
    rho = diagonal_reach(PointSet.of(points, d))
    expected = 1 / sum(Fraction(1, b) for b in beta)
    if rho != expected:
        raise ArithmeticError(
            f"reach {rho} does not match closed form {expected} for beta={beta}")
    return rho


def width_estimates(poly: SymbolPolynomial, n_values: Sequence[int],
                    config: _lattice.EnumerationConfig | None = None
                    ) -> list[WidthEstimate]:
    """Width-order estimates 1/t(n) per requested n, from one shared enumeration."""
    from bisect import bisect_left, bisect_right

    ns = [int(n) for n in n_values]
    if any(n < 0 for n in ns):
        raise ValueError("n values must be nonnegative")
    _lattice._screen_compactness(poly)
    absq, denom = _lattice._sorted_abs_q(poly, max(ns), config)
    out = []
    for n in ns:
        v_n = absq[n]
        if v_n == 0:
            raise HypothesisError(
                "the symbol vanishes at a lattice point; width estimates undefined (tau = 0)")
        multiplicity = bisect_right(absq, v_n) - bisect_left(absq, v_n)
        t_n = Fraction(v_n, denom)
        out.append(WidthEstimate(n, t_n, 1 / t_n, tie=(multiplicity > 1)))
    return out


def fit_growth(series: _lattice.CountSeries, d: int) -> FitResult:
    """Least-squares fit of log(count) = mu log t + v log log t + b with the
    log power v restricted to the integer grid 0..d-1.

    A free-floating log exponent is statistically unstable at desk scale and
    the theory guarantees integrality, so each candidate v gets its own
    2-parameter fit and the smallest residual wins.
    """
    usable = [(t, c) for t, c in series.entries if t >= 2 and c >= 1]
    distinct = {t for t, _ in usable}
    if len(distinct) < 2:
        raise ValueError("need at least 2 distinct t values with t >= 2 and positive counts")
    x = np.array([math.log(float(t)) for t, _ in usable])
    y = np.array([math.log(c) for _, c in usable])
    z = np.log(x)  # log log t
    design = np.column_stack([x, np.ones_like(x)])
    residuals = []
    fits = []
    for v in range(max(d, 1)):
        target = y - v * z
        coef, *_ = np.linalg.lstsq(design, target, rcond=None)
        resid = float(np.sum((target - design @ coef) ** 2))
        residuals.append(resid)
        fits.append(coef)
    best = int(np.argmin(residuals))
    mu_hat = float(fits[best][0])
    intercept = float(fits[best][1])
    return FitResult(mu_hat, best, intercept, tuple(residuals),
                     Fraction(mu_hat).limit_denominator(12))


def ratio_scan(poly: SymbolPolynomial, radius: int) -> tuple[Fraction, Fraction]:
    """Exact [min, max] of |P(k)| / max vertex monomial over the sup-norm box.

    Modes where every vertex monomial vanishes (possible only without the
    origin in the vertex set) are skipped.  A strictly positive minimum is
    the observable face of the two-sided growth comparison.
    """
    d = poly.dimension
    theta = sorted(vertex_set(PointSet.of(exponent_set(poly), d)).points)
    lo = hi = None
    for k in _box_points(radius, d):
        den = 0
        for a in theta:
            v = 1
            for x, e in zip(k, a):
                if e:
                    v *= x ** e
            v = abs(v)
            if v > den:
                den = v
        if den == 0:
            continue
        ratio = abs(evaluate(poly, k)) / den
        if lo is None or ratio < lo:
            lo = ratio
        if hi is None or ratio > hi:
            hi = ratio
    if lo is None:
        raise ValueError("no meaningful modes in the box")
    return lo, hi


def _box_points(radius: int, d: int):
    import itertools
    return itertools.product(range(-radius, radius + 1), repeat=d)


def consistency_check(poly: SymbolPolynomial,
                      t_grid: Sequence | None = None,
                      config: _lattice.EnumerationConfig | None = None,
                      degeneracy_config: DegeneracyConfig | None = None
                      ) -> ConsistencyReport:
    """Cross-validate the LP order against lattice counting.

    (a) the empirical ratio |P(k)| / max vertex monomial over the largest
    enumerated K(t), reported as an interval that should stay away from 0 and
    infinity; (b) a growth fit of the K(t) series, compared against the exact
    (1/reach, face dimension) with thresholds 0.1 and exact equality.
    """
    d = poly.dimension
    A = PointSet.of(exponent_set(poly), d)
    comp = compactness_check(A)
    if not comp.compact:
        raise HypothesisError("consistency check needs the compactness screen to pass")
    report = degeneracy_report(poly, degeneracy_config)
    if report.verdict != VERDICT_LIKELY_OK:
        raise HypothesisError(
            f"consistency check needs verdict likely_nondegenerate, got {report.verdict!r}")

    theta = vertex_set(A)
    rho = diagonal_reach(theta)
    mu = polar_sum_max(theta)
    nu = solution_face_dimension(theta)

    if t_grid is None:
        t_grid = [Fraction(10) ** e for e in range(2, 7)]
    grid = [Fraction(t) for t in t_grid]
    cfg = _lattice.resolve_enumeration(poly, config)
    enum = _lattice.enumerate_k(poly, grid[-1], cfg)

    from bisect import bisect_right
    values = sorted(abs(evaluate(poly, k)) for k in enum.points)
    series = _lattice.CountSeries(
        tuple((t, bisect_right(values, t)) for t in grid), "K")
    fit = fit_growth(series, d)

    theta_sorted = sorted(theta.points)
    rmin = math.inf
    rmax = 0.0
    for k in enum.points:
        den = 0
        for a in theta_sorted:
            v = 1
            for x, e in zip(k, a):
                if e:
                    v *= x ** e
            v = abs(v)
            if v > den:
                den = v
        if den == 0:
            continue
        r = float(abs(evaluate(poly, k))) / den
        rmin = min(rmin, r)
        rmax = max(rmax, r)

    mu_target = float(1 / rho)
    return ConsistencyReport(
        reach=rho,
        dual_value=mu,
        lp_log_power=nu,
        fit=fit,
        ratio_min=rmin,
        ratio_max=rmax,
        exponent_agrees=abs(fit.growth_exponent - mu_target) <= 0.1,
        log_power_agrees=(fit.log_power == nu),
        series=series,
    )
