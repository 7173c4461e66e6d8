"""Integer-point enumeration and counting.

Two families of sets are counted here, both exactly:

* ``Omega(B, t)``: nonnegative lattice points k with max over a in B of
  k^a <= t.  Finite exactly when B meets every positive coordinate axis,
  which also yields the enumeration box k_j <= t^(1/a_j).
* ``K(t)``: integer points with |P(k)| <= t for a symbol P.  Two search
  modes: ``axis_bounded`` derives per-axis bounds from the sampled ratio
  constant of the degeneracy screen (sound for screened symbols), and
  ``adaptive_shell`` grows sup-norm shells until a configurable streak of
  consecutive shells carries no solutions.  The shell rule cannot be
  certified for arbitrary degenerate symbols, so results carry a
  ``heuristic`` flag naming the mode that produced them.

All membership decisions are exact: the symbol is cleared of denominators
and evaluated in integer arithmetic.  numpy is used as a prefilter only; a
candidate near the threshold is always re-verified exactly.  Order
statistics of |P(k)| drive the width-threshold t(n): the returned t(n) is
the (n+1)-th smallest value of |P| on the lattice, with flags recording
whether the count at t(n) lands exactly on n+1 and whether the value is
repeated.
"""

from __future__ import annotations

import itertools
import math
from bisect import bisect_left, bisect_right
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from . import degeneracy as _degeneracy
from .errors import CapExceeded, HypothesisError, UnboundedRegion
from .newton import PointSet, compactness_check, vertex_set
from .symbol import Monomial, SymbolPolynomial, evaluate, exponent_set

_INT64_SAFE = 2 ** 62


@dataclass(frozen=True)
class EnumerationConfig:
    mode: str | None = None  # "axis_bounded" | "adaptive_shell" | None = choose by screen
    hard_cap: int = 10 ** 8
    shell_streak: int = 3
    user_box: tuple[int, ...] | None = None
    seed: int = 0
    gamma_hat: float | None = None
    gamma_samples: int = 120

    def __post_init__(self):
        if self.hard_cap < 1:
            raise ValueError("hard_cap must be >= 1")
        if self.shell_streak < 1:
            raise ValueError("shell_streak must be >= 1")
        if self.mode not in (None, "axis_bounded", "adaptive_shell"):
            raise ValueError(f"unknown mode {self.mode!r}")


@dataclass(frozen=True)
class KEnumeration:
    """All lattice points found with |P(k)| <= t, plus how they were found.

    ``q_values`` are the exact integer values of D*P at the points (aligned
    with ``points``), where D = ``q_denominator`` clears the coefficient
    denominators; they come out of the scan for free and let callers sort or
    threshold |P(k)| without re-evaluating.
    """

    points: tuple[Monomial, ...]
    t: Fraction
    mode: str
    heuristic: bool
    q_values: tuple[int, ...] = ()
    q_denominator: int = 1


@dataclass(frozen=True)
class ThresholdRecord:
    """t(n): the (n+1)-th smallest |P(k)|; attained means the lattice count at
    t(n) is exactly n+1; tie means the value is shared by several points."""

    t_n: Fraction
    attained: bool
    tie: bool


@dataclass(frozen=True)
class CountSeries:
    entries: tuple[tuple[Fraction, int], ...]
    source: str  # "omega" | "K"

    def __post_init__(self):
        ts = [t for t, _ in self.entries]
        if any(b <= a for a, b in zip(ts, ts[1:])):
            raise ValueError("t grid must be strictly increasing")
        counts = [c for _, c in self.entries]
        if any(b < a for a, b in zip(counts, counts[1:])):
            raise ValueError("counts must be nondecreasing")

    def to_csv(self) -> str:
        def frac(f: Fraction) -> str:
            return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"

        lines = ["t,count"]
        lines.extend(f"{frac(t)},{c}" for t, c in self.entries)
        return "\n".join(lines) + "\n"


class _Budget:
    def __init__(self, cap: int, context: str):
        self.cap = cap
        self.spent = 0
        self.context = context

    def spend(self, n: int):
        self.spent += n
        if self.spent > self.cap:
            raise CapExceeded(
                f"enumeration visited more than {self.cap} points ({self.context})")


# ---------------------------------------------------------------------------
# integerized symbol

class _IntSymbol:
    """D*P with integer coefficients; |P(k)| <= p/q  iff  |value(k)| * q <= p * D."""

    def __init__(self, poly: SymbolPolynomial):
        self.dimension = poly.dimension
        denom = 1
        for _, c in poly.terms:
            denom = denom * c.denominator // math.gcd(denom, c.denominator)
        self.denominator = denom
        self.terms = tuple(
            (exp, int(c * denom)) for exp, c in poly.terms)

    def value(self, k: Sequence[int]) -> int:
        total = 0
        for exp, c in self.terms:
            v = c
            for x, e in zip(k, exp):
                if e:
                    v *= x ** e
            total += v
        return total

    def abs_bound(self, box: Sequence[tuple[int, int]]) -> int:
        """Upper bound for sum |c| * prod max(|lo|,|hi|)^e over the box."""
        total = 0
        for exp, c in self.terms:
            v = abs(c)
            for (lo, hi), e in zip(box, exp):
                if e:
                    v *= max(abs(lo), abs(hi)) ** e
            total += v
        return total

    def int_threshold(self, t: Fraction) -> int:
        # |value| * q <= p * D  <=>  |value| <= floor(p*D/q)
        return (t.numerator * self.denominator) // t.denominator


def _scan_box(isym: _IntSymbol, t: Fraction, box: Sequence[tuple[int, int]],
              budget: _Budget) -> tuple[list[Monomial], list[int]]:
    """All k in the box with |P(k)| <= t, exactly, with the integer values D*P(k)."""
    if any(lo > hi for lo, hi in box):
        return [], []
    d = isym.dimension
    T = isym.int_threshold(t)
    if T < 0:
        return [], []
    lo_d, hi_d = box[-1]
    kz = np.arange(lo_d, hi_d + 1, dtype=np.int64)
    width = kz.size
    max_deg = max(exp[-1] for exp, _ in isym.terms)
    bound = isym.abs_bound(box)
    use_int = bound < _INT64_SAFE
    T = min(T, bound + 1)  # |value| never exceeds bound; keeps the compare in int64

    if use_int:
        pows = [kz ** 0] + [kz ** e for e in range(1, max_deg + 1)]
    else:
        kzf = kz.astype(np.float64)
        powsf = [np.ones_like(kzf)] + [kzf ** e for e in range(1, max_deg + 1)]
        abspowsf = [np.abs(p) for p in powsf]
        t_float = float(t)

    hits: list[Monomial] = []
    values: list[int] = []
    outer_ranges = [range(lo, hi + 1) for lo, hi in box[:-1]]
    for outer in itertools.product(*outer_ranges):
        budget.spend(width)
        if use_int:
            acc = np.zeros(width, dtype=np.int64)
            for exp, c in isym.terms:
                pref = c
                for v, e in zip(outer, exp[:-1]):
                    if e:
                        pref *= v ** e
                if pref:
                    acc += pref * pows[exp[-1]]
            for i in np.nonzero(np.abs(acc) <= T)[0]:
                hits.append(outer + (int(kz[i]),))
                values.append(int(acc[i]))
        else:
            acc = np.zeros(width)
            absacc = np.zeros(width)
            for exp, c in isym.terms:
                pref = float(c)
                for v, e in zip(outer, exp[:-1]):
                    if e:
                        pref *= float(v) ** e
                if pref:
                    acc += pref * powsf[exp[-1]]
                    absacc += abs(pref) * abspowsf[exp[-1]]
            margin = absacc * 1e-12 + 2.0
            for i in np.nonzero(np.abs(acc) <= t_float + margin)[0]:
                k = outer + (int(kz[i]),)
                v = isym.value(k)
                if abs(v) * t.denominator <= t.numerator * isym.denominator:
                    hits.append(k)
                    values.append(v)
    return hits, values


# ---------------------------------------------------------------------------
# Omega counting

def _axis_exponents(points: Iterable[Monomial], d: int) -> list[int | None]:
    """Per axis, the largest a with a*u^j in the set (None when no axis point)."""
    out: list[int | None] = [None] * d
    for p in points:
        support = [j for j, x in enumerate(p) if x > 0]
        if len(support) == 1:
            j = support[0]
            if out[j] is None or p[j] > out[j]:
                out[j] = p[j]
    return out


def _int_root_floor(t: Fraction, a: int) -> int:
    """Exact floor(t^(1/a)) for t >= 0."""
    if t < 1:
        return 0
    m = int(float(t) ** (1.0 / a))
    while Fraction((m + 1) ** a) <= t:
        m += 1
    while m > 0 and Fraction(m ** a) > t:
        m -= 1
    return m


def count_omega(B: PointSet, t: Fraction | int,
                config: EnumerationConfig | None = None) -> int:
    """Exact cardinality of {k in N^d : max over a in B of k^a <= t}.

    Refuses provably infinite sets: finiteness needs a point of B on every
    positive coordinate axis.
    """
    cfg = config or EnumerationConfig()
    t = Fraction(t)
    if t < 0:
        return 0
    d = B.dimension
    points = B.sorted()
    axes = _axis_exponents(points, d)
    missing = [j + 1 for j, a in enumerate(axes) if a is None]
    if missing:
        raise UnboundedRegion(
            f"Omega is infinite: no axis point on coordinate(s) {missing}")
    zero = tuple(0 for _ in range(d))
    if zero in B.points and t < 1:
        return 0  # the constant monomial k^0 = 1 already exceeds t
    bounds = [_int_root_floor(t, a) for a in axes]
    return len(_omega_values(B, t, bounds, cfg, values_needed=False))


def _omega_values(B: PointSet, t: Fraction, bounds: list[int],
                  cfg: EnumerationConfig, values_needed: bool) -> list:
    """Points (or their max-monomial values) of Omega_B(t) inside the bound box."""
    d = B.dimension
    budget = _Budget(cfg.hard_cap, "Omega box scan")
    exps = sorted(B.points)
    box = [(0, m) for m in bounds]
    lo_d, hi_d = box[-1]
    kz = np.arange(lo_d, hi_d + 1, dtype=np.int64)
    width = kz.size
    max_deg = max((e[-1] for e in exps), default=0)
    worst = 0
    for exp in exps:
        v = 1
        for m, e in zip(bounds, exp):
            if e:
                v *= m ** e
        worst = max(worst, v)
    use_int = worst < _INT64_SAFE
    tq, tp = t.denominator, t.numerator

    if use_int:
        pows = [kz ** 0] + [kz ** e for e in range(1, max_deg + 1)]
        # k^a <= p/q  <=>  k^a * q <= p; with q small this stays in int64 range
        safe_q = worst * tq < _INT64_SAFE and tp < _INT64_SAFE
    else:
        kzf = kz.astype(np.float64)
        powsf = [np.ones_like(kzf)] + [kzf ** e for e in range(1, max_deg + 1)]
        t_float = float(t)

    out = []
    outer_ranges = [range(0, m + 1) for m in bounds[:-1]]
    for outer in itertools.product(*outer_ranges):
        budget.spend(width)
        if use_int and safe_q:
            maxval = np.zeros(width, dtype=np.int64)
            for exp in exps:
                pref = 1
                for v, e in zip(outer, exp[:-1]):
                    if e:
                        pref *= v ** e
                np.maximum(maxval, pref * pows[exp[-1]], out=maxval)
            mask = maxval * tq <= tp
            if values_needed:
                out.extend(int(maxval[i]) for i in np.nonzero(mask)[0])
            else:
                out.extend(outer + (int(kz[i]),) for i in np.nonzero(mask)[0])
        else:
            maxf = np.zeros(width)
            for exp in exps:
                pref = 1.0
                for v, e in zip(outer, exp[:-1]):
                    if e:
                        pref *= float(v) ** e
                np.maximum(maxf, pref * powsf[exp[-1]], out=maxf)
            # no cancellation in single monomials: a narrow band suffices
            lo_mask = maxf <= t_float * (1 - 1e-9) - 1.0
            band = (~lo_mask) & (maxf <= t_float * (1 + 1e-9) + 1.0)
            for i in np.nonzero(lo_mask)[0]:
                k = outer + (int(kz[i]),)
                out.append(_omega_value(exps, k) if values_needed else k)
            for i in np.nonzero(band)[0]:
                k = outer + (int(kz[i]),)
                v = _omega_value(exps, k)
                if v * tq <= tp:
                    out.append(v if values_needed else k)
    return out


def _omega_value(exps: list[Monomial], k: Monomial) -> int:
    best = 0
    for exp in exps:
        v = 1
        for x, e in zip(k, exp):
            if e:
                v *= x ** e
        if v > best:
            best = v
    return best


# ---------------------------------------------------------------------------
# K(t) enumeration

def resolve_enumeration(poly: SymbolPolynomial,
                        config: EnumerationConfig | None = None) -> EnumerationConfig:
    """Fix a concrete mode (and ratio constant) so repeated scans skip the screen.

    The axis-bounded mode is selected when the degeneracy screen says
    ``likely_nondegenerate`` with all-even vertices; anything else falls back
    to adaptive shells.
    """
    cfg = config or EnumerationConfig()
    if cfg.mode is not None:
        return cfg
    report = _degeneracy.degeneracy_report(
        poly, _degeneracy.DegeneracyConfig(seed=cfg.seed, sample_count=cfg.gamma_samples))
    if report.verdict == _degeneracy.VERDICT_LIKELY_OK and report.even_vertices:
        return replace(cfg, mode="axis_bounded", gamma_hat=report.gamma_hat)
    return replace(cfg, mode="adaptive_shell")


def _axis_bounds_from_ratio(poly: SymbolPolynomial, t: Fraction, gamma_hat: float
                            ) -> list[int]:
    """Per-axis bounds |k_j| <= ceil((t / (gamma_hat/2))^(1/a_j)) from the
    two-sided growth bound, with the sampled constant relaxed by a factor 2."""
    d = poly.dimension
    theta = vertex_set(PointSet.of(exponent_set(poly), d))
    axes = _axis_exponents(theta.points, d)
    missing = [j + 1 for j, a in enumerate(axes) if a is None]
    if missing:
        raise UnboundedRegion(
            f"axis-bounded scan impossible: no vertex axis point on coordinate(s) {missing}")
    if gamma_hat <= 0:
        raise HypothesisError("sampled ratio bound is zero; axis_bounded mode unavailable")
    scaled = 2.0 * float(t) / gamma_hat
    return [max(0, math.ceil(scaled ** (1.0 / a))) for a in axes]


def _shell_slabs(r_inner: int, r_outer: int, d: int) -> list[list[tuple[int, int]]]:
    """Disjoint boxes covering {r_inner < ||k||_inf <= r_outer}."""
    slabs = []
    for j in range(d):
        for sign in (-1, 1):
            lo, hi = (r_inner + 1, r_outer) if sign > 0 else (-r_outer, -(r_inner + 1))
            box = []
            for i in range(d):
                if i < j:
                    box.append((-r_outer, r_outer))
                elif i == j:
                    box.append((lo, hi))
                else:
                    box.append((-r_inner, r_inner))
            slabs.append(box)
    return slabs


def enumerate_k(poly: SymbolPolynomial, t: Fraction | int,
                config: EnumerationConfig | None = None) -> KEnumeration:
    """All integer points with |P(k)| <= t in the selected search region.

    Points are exact members; what is heuristic (and flagged) is the claim
    that none were missed outside the region scanned by the shell mode.
    """
    t = Fraction(t)
    if t < 0:
        raise ValueError("t must be nonnegative")
    cfg = resolve_enumeration(poly, config)
    isym = _IntSymbol(poly)
    budget = _Budget(cfg.hard_cap, f"K(t) scan at t={t}")

    def finish(pts, vals, mode, heuristic):
        order = sorted(range(len(pts)), key=lambda i: pts[i])
        return KEnumeration(
            tuple(pts[i] for i in order), t, mode, heuristic,
            tuple(vals[i] for i in order), isym.denominator)

    if cfg.user_box is not None:
        box = [(-b, b) for b in cfg.user_box]
        pts, vals = _scan_box(isym, t, box, budget)
        return finish(pts, vals, "user_box", True)

    if cfg.mode == "axis_bounded":
        gamma = cfg.gamma_hat
        if gamma is None:
            gamma = _degeneracy.gamma_estimate(poly, cfg.gamma_samples, cfg.seed)
        bounds = _axis_bounds_from_ratio(poly, t, gamma)
        box = [(-b, b) for b in bounds]
        pts, vals = _scan_box(isym, t, box, budget)
        return finish(pts, vals, "axis_bounded", False)

    # adaptive shells: literal stopping rule (a streak of consecutive empty
    # shells), processed in vectorized radius batches and truncated back to
    # the radius where the literal rule would have stopped
    hits: list[Monomial] = []
    hit_values: list[int] = []
    streak = 0
    r_done = -1
    batch_minima: list[float] = []
    d = poly.dimension
    while True:
        r_hi = max(r_done + cfg.shell_streak + 1, int(r_done * 1.4) + 2)
        if r_done < 0:
            boxes = [[(-r_hi, r_hi)] * d]
        else:
            boxes = _shell_slabs(r_done, r_hi, d)
        try:
            batch = []
            batch_vals = []
            for box in boxes:
                pts, vals = _scan_box(isym, t, box, budget)
                batch.extend(pts)
                batch_vals.extend(vals)
        except CapExceeded as exc:
            trend = ", ".join(f"{m:.3g}" for m in batch_minima[-3:])
            raise CapExceeded(
                f"{exc} -- shell minima so far [{trend}]; if they are not growing, "
                f"K(t) is likely infinite (compactness failure)") from exc
        nonempty = {max(abs(x) for x in k) if any(k) else 0 for k in batch}
        if batch_vals:
            batch_minima.append(min(abs(v) for v in batch_vals) / isym.denominator)
        hits.extend(batch)
        hit_values.extend(batch_vals)
        stop_radius = None
        for r in range(r_done + 1, r_hi + 1):
            if r in nonempty:
                streak = 0
            else:
                streak += 1
                if streak >= cfg.shell_streak:
                    stop_radius = r
                    break
        if stop_radius is not None:
            kept = [(k, v) for k, v in zip(hits, hit_values)
                    if (max(abs(x) for x in k) if any(k) else 0) <= stop_radius]
            return finish([k for k, _ in kept], [v for _, v in kept],
                          "adaptive_shell", True)
        r_done = r_hi


def card_k(poly: SymbolPolynomial, t: Fraction | int,
           config: EnumerationConfig | None = None) -> int:
    return len(enumerate_k(poly, t, config).points)


# ---------------------------------------------------------------------------
# order statistics of |P(k)| and the width threshold

def _screen_compactness(poly: SymbolPolynomial):
    report = compactness_check(PointSet.of(exponent_set(poly), poly.dimension))
    if not report.compact:
        missing = [j + 1 for j, ok in enumerate(report.axis_rays) if not ok]
        reasons = []
        if not report.zero_in_set:
            reasons.append("the exponent set lacks the origin")
        if missing:
            reasons.append(f"no exponent on coordinate axis(es) {missing}")
        raise HypothesisError("compactness screen failed: " + "; ".join(reasons))


def _sorted_abs_q(poly: SymbolPolynomial, n: int,
                  config: EnumerationConfig | None = None) -> tuple[list[int], int]:
    """Sorted |D*P(k)| integers containing at least the n+1 smallest, globally.

    Found by growing t until the enumeration holds more than n points; every
    point outside the final region has |P| above the scan threshold, so the
    leading n+1 order statistics are global.
    """
    cfg = resolve_enumeration(poly, config)
    t = max(Fraction(1), abs(evaluate(poly, (0,) * poly.dimension)))
    for _ in range(80):
        enum = enumerate_k(poly, t, cfg)
        if len(enum.points) > n:
            return sorted(abs(v) for v in enum.q_values), enum.q_denominator
        t *= 4
    raise CapExceeded(
        f"could not collect {n + 1} lattice values; K(t) stayed too small while t grew")


def sorted_symbol_values(poly: SymbolPolynomial, n: int,
                         config: EnumerationConfig | None = None) -> list[Fraction]:
    """Sorted |P(k)| values containing at least the n+1 smallest, completely."""
    absq, denom = _sorted_abs_q(poly, n, config)
    return [Fraction(v, denom) for v in absq]


def threshold_t(poly: SymbolPolynomial, n: int,
                config: EnumerationConfig | None = None) -> ThresholdRecord:
    """Largest t with card K(t) <= n, reported as the (n+1)-th order statistic.

    The supremum is a left limit; ``attained`` records whether the count at
    t(n) lands exactly on n+1, and ``tie`` whether the threshold value is
    shared by several lattice points.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    _screen_compactness(poly)
    absq, denom = _sorted_abs_q(poly, n, config)
    v_n = absq[n]
    count_at = bisect_right(absq, v_n)
    multiplicity = count_at - bisect_left(absq, v_n)
    return ThresholdRecord(Fraction(v_n, denom), attained=(count_at == n + 1),
                           tie=(multiplicity > 1))


def eps_dimension_bracket(poly: SymbolPolynomial, eps: Fraction,
                          config: EnumerationConfig | None = None) -> tuple[int, int]:
    """Bracket for the minimal subspace dimension reaching error eps:
    (card K(1/eps) - 1, card K(1/eps)), floored at zero."""
    eps = Fraction(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    _screen_compactness(poly)
    card = card_k(poly, 1 / eps, config)
    return (max(card - 1, 0), card)


def count_series(source: SymbolPolynomial | PointSet, t_grid: Sequence,
                 config: EnumerationConfig | None = None) -> CountSeries:
    """Counts over an increasing t grid, reusing one enumeration at the top.

    A symbol yields the K(t) series; a point set yields the Omega series.
    """
    grid = [Fraction(x) for x in t_grid]
    if not grid:
        raise ValueError("empty t grid")
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise ValueError("t grid must be strictly increasing")
    t_max = grid[-1]
    cfg = config or EnumerationConfig()

    if isinstance(source, SymbolPolynomial):
        cfg = resolve_enumeration(source, cfg)
        enum = enumerate_k(source, t_max, cfg)
        absq = sorted(abs(v) for v in enum.q_values)
        denom = enum.q_denominator
        entries = tuple(
            (t, bisect_right(absq, (t.numerator * denom) // t.denominator))
            for t in grid)
        return CountSeries(entries, "K")

    B = source
    axes = _axis_exponents(B.points, B.dimension)
    missing = [j + 1 for j, a in enumerate(axes) if a is None]
    if missing:
        raise UnboundedRegion(
            f"Omega is infinite: no axis point on coordinate(s) {missing}")
    bounds = [_int_root_floor(t_max, a) for a in axes]
    values = sorted(_omega_values(B, t_max, bounds, cfg, values_needed=True))
    entries = tuple((t, bisect_right(values, t)) for t in grid)
    return CountSeries(entries, "omega")
