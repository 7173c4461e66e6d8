import math
import random
from fractions import Fraction

import pytest

from newton_widths.errors import HypothesisError
from newton_widths.lattice import CountSeries, EnumerationConfig, count_series
from newton_widths.lp import polar_sum_max
from newton_widths.newton import PointSet, vertex_set
from newton_widths.symbol import SymbolPolynomial, exponent_set, parse_polynomial
from newton_widths.widths import (anisotropic_formula_check, consistency_check,
                                  fit_growth, ratio_scan, theoretical_order,
                                  width_estimates)

from conftest import anisotropic_symbol, isotropic_symbol, mixed_symbol


def test_theoretical_order_quartic(nondeg_quartic):
    order = theoretical_order(nondeg_quartic)
    assert order.decay_exponent == Fraction(4, 3)
    assert order.log_power == 0
    assert order.d_n_formula == "n^-4/3"
    assert order.n_eps_formula == "eps^-3/4"


def test_theoretical_order_isotropic():
    order = theoretical_order(isotropic_symbol(2, 2))
    assert (order.decay_exponent, order.log_power) == (1, 0)


def test_theoretical_order_mixed():
    order = theoretical_order(mixed_symbol((2, 2)))
    assert (order.decay_exponent, order.log_power) == (2, 1)
    assert order.d_n_formula == "n^-2 (log n)^2"
    assert order.n_eps_formula == "eps^-1/2 |log eps|^1"


def test_theoretical_order_screens(degen_quartic):
    with pytest.raises(HypothesisError, match="degeneracy"):
        theoretical_order(degen_quartic)
    with pytest.raises(HypothesisError, match="origin"):
        theoretical_order(parse_polynomial("x1^2"))
    with pytest.raises(HypothesisError, match="axis"):
        theoretical_order(parse_polynomial("1 + x1^2", dimension=2))
    forced = theoretical_order(degen_quartic, force=True)
    assert forced.forced


def test_order_invariant_under_interior_points(nondeg_quartic):
    base = theoretical_order(nondeg_quartic)
    # adding an interior exponent off the diagram leaves the order unchanged
    augmented = SymbolPolynomial.from_terms(
        2, list(nondeg_quartic.terms) + [((1, 0), Fraction(1))])
    aug_order = theoretical_order(augmented)
    assert (aug_order.decay_exponent, aug_order.log_power) == (
        base.decay_exponent, base.log_power)


def test_reach_is_reciprocal_of_dual_value():
    rng = random.Random(55)
    for poly in (isotropic_symbol(2, 2), anisotropic_symbol((2, 4)), mixed_symbol((2, 2))):
        order = theoretical_order(poly)
        theta = vertex_set(PointSet.of(exponent_set(poly), poly.dimension))
        assert order.decay_exponent == 1 / polar_sum_max(theta)


def test_anisotropic_formula():
    assert anisotropic_formula_check((2, 4)) == Fraction(4, 3)
    assert anisotropic_formula_check((2, 2, 2)) == Fraction(2, 3)  # s/d reduction
    assert anisotropic_formula_check((2,)) == 2


def test_width_estimates_table():
    p = parse_polynomial("1 + x1^2")
    rows = width_estimates(p, [0, 2, 8])
    assert [(w.n, w.t_n, w.d_n_estimate) for w in rows] == [
        (0, 1, 1), (2, 2, Fraction(1, 2)), (8, 17, Fraction(1, 17))]
    for w in rows:
        assert w.d_n_estimate * w.t_n == 1
    many = width_estimates(p, list(range(15)))
    ests = [w.d_n_estimate for w in many]
    assert ests == sorted(ests, reverse=True)


def test_width_estimates_trend_for_quartic(nondeg_quartic):
    # log(1/t(n)) / log n should drift toward -4/3
    rows = width_estimates(nondeg_quartic, [100, 1000, 10000])
    slopes = [math.log(float(w.d_n_estimate)) / math.log(w.n) for w in rows]
    assert slopes[-1] == pytest.approx(-4 / 3, abs=0.15)
    assert abs(slopes[-1] + 4 / 3) <= abs(slopes[0] + 4 / 3) + 0.02


def synthetic_series(mu: float, nu: int, decades=(3, 7), points=12) -> CountSeries:
    lo, hi = decades
    entries = []
    for i in range(points):
        t = Fraction(10) ** lo * Fraction(10) ** Fraction((hi - lo) * i, points - 1)
        t = Fraction(int(t))
        count = max(1, round(float(t) ** mu * math.log(float(t)) ** nu))
        if entries and t <= entries[-1][0]:
            continue
        entries.append((t, count))
    return CountSeries(tuple(entries), "K")


def test_fit_recovers_synthetic_exponents():
    for mu in (0.5, 0.75, 1.0):
        for nu in (0, 1):
            fit = fit_growth(synthetic_series(mu, nu), 2)
            assert fit.log_power == nu, (mu, nu, fit)
            assert abs(fit.growth_exponent - mu) <= 0.05, (mu, nu, fit)


def test_fit_rational_hint():
    fit = fit_growth(synthetic_series(0.5, 1), 2)
    assert fit.rational_hint == Fraction(1, 2)


def test_fit_rejects_degenerate_series():
    with pytest.raises(ValueError):
        fit_growth(CountSeries(((Fraction(10), 5),), "K"), 2)


def test_fit_on_vertex_set_counts(nondeg_quartic):
    theta = vertex_set(PointSet.of(exponent_set(nondeg_quartic), 2))
    grid = [Fraction(10) ** Fraction(e, 2) for e in range(4, 13)]
    grid = [Fraction(int(t)) for t in grid]
    series = count_series(theta, grid)
    fit = fit_growth(series, 2)
    assert fit.log_power == 0
    assert abs(fit.growth_exponent - 0.75) <= 0.1


def test_ratio_scan_quartic_frozen_interval(nondeg_quartic):
    lo, hi = ratio_scan(nondeg_quartic, 10)
    assert lo > 0
    full_lo, full_hi = ratio_scan(nondeg_quartic, 20)
    assert full_lo <= lo and full_hi >= hi


def test_consistency_check_disk():
    p = parse_polynomial("1 + x1^2 + x2^2")
    rep = consistency_check(p, t_grid=[Fraction(10) ** e for e in range(2, 7)])
    assert rep.reach == 1
    assert rep.lp_log_power == 0
    assert rep.exponent_agrees and rep.log_power_agrees
    assert 0 < rep.ratio_min and rep.ratio_max <= 3.0


def test_consistency_check_quartic(nondeg_quartic):
    rep = consistency_check(nondeg_quartic,
                            t_grid=[Fraction(10) ** e for e in range(2, 7)])
    assert rep.reach == Fraction(4, 3)
    assert abs(rep.fit.growth_exponent - 0.75) <= 0.1
    assert rep.fit.log_power == 0
    assert rep.exponent_agrees and rep.log_power_agrees


def test_consistency_check_refuses_degenerate(degen_quartic):
    with pytest.raises(HypothesisError):
        consistency_check(degen_quartic)
