import math
import random
from fractions import Fraction

import pytest

from newton_widths.errors import CapExceeded, HypothesisError, UnboundedRegion
from newton_widths.lattice import (CountSeries, EnumerationConfig, card_k, count_omega,
                                   count_series, enumerate_k, eps_dimension_bracket,
                                   sorted_symbol_values, threshold_t)
from newton_widths.newton import PointSet, vertex_set
from newton_widths.symbol import evaluate, exponent_set, parse_polynomial

from conftest import random_admissible_set


def brute_force_omega(B: PointSet, t: Fraction) -> int:
    """Independent oracle: plain nested loops over the bound box."""
    d = B.dimension
    exps = sorted(B.points)
    bounds = []
    for j in range(d):
        a = max((p[j] for p in exps
                 if p[j] > 0 and all(p[i] == 0 for i in range(d) if i != j)),
                default=None)
        assert a is not None
        m = 0
        while Fraction((m + 1) ** a) <= t:
            m += 1
        bounds.append(m)

    def recurse(prefix):
        if len(prefix) == d:
            val = max(
                math.prod(x ** e for x, e in zip(prefix, exp)) for exp in exps)
            return 1 if val <= t else 0
        return sum(recurse(prefix + (v,)) for v in range(bounds[len(prefix)] + 1))

    return recurse(())


def test_count_omega_examples():
    B = PointSet.of([(0, 0), (2, 0), (0, 2)])
    assert count_omega(B, 1) == 4
    assert count_omega(B, 4) == 9
    assert count_omega(B, Fraction(1, 2)) == 0


def test_count_omega_unbounded_refused():
    with pytest.raises(UnboundedRegion):
        count_omega(PointSet.of([(0, 0), (2, 0)]), 10)


def test_count_omega_against_brute_force():
    rng = random.Random(606)
    for _ in range(30):
        B = random_admissible_set(rng, 2, coord_max=8)
        for t in (Fraction(7), Fraction(50), Fraction(300)):
            assert count_omega(B, t) == brute_force_omega(B, t)


def test_count_omega_monotone():
    rng = random.Random(5)
    for _ in range(10):
        B = random_admissible_set(rng, rng.randint(1, 3))
        counts = [count_omega(B, t) for t in (2, 10, 100, 1000)]
        assert counts == sorted(counts)


def test_enumerate_k_examples():
    p = parse_polynomial("1 + x1^2")
    enum = enumerate_k(p, 5)
    assert enum.points == ((-2,), (-1,), (0,), (1,), (2,))
    assert enum.mode == "axis_bounded"
    assert not enum.heuristic
    assert card_k(p, Fraction(1, 2)) == 0


def test_enumerate_k_contains_origin_at_constant_threshold(nondeg_quartic):
    enum = enumerate_k(nondeg_quartic, 13)
    assert (0, 0) in enum.points


def test_enumeration_modes_agree():
    cases = [
        parse_polynomial("1 + x1^2"),
        parse_polynomial("1 + x1^2 + x2^2"),
        parse_polynomial("1 + x1^2 + x2^4"),
    ]
    for p in cases:
        for t in (10, 100, 10 ** 4):
            a = enumerate_k(p, t, EnumerationConfig(mode="axis_bounded"))
            b = enumerate_k(p, t, EnumerationConfig(mode="adaptive_shell"))
            assert a.points == b.points, (p, t)
            assert b.heuristic


def test_enumerate_k_user_box():
    p = parse_polynomial("1 + x1^2")
    enum = enumerate_k(p, 100, EnumerationConfig(user_box=(3,)))
    assert enum.points == tuple((k,) for k in range(-3, 4))
    assert enum.mode == "user_box"


def test_disk_count_matches_direct_oracle():
    p = parse_polynomial("1 + x1^2 + x2^2")
    for t in (10, 100, 10 ** 3, 10 ** 4):
        expected = sum(
            1
            for a in range(-110, 111) for b in range(-110, 111)
            if 1 + a * a + b * b <= t)
        assert card_k(p, t) == expected


def test_hard_cap_raises():
    p = parse_polynomial("1 + x1^2 + x2^2")
    with pytest.raises(CapExceeded):
        card_k(p, 10 ** 4, EnumerationConfig(hard_cap=50))


def test_symmetry_in_even_coordinates():
    p = parse_polynomial("1 + x1^2 + x2^4")  # even in both coordinates
    pts = set(enumerate_k(p, 500).points)
    assert {(k[0], -k[1]) for k in pts} == pts
    assert {(-k[0], k[1]) for k in pts} == pts


def test_counts_vanish_below_tau():
    for text in ("1 + x1^2", "1 + x1^2 + x2^2"):
        p = parse_polynomial(text)
        tau = sorted_symbol_values(p, 0)[0]
        assert card_k(p, tau - Fraction(1, 7)) == 0
        assert card_k(p, tau) >= 1


def test_threshold_examples():
    p = parse_polynomial("1 + x1^2")
    r0 = threshold_t(p, 0)
    assert (r0.t_n, r0.attained, r0.tie) == (1, True, False)
    r1 = threshold_t(p, 1)
    assert (r1.t_n, r1.attained, r1.tie) == (2, False, True)
    r2 = threshold_t(p, 2)
    assert (r2.t_n, r2.attained, r2.tie) == (2, True, True)


def test_threshold_adjoint_to_card():
    p = parse_polynomial("1 + x1^2")
    for n in range(8):
        rec = threshold_t(p, n)
        assert card_k(p, rec.t_n - Fraction(1, 3)) <= n
        if not rec.attained:
            assert card_k(p, rec.t_n) > n


def test_threshold_requires_compactness_screen():
    with pytest.raises(HypothesisError):
        threshold_t(parse_polynomial("x1^2"), 3)
    with pytest.raises(HypothesisError):
        threshold_t(parse_polynomial("1 + x1^2", dimension=2), 3)


def test_eps_dimension_brackets():
    p = parse_polynomial("1 + x1^2")
    assert eps_dimension_bracket(p, Fraction(1, 2)) == (2, 3)
    assert eps_dimension_bracket(p, 2) == (0, 0)
    assert eps_dimension_bracket(p, Fraction(1, 5)) == (4, 5)


def test_count_series_for_symbol():
    p = parse_polynomial("1 + x1^2")
    s = count_series(p, [5, 10])
    assert s.entries == ((Fraction(5), 5), (Fraction(10), 7))
    assert s.source == "K"
    assert "t,count" in s.to_csv()


def test_count_series_matches_individual_counts(degen_quartic):
    grid = [Fraction(10) ** e for e in range(1, 5)]
    s = count_series(degen_quartic, grid, EnumerationConfig(mode="adaptive_shell"))
    for t, c in s.entries:
        assert c == card_k(degen_quartic, t, EnumerationConfig(mode="adaptive_shell"))


def test_count_series_for_point_set():
    theta = vertex_set(PointSet.of([(0, 0), (4, 0), (0, 2), (2, 1)]))
    s = count_series(theta, [10, 100, 1000])
    counts = [c for _, c in s.entries]
    assert counts == sorted(counts)
    assert s.source == "omega"
    for t, c in s.entries:
        assert c == count_omega(theta, t)


def test_count_series_rejects_bad_grid():
    p = parse_polynomial("1 + x1^2")
    with pytest.raises(ValueError):
        count_series(p, [10, 10])
    with pytest.raises(ValueError):
        count_series(p, [])


def test_sorted_values_are_global_order_statistics():
    p = parse_polynomial("1 + x1^2 + x2^2")
    values = sorted_symbol_values(p, 30)
    direct = sorted(
        Fraction(1 + a * a + b * b)
        for a in range(-40, 41) for b in range(-40, 41))
    assert values[:31] == direct[:31]
