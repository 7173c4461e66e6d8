import random
from fractions import Fraction

import pytest

from newton_widths.symbol import (ParseError, SymbolPolynomial, add, evaluate,
                                  exponent_set, parse_polynomial, poly_from_json,
                                  poly_to_json, render, restrict_to_face,
                                  tau_lower_bound)

from conftest import NONDEG_QUARTIC_TEXT, DEGEN_QUARTIC_TEXT

CANONICAL_QUARTIC_EXPONENTS = {
    (4, 0), (3, 0), (2, 1), (2, 0), (1, 1), (0, 2), (1, 0), (0, 1), (0, 0)}


def test_parse_canonical_quartic():
    p = parse_polynomial(NONDEG_QUARTIC_TEXT)
    assert p.dimension == 2
    assert len(p.terms) == 9
    assert exponent_set(p) == CANONICAL_QUARTIC_EXPONENTS


def test_parse_is_faithful_to_its_input():
    # same coefficients but with the x1^3*x2 / x1^2*x2 variant of the middle
    # terms; the parser must not second-guess the text it is given
    variant = ("8*x1^4 - 4*x1^3 - 3*x1^3*x2 - 2*x1^2*x2 - 4*x1*x2 "
               "+ 6*x2^2 - 4*x1 - 3*x2 + 13")
    p = parse_polynomial(variant)
    assert len(p.terms) == 9
    assert (3, 1) in exponent_set(p)
    assert (2, 0) not in exponent_set(p)


def test_parse_constant_with_dimension():
    p = parse_polynomial("13", dimension=2)
    assert p.terms == (((0, 0), Fraction(13)),)


def test_parse_merges_like_terms():
    p = parse_polynomial("x1^2 + x1^2")
    assert p.terms == (((2,), Fraction(2)),)


def test_parse_rational_coefficients_and_implicit_star():
    p = parse_polynomial("1/2 x1 + 3/4")
    assert p.coefficient((1,)) == Fraction(1, 2)
    assert p.coefficient((0,)) == Fraction(3, 4)


def test_parse_errors_carry_position():
    with pytest.raises(ParseError):
        parse_polynomial("x1 ^")
    with pytest.raises(ParseError):
        parse_polynomial("x1 @ x2")
    with pytest.raises(ParseError):
        parse_polynomial("x1^0")
    with pytest.raises(ParseError):
        parse_polynomial("x1 / 2")
    with pytest.raises(ParseError, match="dimension"):
        parse_polynomial("x1 + x3", dimension=2)
    with pytest.raises(ParseError):
        parse_polynomial("x1 - x1")
    with pytest.raises(ParseError):
        parse_polynomial("")


def test_dimension_inference():
    assert parse_polynomial("1").dimension == 1
    assert parse_polynomial("x2^3").dimension == 2
    assert parse_polynomial("x1", dimension=3).terms == (((1, 0, 0), Fraction(1)),)


def test_render_roundtrip_on_canonical_symbols():
    rng = random.Random(7)
    for _ in range(50):
        d = rng.randint(1, 3)
        terms = {}
        for _ in range(rng.randint(1, 6)):
            exp = tuple(rng.randint(0, 4) for _ in range(d))
            coeff = Fraction(rng.randint(-9, 9), rng.randint(1, 5))
            if coeff:
                terms[exp] = coeff
        if not terms:
            continue
        p = SymbolPolynomial.from_terms(d, terms.items())
        assert parse_polynomial(render(p), d) == p


def test_json_roundtrip():
    p = parse_polynomial(NONDEG_QUARTIC_TEXT)
    assert poly_from_json(poly_to_json(p)) == p


def test_evaluate_constant_at_origin():
    p = parse_polynomial(NONDEG_QUARTIC_TEXT)
    assert evaluate(p, (0, 0)) == 13


def test_evaluate_zero_power_convention():
    # with the origin in the exponent set only the constant survives at 0
    rng = random.Random(3)
    for _ in range(20):
        d = rng.randint(1, 3)
        const = Fraction(rng.randint(1, 9))
        terms = {(0,) * d: const}
        for _ in range(3):
            exp = tuple(rng.randint(0, 3) for _ in range(d))
            if any(exp):
                terms[exp] = Fraction(rng.randint(1, 5))
        p = SymbolPolynomial.from_terms(d, terms.items())
        assert evaluate(p, (0,) * d) == const


def test_evaluate_degen_quartic_at_ones():
    p = parse_polynomial(DEGEN_QUARTIC_TEXT)
    assert evaluate(p, (1, 1)) == 3


def test_evaluate_is_linear_in_coefficients():
    rng = random.Random(11)
    for _ in range(30):
        d = rng.randint(1, 3)

        def rand_poly():
            terms = {}
            for _ in range(rng.randint(1, 5)):
                exp = tuple(rng.randint(0, 3) for _ in range(d))
                c = Fraction(rng.randint(-6, 6), rng.randint(1, 4))
                if c:
                    terms[exp] = terms.get(exp, Fraction(0)) + c
            terms = {e: c for e, c in terms.items() if c}
            return SymbolPolynomial.from_terms(d, terms.items()) if terms else None

        p, q = rand_poly(), rand_poly()
        if p is None or q is None:
            continue
        try:
            s = add(p, q)
        except ValueError:
            continue  # p + q vanished entirely
        x = tuple(Fraction(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(d))
        assert evaluate(s, x) == evaluate(p, x) + evaluate(q, x)


def test_restrict_to_face():
    p = parse_polynomial(DEGEN_QUARTIC_TEXT)
    face = restrict_to_face(p, {(4, 0), (3, 1), (2, 2)})
    # x1^4 - 2 x1^3 x2 + x1^2 x2^2 = x1^2 (x1 - x2)^2
    assert face.evaluate((1, 1)) == 0
    assert face.evaluate((2, 1)) == 2 ** 2 * 1
    assert face.evaluate((1, 3)) == 4


def test_restrict_to_full_support_matches_parent():
    p = parse_polynomial(NONDEG_QUARTIC_TEXT)
    face = restrict_to_face(p, exponent_set(p))
    rng = random.Random(5)
    for _ in range(100):
        x = tuple(Fraction(rng.randint(-8, 8), rng.randint(1, 5)) for _ in range(2))
        assert face.evaluate(x) == evaluate(p, x)


def test_restrict_to_constant():
    p = parse_polynomial(NONDEG_QUARTIC_TEXT)
    face = restrict_to_face(p, {(0, 0)})
    assert face.evaluate((9, 9)) == 13


def test_restrict_rejects_foreign_support():
    p = parse_polynomial("1 + x1^2")
    with pytest.raises(ValueError):
        restrict_to_face(p, {(5,)})


def test_tau_lower_bound():
    p = parse_polynomial("1 + x1^2")
    assert tau_lower_bound(p, [(k,) for k in range(-5, 6)]) == 1
    degen = parse_polynomial(DEGEN_QUARTIC_TEXT)
    pts = [(a, b) for a in range(-3, 4) for b in range(-3, 4)]
    assert tau_lower_bound(degen, pts) == 1
    const = parse_polynomial("1", dimension=2)
    assert tau_lower_bound(const, [(0, 0)]) == 1
    with pytest.raises(ValueError):
        tau_lower_bound(p, [])
