import random
from fractions import Fraction

import pytest

from newton_widths.newton import PointSet
from newton_widths.symbol import SymbolPolynomial, parse_polynomial

# Running examples used across the suite.  NONDEG_QUARTIC's text follows its
# canonical exponent listing, which is the version whose vertex set is
# {(4,0),(0,2),(0,0)}; see notes in test_newton for the faithful-parse twin.
NONDEG_QUARTIC_TEXT = ("8*x1^4 - 4*x1^3 - 3*x1^2*x2 - 2*x1^2 - 4*x1*x2 "
                       "+ 6*x2^2 - 4*x1 - 3*x2 + 13")
NONDEG_SEXTIC_TEXT = "6*x1^6 + x1^4*x2^2 - 6*x1^5 - x1^3*x2^2 + 5*x2^4 - 4*x2^3 + 3"
DEGEN_QUARTIC_TEXT = "x1^4 - 2*x1^3*x2 + x1^2*x2^2 + x1^2 + x2^2 + 1"


@pytest.fixture(scope="session")
def nondeg_quartic() -> SymbolPolynomial:
    return parse_polynomial(NONDEG_QUARTIC_TEXT)


@pytest.fixture(scope="session")
def nondeg_sextic() -> SymbolPolynomial:
    return parse_polynomial(NONDEG_SEXTIC_TEXT)


@pytest.fixture(scope="session")
def degen_quartic() -> SymbolPolynomial:
    return parse_polynomial(DEGEN_QUARTIC_TEXT)


def isotropic_symbol(s: int, d: int) -> SymbolPolynomial:
    """1 + sum over |a| = s of x^a."""
    terms = [((0,) * d, Fraction(1))]

    def compositions(total, parts):
        if parts == 1:
            yield (total,)
            return
        for head in range(total + 1):
            for rest in compositions(total - head, parts - 1):
                yield (head,) + rest

    for exp in compositions(s, d):
        terms.append((exp, Fraction(1)))
    return SymbolPolynomial.from_terms(d, terms)


def anisotropic_symbol(beta) -> SymbolPolynomial:
    d = len(beta)
    terms = [((0,) * d, Fraction(1))]
    for j, b in enumerate(beta):
        exp = [0] * d
        exp[j] = b
        terms.append((tuple(exp), Fraction(1)))
    return SymbolPolynomial.from_terms(d, terms)


def mixed_symbol(alpha) -> SymbolPolynomial:
    """sum over subsets e of coordinates of x^(alpha restricted to e)."""
    d = len(alpha)
    terms = []
    for mask in range(1 << d):
        exp = tuple(alpha[j] if (mask >> j) & 1 else 0 for j in range(d))
        terms.append((exp, Fraction(1)))
    return SymbolPolynomial.from_terms(d, terms)


def random_admissible_set(rng: random.Random, d: int, coord_max: int = 10,
                          extra_points: int = 6) -> PointSet:
    """Seeded random point set with the origin and a point on every axis."""
    points = {tuple(0 for _ in range(d))}
    for j in range(d):
        p = [0] * d
        p[j] = rng.randint(1, coord_max)
        points.add(tuple(p))
    for _ in range(rng.randint(0, extra_points)):
        points.add(tuple(rng.randint(0, coord_max) for _ in range(d)))
    return PointSet.of(points, d)
