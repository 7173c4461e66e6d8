"""Exact multivariate polynomial symbols with rational coefficients.

A symbol is a finite sum  sum_a c_a * x^a  with exponent vectors a in N^d and
nonzero rational coefficients c_a.  Coefficients are Fractions and evaluation
at rational points is exact, so every downstream quantity (hull vertices,
dual program values, lattice memberships) is computed without tolerances.
The convention 0**0 = 1 applies everywhere, which is what makes constants
behave correctly at lattice points with zero coordinates.

Text grammar: variables ``x1`` .. ``xd``; integer or rational literals ``p``
or ``p/q``; ``^`` for positive integer powers; ``*`` optional between
factors; ``+``/``-`` separate terms; whitespace is ignored.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

Monomial = tuple[int, ...]


class ParseError(ValueError):
    """Syntax or consistency error in polynomial input; carries the offset."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


@dataclass(frozen=True)
class SymbolPolynomial:
    """Canonical term list: exponents pairwise distinct, coefficients nonzero."""

    dimension: int
    terms: tuple[tuple[Monomial, Fraction], ...]

    def __post_init__(self):
        if self.dimension < 1:
            raise ValueError("dimension must be >= 1")
        if not self.terms:
            raise ValueError("a symbol needs at least one term")
        seen = set()
        for exp, coeff in self.terms:
            if len(exp) != self.dimension:
                raise ValueError(f"exponent {exp} does not match dimension {self.dimension}")
            if any(e < 0 or not isinstance(e, int) for e in exp):
                raise ValueError(f"exponents must be nonnegative integers: {exp}")
            if coeff == 0:
                raise ValueError("zero coefficient in canonical term list")
            if exp in seen:
                raise ValueError(f"duplicate exponent {exp}")
            seen.add(exp)

    @classmethod
    def from_terms(cls, dimension: int, terms: Iterable[tuple[Sequence[int], Fraction | int | str]]
                   ) -> "SymbolPolynomial":
        """Merge like terms, drop zeros, and sort into canonical order."""
        acc: dict[Monomial, Fraction] = {}
        for exp, coeff in terms:
            key = tuple(int(e) for e in exp)
            acc[key] = acc.get(key, Fraction(0)) + Fraction(coeff)
        cleaned = {e: c for e, c in acc.items() if c != 0}
        if not cleaned:
            raise ValueError("polynomial vanished after merging like terms")
        ordered = tuple(sorted(cleaned.items(), key=lambda item: item[0], reverse=True))
        return cls(dimension, ordered)

    def coefficient(self, exp: Monomial) -> Fraction:
        for e, c in self.terms:
            if e == exp:
                return c
        return Fraction(0)


@dataclass(frozen=True)
class FacePolynomial:
    """The parent symbol restricted to a subset of its exponent set."""

    parent: SymbolPolynomial
    support: frozenset[Monomial]

    def __post_init__(self):
        if not self.support:
            raise ValueError("face support must be nonempty")
        parent_exps = {e for e, _ in self.parent.terms}
        extra = self.support - parent_exps
        if extra:
            raise ValueError(f"support contains exponents not in the symbol: {sorted(extra)}")

    @property
    def terms(self) -> tuple[tuple[Monomial, Fraction], ...]:
        return tuple((e, c) for e, c in self.parent.terms if e in self.support)

    def evaluate(self, point: Sequence[Fraction | int]) -> Fraction:
        return _eval_terms(self.terms, point)


# ---------------------------------------------------------------------------
# parsing

_TOKEN_RE = re.compile(r"\s*(?:(?P<num>\d+)|(?P<var>x\d+)|(?P<op>[-+*/^]))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            at = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[at]!r}", at)
        if m.group("num"):
            tokens.append(("num", m.group("num"), m.start("num")))
        elif m.group("var"):
            tokens.append(("var", m.group("var"), m.start("var")))
        elif m.group("op"):
            tokens.append(("op", m.group("op"), m.start("op")))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, tokens: list[tuple[str, str, int]], text_len: int):
        self.tokens = tokens
        self.i = 0
        self.text_len = text_len

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def advance(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def fail(self, message: str):
        pos = self.tokens[self.i][2] if self.i < len(self.tokens) else self.text_len
        raise ParseError(message, pos)

    def parse(self) -> list[tuple[dict[int, int], Fraction]]:
        terms = []
        sign = Fraction(1)
        tok = self.peek()
        if tok and tok[1] in "+-":
            self.advance()
            sign = Fraction(-1) if tok[1] == "-" else Fraction(1)
        terms.append(self.term(sign))
        while self.peek() is not None:
            kind, val, _ = self.advance()
            if kind != "op" or val not in "+-":
                self.fail(f"expected '+' or '-', got {val!r}")
            terms.append(self.term(Fraction(-1) if val == "-" else Fraction(1)))
        return terms

    def term(self, sign: Fraction) -> tuple[dict[int, int], Fraction]:
        coeff = sign
        powers: dict[int, int] = {}
        saw_factor = False
        while True:
            tok = self.peek()
            if tok is None:
                break
            kind, val, pos = tok
            if kind == "op":
                if val == "*":
                    self.advance()
                    tok = self.peek()
                    if tok is None or tok[0] == "op":
                        self.fail("expected a factor after '*'")
                    continue
                if val in "+-":
                    break
                self.fail(f"unexpected {val!r} in term")
            coeff, powers = self.factor(coeff, powers)
            saw_factor = True
        if not saw_factor:
            self.fail("empty term")
        return powers, coeff

    def factor(self, coeff: Fraction, powers: dict[int, int]):
        kind, val, pos = self.advance()
        if kind == "num":
            value = Fraction(int(val))
            tok = self.peek()
            if tok and tok[0] == "op" and tok[1] == "/":
                self.advance()
                tok = self.peek()
                if tok is None or tok[0] != "num":
                    self.fail("expected an integer denominator after '/'")
                _, dval, dpos = self.advance()
                if int(dval) == 0:
                    raise ParseError("zero denominator", dpos)
                value /= int(dval)
            return coeff * value, powers
        if kind == "var":
            index = int(val[1:])
            if index < 1:
                raise ParseError("variable indices start at x1", pos)
            exponent = 1
            tok = self.peek()
            if tok and tok[0] == "op" and tok[1] == "^":
                self.advance()
                tok = self.peek()
                if tok is None or tok[0] != "num":
                    self.fail("expected an integer exponent after '^'")
                _, eval_, epos = self.advance()
                exponent = int(eval_)
                if exponent < 1:
                    raise ParseError("exponents must be positive integers", epos)
            powers = dict(powers)
            powers[index] = powers.get(index, 0) + exponent
            return coeff, powers
        raise ParseError(f"unexpected {val!r}", pos)


def parse_polynomial(text: str, dimension: int | None = None) -> SymbolPolynomial:
    """Parse the text grammar into a canonical symbol.

    When ``dimension`` is omitted it defaults to the largest variable index
    present (and to 1 for a constant).  An explicit dimension smaller than a
    used index is rejected.
    """
    tokens = _tokenize(text)
    if not tokens:
        raise ParseError("empty input", 0)
    raw_terms = _Parser(tokens, len(text)).parse()
    max_index = max((max(p) for p, _ in raw_terms if p), default=0)
    if dimension is None:
        dimension = max(max_index, 1)
    elif dimension < max_index:
        raise ParseError(
            f"declared dimension {dimension} is smaller than used variable x{max_index}", 0)
    terms = []
    for powers, coeff in raw_terms:
        exp = tuple(powers.get(j + 1, 0) for j in range(dimension))
        terms.append((exp, coeff))
    try:
        return SymbolPolynomial.from_terms(dimension, terms)
    except ValueError as exc:
        raise ParseError(str(exc), len(text)) from exc


def poly_from_json(data: str | dict) -> SymbolPolynomial:
    """Build a symbol from ``{"d": 2, "terms": [{"exp": [4,0], "coeff": "8"}, ...]}``."""
    obj = json.loads(data) if isinstance(data, str) else data
    d = int(obj["d"])
    terms = [(tuple(int(e) for e in t["exp"]), Fraction(str(t["coeff"]))) for t in obj["terms"]]
    return SymbolPolynomial.from_terms(d, terms)


def poly_to_json(poly: SymbolPolynomial) -> dict:
    return {
        "d": poly.dimension,
        "terms": [{"exp": list(e), "coeff": _fraction_str(c)} for e, c in poly.terms],
    }


def _fraction_str(f: Fraction) -> str:
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def render(poly: SymbolPolynomial) -> str:
    """Canonical printer; ``parse_polynomial(render(p)) == p``."""
    pieces = []
    for i, (exp, coeff) in enumerate(poly.terms):
        mag = abs(coeff)
        factors = []
        if mag != 1 or not any(exp):
            factors.append(_fraction_str(mag))
        for j, e in enumerate(exp):
            if e == 1:
                factors.append(f"x{j + 1}")
            elif e > 1:
                factors.append(f"x{j + 1}^{e}")
        body = "*".join(factors)
        if i == 0:
            pieces.append(f"-{body}" if coeff < 0 else body)
        else:
            pieces.append(f"- {body}" if coeff < 0 else f"+ {body}")
    return " ".join(pieces)


# ---------------------------------------------------------------------------
# evaluation and derived data

def _eval_terms(terms, point) -> Fraction:
    total = Fraction(0)
    for exp, coeff in terms:
        value = coeff
        for x, e in zip(point, exp):
            if e:
                value *= Fraction(x) ** e
        total += value
    return total


def evaluate(poly: SymbolPolynomial, point: Sequence[Fraction | int]) -> Fraction:
    """Exact value at a rational point (0**0 = 1)."""
    if len(point) != poly.dimension:
        raise ValueError(f"point has length {len(point)}, expected {poly.dimension}")
    return _eval_terms(poly.terms, point)


def evaluate_float(poly: SymbolPolynomial, point: Sequence[float]) -> float:
    """Fast floating value for sampling-based screens."""
    total = 0.0
    for exp, coeff in poly.terms:
        value = float(coeff)
        for x, e in zip(point, exp):
            if e:
                value *= float(x) ** e
        total += value
    return total


def exponent_set(poly: SymbolPolynomial) -> frozenset[Monomial]:
    return frozenset(e for e, _ in poly.terms)


def restrict_to_face(poly: SymbolPolynomial, support: Iterable[Monomial]) -> FacePolynomial:
    return FacePolynomial(poly, frozenset(tuple(s) for s in support))


def add(p: SymbolPolynomial, q: SymbolPolynomial) -> SymbolPolynomial:
    """Sum of two symbols over the same ambient dimension (merges like terms)."""
    if p.dimension != q.dimension:
        raise ValueError("dimension mismatch")
    return SymbolPolynomial.from_terms(p.dimension, list(p.terms) + list(q.terms))


def tau_lower_bound(poly: SymbolPolynomial, enumeration: Iterable[Sequence[int]]) -> Fraction:
    """Minimum of |P(k)| over an enumerated set of lattice points.

    When the enumeration covers some K(t0) with t0 at least this minimum, the
    value is exactly the infimum of |P| over the whole integer lattice: every
    point left out has |P| > t0.
    """
    best = None
    for k in enumeration:
        v = abs(evaluate(poly, tuple(k)))
        if best is None or v < best:
            best = v
    if best is None:
        raise ValueError("empty enumeration")
    return best
