"""Wire formats: rational strings, JSON report fragments, CSV tables.

Rationals always cross the wire as decimal-free strings "p" or "p/q" so that
exactness survives serialization; floats stay native JSON numbers (their
shortest round-trip representation preserves the exact double).
"""

from __future__ import annotations

from fractions import Fraction


def fraction_str(f: Fraction) -> str:
    f = Fraction(f)
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def parse_fraction(text: str) -> Fraction:
    return Fraction(text.strip())


def jsonable(value):
    """Recursively convert Fractions and tuples for json.dumps."""
    if isinstance(value, Fraction):
        return fraction_str(value)
    if isinstance(value, dict):
        return {k: jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    if isinstance(value, frozenset):
        return [jsonable(v) for v in sorted(value)]
    return value
