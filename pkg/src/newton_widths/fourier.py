"""Finite trigonometric polynomials and the operator-side inequality checks.

A trigonometric polynomial is a finite map from integer frequency vectors to
complex coefficients.  The symbol P acts mode by mode as the multiplier
P(k), so the induced seminorm is the weighted l2 norm with weights |P(k)|
(Parseval).  The spectral truncation S_t keeps the modes with |P(k)| <= t.

Coefficients are floating complex numbers, but every membership decision
|P(k)| <= t is made on exact rationals: the inequalities checked here
tolerate rounding, set membership at the boundary does not.

The checks return slacks for the two standard inequalities:

* approximation (Jackson direction):  ||f - S_t f||_2 <= (1/t) ||f||_W;
* inverse (Bernstein direction):      ||f||_W <= t ||f||_2  when the
  spectrum of f lies in K(t).
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional

from .symbol import Monomial, SymbolPolynomial, evaluate, exponent_set
from .newton import PointSet, vertex_set

_REL_TOL = 1e-12


@dataclass(frozen=True)
class TrigPoly:
    """Finitely supported frequency-to-coefficient map; zero modes absent."""

    dimension: int
    coefficients: tuple[tuple[Monomial, complex], ...]

    def __post_init__(self):
        seen = set()
        for k, c in self.coefficients:
            if len(k) != self.dimension:
                raise ValueError(f"mode {k} does not match dimension {self.dimension}")
            if c == 0:
                raise ValueError("zero coefficients must be dropped")
            if k in seen:
                raise ValueError(f"duplicate mode {k}")
            seen.add(k)

    @classmethod
    def of(cls, dimension: int, modes: Mapping[Monomial, complex]) -> "TrigPoly":
        cleaned = tuple(sorted(
            ((tuple(int(x) for x in k), complex(c)) for k, c in modes.items() if c != 0),
            key=lambda kc: kc[0]))
        return cls(dimension, cleaned)

    def as_dict(self) -> dict[Monomial, complex]:
        return dict(self.coefficients)

    @property
    def support(self) -> frozenset[Monomial]:
        return frozenset(k for k, _ in self.coefficients)

    def to_json(self) -> dict:
        return {
            "d": self.dimension,
            "modes": [
                {"k": list(k), "re": c.real, "im": c.imag}
                for k, c in self.coefficients
            ],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "TrigPoly":
        return cls.of(int(obj["d"]),
                      {tuple(int(x) for x in m["k"]): complex(m["re"], m["im"])
                       for m in obj["modes"]})


@dataclass(frozen=True)
class SeminormValue:
    value: float
    decomposition: Optional[tuple[tuple[Monomial, float], ...]] = None


def _symbol_values(poly: SymbolPolynomial, modes) -> dict[Monomial, Fraction]:
    return {k: evaluate(poly, k) for k in modes}


def apply_symbol(poly: SymbolPolynomial, f: TrigPoly) -> TrigPoly:
    """Multiplier action: coefficient at k becomes P(k) * f_hat(k).

    Modes where P(k) is exactly zero are dropped.
    """
    if poly.dimension != f.dimension:
        raise ValueError("dimension mismatch between symbol and trigonometric polynomial")
    out = {}
    for k, c in f.coefficients:
        pk = evaluate(poly, k)
        if pk != 0:
            out[k] = float(pk) * c
    return TrigPoly.of(f.dimension, out)


def l2_norm(f: TrigPoly) -> float:
    return math.sqrt(sum(abs(c) ** 2 for _, c in f.coefficients))


def seminorm_w(poly: SymbolPolynomial, f: TrigPoly,
               decompose: bool = False) -> SeminormValue:
    """Parseval form of the operator seminorm: sqrt(sum |P(k)|^2 |f_hat(k)|^2)."""
    if poly.dimension != f.dimension:
        raise ValueError("dimension mismatch between symbol and trigonometric polynomial")
    contributions = []
    total = 0.0
    for k, c in f.coefficients:
        w = float(evaluate(poly, k)) ** 2 * abs(c) ** 2
        total += w
        if decompose:
            contributions.append((k, w))
    return SeminormValue(math.sqrt(total), tuple(contributions) if decompose else None)


def truncate(poly: SymbolPolynomial, f: TrigPoly, t: Fraction | int) -> TrigPoly:
    """Spectral truncation S_t: keep exactly the modes with |P(k)| <= t.

    The comparison is exact per mode; no lattice enumeration is needed since
    the support is finite.
    """
    t = Fraction(t)
    kept = {k: c for k, c in f.coefficients if abs(evaluate(poly, k)) <= t}
    return TrigPoly.of(f.dimension, kept)


def _tau_of(poly: SymbolPolynomial) -> Fraction:
    from . import lattice as _lattice
    return _lattice.sorted_symbol_values(poly, 0)[0]


def jackson_check(poly: SymbolPolynomial, f: TrigPoly, t: Fraction | int,
                  tau: Fraction | None = None) -> float:
    """Slack of the approximation inequality: (1/t) ||f||_W - ||f - S_t f||_2.

    Requires t above the lattice infimum of |P|; computed exactly when not
    supplied.  The contract is slack >= -1e-12 * (1 + ||f||_W).
    """
    t = Fraction(t)
    if tau is None:
        tau = _tau_of(poly)
    if t <= tau:
        raise ValueError(f"need t > tau = {tau}, got t = {t}")
    kept = frozenset(k for k, _ in f.coefficients if abs(evaluate(poly, k)) <= t)
    residual_sq = sum(abs(c) ** 2 for k, c in f.coefficients if k not in kept)
    w = seminorm_w(poly, f).value
    return float(1 / t) * w - math.sqrt(residual_sq)


def bernstein_check(poly: SymbolPolynomial, f: TrigPoly, t: Fraction | int,
                    tau: Fraction | None = None) -> float:
    """Slack of the inverse inequality: t ||f||_2 - ||f||_W for f in V(t).

    Rejects inputs whose spectrum leaves K(t), naming the offending mode.
    """
    t = Fraction(t)
    if tau is None:
        tau = _tau_of(poly)
    if t <= tau:
        raise ValueError(f"need t > tau = {tau}, got t = {t}")
    for k, _ in f.coefficients:
        if abs(evaluate(poly, k)) > t:
            raise ValueError(f"spectrum leaves K(t): |P({k})| = {abs(evaluate(poly, k))} > {t}")
    return float(t) * l2_norm(f) - seminorm_w(poly, f).value


@dataclass(frozen=True)
class EquivalenceRecord:
    """Norm-equivalence data over the vertex monomials of the symbol.

    ``ratio_bounds`` are the exact min and max of
    r(k) = |P(k)|^2 / max vertex monomial squared over the support, and the
    weighted mean w_sq / modewise_max_sq provably lies between them.
    Vacuous supports (zero polynomial, or all vertex monomials vanishing)
    are flagged degenerate and carry no bounds.
    """

    w_sq: float
    vertex_sum: float
    vertex_max: float
    modewise_max_sq: float
    ratio_bounds: Optional[tuple[Fraction, Fraction]]
    degenerate: bool


def equivalence_ratios(poly: SymbolPolynomial, f: TrigPoly) -> EquivalenceRecord:
    """Compare the operator seminorm with the vertex-monomial seminorms.

    Computes ||f||_W^2, the sum and max over vertex exponents a of
    ||D^a f||^2 = sum_k |k^a|^2 |f_hat(k)|^2, and the per-mode-max version
    sum_k max_a |k^a|^2 |f_hat(k)|^2, together with exact bounds for their
    ratios.
    """
    theta = sorted(vertex_set(PointSet.of(exponent_set(poly), poly.dimension)).points)
    w_sq = 0.0
    per_vertex = {a: 0.0 for a in theta}
    modewise = 0.0
    lo = hi = None
    any_meaningful = False
    for k, c in f.coefficients:
        csq = abs(c) ** 2
        pk = evaluate(poly, k)
        w_sq += float(pk) ** 2 * csq
        best = 0
        for a in theta:
            v = 1
            for x, e in zip(k, a):
                if e:
                    v *= x ** e
            v *= v
            per_vertex[a] += float(v) * csq
            if v > best:
                best = v
        modewise += float(best) * csq
        if best > 0:
            any_meaningful = True
            r = pk * pk / best
            if lo is None or r < lo:
                lo = r
            if hi is None or r > hi:
                hi = r

    if not f.coefficients or not any_meaningful:
        return EquivalenceRecord(w_sq, 0.0, 0.0, modewise, None, True)

    vertex_values = list(per_vertex.values())
    record = EquivalenceRecord(
        w_sq=w_sq,
        vertex_sum=sum(vertex_values),
        vertex_max=max(vertex_values),
        modewise_max_sq=modewise,
        ratio_bounds=(lo, hi),
        degenerate=False,
    )
    if modewise > 0:
        mean = w_sq / modewise
        tol = 1e-9 * (1.0 + float(hi))
        if not (float(lo) - tol <= mean <= float(hi) + tol):
            raise ArithmeticError(
                f"weighted ratio {mean} escaped exact bounds [{lo}, {hi}]")
    return record


def random_trig(seed: int, d: int, support_size: int, coeff_scale: float,
                box: int) -> TrigPoly:
    """Deterministic sparse sample with distinct modes in the sup-norm box."""
    volume = (2 * box + 1) ** d
    if support_size > volume:
        raise ValueError(f"support size {support_size} exceeds box volume {volume}")
    rng = random.Random(seed)
    modes: dict[Monomial, complex] = {}
    while len(modes) < support_size:
        k = tuple(rng.randint(-box, box) for _ in range(d))
        if k in modes:
            continue
        c = complex(rng.gauss(0.0, 1.0), rng.gauss(0.0, 1.0)) * coeff_scale
        if c != 0:
            modes[k] = c
    return TrigPoly.of(d, modes)
