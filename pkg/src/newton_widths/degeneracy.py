"""Screens for the non-degeneracy of a symbol.

A symbol is non-degenerate when neither it nor any of its face restrictions
vanishes off the coordinate planes; equivalently |P(x)| is bounded below by a
positive multiple of the largest vertex monomial.  Full certification is a
real-algebraic positivity question and out of scope, so the report makes its
epistemic status explicit through a small verdict lattice:

* ``degenerate``                -- an exactly verified witness exists: a
  rational point off the coordinate planes where some face polynomial is
  exactly zero, or two such points with opposite exact signs;
* ``fails_necessary_condition`` -- some vertex of the support diagram has an
  odd coordinate (non-degeneracy forces all-even vertices);
* ``likely_nondegenerate``      -- the necessary condition holds, the sampled
  ratio inf |P| / max vertex monomial stays above a threshold, and no witness
  was found;
* ``inconclusive``              -- anything else.

Sampling is seeded and deterministic.  Witness refinement converts floating
hints into exact rational certificates before anything is reported.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional

from .newton import Face, PointSet, faces, vertex_set
from .symbol import (FacePolynomial, Monomial, SymbolPolynomial, evaluate_float,
                     exponent_set, restrict_to_face)

VERDICT_DEGENERATE = "degenerate"
VERDICT_FAILS_NECESSARY = "fails_necessary_condition"
VERDICT_LIKELY_OK = "likely_nondegenerate"
VERDICT_INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class DegeneracyConfig:
    threshold: float = 1e-6
    radii: tuple[float, ...] = (1.0, 10.0, 100.0, 1000.0)
    sample_count: int = 200
    seed: int = 0
    refine_steps: int = 50


@dataclass(frozen=True)
class VanishingWitness:
    """Exact certificate: a zero, or a sign change, off the coordinate planes.

    ``support`` is None when the witness concerns the full symbol rather than
    a face restriction.  ``points`` holds one rational point for a zero and
    two for a sign change; ``values`` are the exact evaluations there.
    """

    support: Optional[frozenset[Monomial]]
    kind: str  # "zero" | "sign_change"
    points: tuple[tuple[Fraction, ...], ...]
    values: tuple[Fraction, ...]


@dataclass(frozen=True)
class DegeneracyReport:
    even_vertices: bool
    gamma_hat: float
    witnesses: tuple[VanishingWitness, ...]
    verdict: str
    vertex_points: tuple[Monomial, ...] = ()


def even_vertex_check(A: PointSet) -> bool:
    """All vertices of the support diagram have all-even coordinates
    (necessary for non-degeneracy)."""
    return all(all(x % 2 == 0 for x in v) for v in vertex_set(A).points)


# ---------------------------------------------------------------------------
# sampled ratio estimate

def _ratio(poly: SymbolPolynomial, theta: list[Monomial], x: tuple[float, ...]) -> float:
    den = max(abs(math.prod(xj ** e for xj, e in zip(x, a))) for a in theta)
    num = abs(evaluate_float(poly, x))
    if den == 0.0:
        return math.inf
    return num / den


def gamma_estimate(poly: SymbolPolynomial,
                   sample_count: int = 200,
                   seed: int = 0,
                   radii: tuple[float, ...] = (1.0, 10.0, 100.0, 1000.0),
                   refine_steps: int = 50) -> float:
    """Sampled infimum of |P(x)| / max vertex monomial, an upper bound on the
    true ratio constant.

    Samples seeded sphere directions at several radii, all sign patterns of
    the diagonal direction, then refines around the smallest ratio by
    multiplicative coordinate descent.  Points on coordinate planes are
    skipped.  When the vertex set is just the origin the denominator is
    constant and the estimate is simply min |P| over the samples.
    """
    d = poly.dimension
    theta = sorted(vertex_set(PointSet.of(exponent_set(poly), d)).points)
    rng = random.Random(seed)

    def candidate_points():
        for signs in itertools.product((1.0, -1.0), repeat=d):
            base = tuple(s / math.sqrt(d) for s in signs)
            for r in radii:
                yield tuple(r * b for b in base)
        for _ in range(max(sample_count, 1)):
            v = [rng.gauss(0.0, 1.0) for _ in range(d)]
            norm = math.sqrt(sum(x * x for x in v))
            if norm == 0.0 or any(abs(x) / norm < 1e-9 for x in v):
                continue
            unit = tuple(x / norm for x in v)
            for r in radii:
                yield tuple(r * u for u in unit)

    best = math.inf
    best_point = None
    for x in candidate_points():
        if any(xj == 0.0 for xj in x):
            continue
        r = _ratio(poly, theta, x)
        if r < best:
            best, best_point = r, x

    if best_point is not None:
        x = list(best_point)
        step = 0.5
        for it in range(refine_steps):
            improved = False
            for j in range(d):
                for factor in (1.0 + step, 1.0 - step):
                    trial = list(x)
                    trial[j] *= factor
                    if trial[j] == 0.0:
                        continue
                    r = _ratio(poly, theta, tuple(trial))
                    if r < best:
                        best, x = r, trial
                        improved = True
            if not improved:
                step *= 0.5
                if step < 1e-9:
                    break
    return best


# ---------------------------------------------------------------------------
# witness search

_GRID_VALUES = (
    Fraction(1), Fraction(-1), Fraction(2), Fraction(-2),
    Fraction(1, 2), Fraction(-1, 2), Fraction(3), Fraction(-3),
    Fraction(1, 3), Fraction(-1, 3), Fraction(3, 2), Fraction(-3, 2),
)


def _exact_eval(terms, point) -> Fraction:
    total = Fraction(0)
    for exp, coeff in terms:
        v = coeff
        for x, e in zip(point, exp):
            if e:
                v *= x ** e
        total += v
    return total


def _search_terms(poly: SymbolPolynomial, support: Optional[frozenset[Monomial]],
                  terms, sample_count: int, seed: int) -> Optional[VanishingWitness]:
    """Hunt for an exact zero or a certified sign change of the given term list."""
    d = poly.dimension
    grid = _GRID_VALUES if d <= 3 else _GRID_VALUES[:6]
    pos_pt = neg_pt = None
    pos_val = neg_val = None
    for point in itertools.product(grid, repeat=d):
        v = _exact_eval(terms, point)
        if v == 0:
            return VanishingWitness(support, "zero", (point,), (Fraction(0),))
        if v > 0 and pos_pt is None:
            pos_pt, pos_val = point, v
        elif v < 0 and neg_pt is None:
            neg_pt, neg_val = point, v
        if pos_pt is not None and neg_pt is not None:
            return VanishingWitness(
                support, "sign_change", (neg_pt, pos_pt), (neg_val, pos_val))

    rng = random.Random(seed)

    def random_rational_point():
        coords = []
        for _ in range(d):
            mag = Fraction(rng.randint(1, 64), rng.randint(1, 64))
            coords.append(mag if rng.random() < 0.5 else -mag)
        return tuple(coords)

    reference = _exact_eval(terms, pos_pt or neg_pt or (Fraction(1),) * d)
    for _ in range(max(sample_count, 1)):
        point = random_rational_point()
        v = _exact_eval(terms, point)
        if v == 0:
            return VanishingWitness(support, "zero", (point,), (Fraction(0),))
        if reference != 0 and (v > 0) != (reference > 0):
            a, av = (point, v) if v < 0 else (pos_pt or point, reference)
            b, bv = (pos_pt, reference) if v < 0 else (point, v)
            if a is not None and b is not None:
                return VanishingWitness(support, "sign_change", (a, b), (av, bv))

    # touching zeros (no sign change): minimize |value| in floats, then snap
    # the minimizer to small-denominator rationals and confirm exactly
    float_terms = [(e, float(c)) for e, c in terms]

    def fval(x):
        total = 0.0
        for exp, coeff in float_terms:
            v = coeff
            for xj, e in zip(x, exp):
                if e:
                    v *= xj ** e
            total += v
        return total

    best_x, best_v = None, math.inf
    for _ in range(max(sample_count, 1)):
        x = [rng.uniform(0.2, 2.5) * (1 if rng.random() < 0.5 else -1) for _ in range(d)]
        v = abs(fval(x))
        if v < best_v:
            best_v, best_x = v, x
    if best_x is not None:
        step = 0.5
        for _ in range(200):
            improved = False
            for j in range(d):
                for factor in (1.0 + step, 1.0 - step):
                    trial = list(best_x)
                    trial[j] *= factor
                    if trial[j] == 0.0:
                        continue
                    v = abs(fval(trial))
                    if v < best_v:
                        best_v, best_x = v, trial
                        improved = True
            if not improved:
                step *= 0.5
                if step < 1e-12:
                    break
        scale = max(abs(float(c)) for _, c in terms)
        if best_v <= 1e-7 * max(scale, 1.0):
            for q in (1, 2, 3, 4, 6, 8, 12, 16, 24, 32):
                snapped = tuple(Fraction(x).limit_denominator(q) for x in best_x)
                if any(x == 0 for x in snapped):
                    continue
                if _exact_eval(terms, snapped) == 0:
                    return VanishingWitness(support, "zero", (snapped,), (Fraction(0),))
    return None


def face_vanishing_witness(poly: SymbolPolynomial, face: Face,
                           sample_count: int = 200, seed: int = 0
                           ) -> Optional[VanishingWitness]:
    """Witness that the face restriction vanishes off the coordinate planes.

    Single-exponent faces are monomials times a nonzero coefficient and can
    never vanish there, so they are skipped outright.
    """
    restricted = restrict_to_face(poly, face.support)
    if len(face.support) == 1:
        return None
    return _search_terms(poly, face.support, restricted.terms, sample_count, seed)


def degeneracy_report(poly: SymbolPolynomial,
                      config: DegeneracyConfig | None = None) -> DegeneracyReport:
    """Combine the even-vertex check, the sampled ratio, and the witness hunt."""
    cfg = config or DegeneracyConfig()
    d = poly.dimension
    A = PointSet.of(exponent_set(poly), d)
    theta = vertex_set(A)
    even = all(all(x % 2 == 0 for x in v) for v in theta.points)
    gamma = gamma_estimate(poly, cfg.sample_count, cfg.seed, cfg.radii, cfg.refine_steps)

    if not even:
        return DegeneracyReport(False, gamma, (), VERDICT_FAILS_NECESSARY,
                                tuple(theta.sorted()))

    witnesses = []
    full = _search_terms(poly, None, poly.terms, cfg.sample_count, cfg.seed)
    if full is not None:
        witnesses.append(full)
    for i, face in enumerate(faces(A)):
        if len(face.support) == 1:
            continue
        w = face_vanishing_witness(poly, face, cfg.sample_count, cfg.seed + 1 + i)
        if w is not None:
            witnesses.append(w)

    if witnesses:
        verdict = VERDICT_DEGENERATE
    elif gamma > cfg.threshold:
        verdict = VERDICT_LIKELY_OK
    else:
        verdict = VERDICT_INCONCLUSIVE
    return DegeneracyReport(True, gamma, tuple(witnesses), verdict, tuple(theta.sorted()))
