"""Exact polyhedral geometry of exponent sets.

Computes, for a finite set B of lattice points in the nonnegative orthant:

* the convex hull in both vertex and inequality form,
* the support diagram: points of B whose outward ray meets the hull only at
  themselves (the origin belongs whenever it is in B, since its ray
  degenerates to a single point),
* the vertex set of the hull of that diagram (the only exponents that matter
  for the growth of |P| at integer points),
* the full proper face list with supporting normals,
* the polar set in inequality form, and
* the compactness preconditions (origin present plus a point on every
  positive coordinate axis).

The hull algorithm is per-point vertex classification by exact LP followed by
facet enumeration over vertex subsets.  That is deliberately naive: it keeps
every coordinate an exact rational and is comfortably fast at desk scale
(d <= 4, a few dozen points).  Lower-dimensional hulls are supported; their
affine hull is emitted as equality pairs in the inequality list.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from . import lp as _lp
from ._linalg import dot, null_space, primitive, rank
from .symbol import Monomial

Vector = tuple[Fraction, ...]


@dataclass(frozen=True)
class PointSet:
    """Finite nonempty set of lattice points in N^d."""

    dimension: int
    points: frozenset[Monomial]

    def __post_init__(self):
        if self.dimension < 1:
            raise ValueError("dimension must be >= 1")
        if not self.points:
            raise ValueError("point set must be nonempty")
        for p in self.points:
            if len(p) != self.dimension:
                raise ValueError(f"point {p} does not match dimension {self.dimension}")
            if any(x < 0 for x in p):
                raise ValueError(f"points must have nonnegative coordinates: {p}")

    @classmethod
    def of(cls, points: Iterable, dimension: int | None = None) -> "PointSet":
        pts = frozenset(tuple(int(x) for x in p) for p in points)
        if not pts:
            raise ValueError("point set must be nonempty")
        if dimension is None:
            dimension = len(next(iter(pts)))
        return cls(dimension, pts)

    def sorted(self) -> list[Monomial]:
        return sorted(self.points)


@dataclass(frozen=True)
class Polyhedron:
    """V-rep and H-rep of the same polytope; inequalities are <normal, x> <= offset."""

    dimension: int
    vertices: tuple[Vector, ...]
    inequalities: tuple[tuple[Vector, Fraction], ...]

    def contains(self, point) -> bool:
        q = tuple(Fraction(x) for x in point)
        return all(dot(a, q) <= b for a, b in self.inequalities)

    def to_json(self) -> dict:
        def frac(f: Fraction) -> str:
            return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"

        return {
            "vertices": [[frac(x) for x in v] for v in self.vertices],
            "inequalities": [
                {"normal": [frac(x) for x in a], "offset": frac(b)}
                for a, b in self.inequalities
            ],
        }


@dataclass(frozen=True)
class Face:
    """A proper face of the hull: its point support, one supporting normal, offset."""

    support: frozenset[Monomial]
    normal: Vector
    offset: Fraction


@dataclass(frozen=True)
class CompactnessReport:
    zero_in_set: bool
    axis_rays: tuple[bool, ...]
    compact: bool


# ---------------------------------------------------------------------------
# hull machinery

def point_in_hull(point, points: Iterable[Monomial]) -> bool:
    """Exact membership of a rational point in the hull of lattice points (LP feasibility)."""
    pts = sorted(set(points))
    q = tuple(Fraction(x) for x in point)
    d = len(q)
    m = len(pts)
    if m == 0:
        return False
    rows = []
    for j in range(d):
        coeffs = tuple(Fraction(p[j]) for p in pts)
        rows.append((coeffs, q[j]))
        rows.append((tuple(-x for x in coeffs), -q[j]))
    ones = tuple(Fraction(1) for _ in range(m))
    rows.append((ones, Fraction(1)))
    rows.append((tuple(-x for x in ones), Fraction(-1)))
    feas = _lp.LinearProgram(
        tuple(Fraction(0) for _ in range(m)),
        tuple(rows),
        lower=tuple(Fraction(0) for _ in range(m)),
    )
    return _lp.solve_max(feas).status == "optimal"


def _hull_vertices(points: list[Monomial]) -> list[Monomial]:
    if len(points) == 1:
        return list(points)
    return [p for p in points if not point_in_hull(p, [q for q in points if q != p])]


def _hull_data(B: PointSet):
    """(vertices, facets, affine equalities, hull dimension); facets live inside the affine hull."""
    points = B.sorted()
    d = B.dimension
    verts = _hull_vertices(points)
    origin = verts[0]
    dirs = [tuple(Fraction(v[j] - origin[j]) for j in range(d)) for v in verts[1:]]
    hull_dim = rank(dirs)

    equalities: list[tuple[Vector, Fraction]] = []
    for n in null_space(dirs, d):
        equalities.append((n, dot(n, tuple(Fraction(x) for x in origin))))

    facets: list[tuple[Vector, Fraction]] = []
    if hull_dim >= 1:
        eq_normals = [n for n, _ in equalities]
        seen = set()
        fverts = [tuple(Fraction(x) for x in v) for v in verts]
        for combo in itertools.combinations(fverts, hull_dim):
            base = combo[0]
            span = [tuple(p[j] - base[j] for j in range(d)) for p in combo[1:]]
            if rank(span) != hull_dim - 1:
                continue
            normal_space = null_space(span + eq_normals, d)
            if len(normal_space) != 1:
                continue
            n = primitive(normal_space[0])
            c = dot(n, base)
            sides = [dot(n, tuple(Fraction(x) for x in p)) - c for p in points]
            if all(s <= 0 for s in sides):
                key = (n, c)
            elif all(s >= 0 for s in sides):
                n = tuple(-x for x in n)
                key = (n, -c)
            else:
                continue
            if key not in seen:
                seen.add(key)
                facets.append(key)
    return [tuple(Fraction(x) for x in v) for v in verts], facets, equalities, hull_dim


def convex_hull(B: PointSet) -> Polyhedron:
    """Exact hull of the point set: irredundant vertices plus facet inequalities.

    For hulls of dimension below d the affine hull shows up as pairs of
    opposite inequalities, so the H-rep always pins the same set as the V-rep.
    """
    verts, facets, equalities, _ = _hull_data(B)
    ineqs = list(facets)
    for n, c in equalities:
        ineqs.append((n, c))
        ineqs.append((tuple(-x for x in n), -c))
    poly = Polyhedron(B.dimension, tuple(sorted(verts)), tuple(ineqs))
    for v in poly.vertices:
        assert poly.contains(v), "vertex violates its own H-rep"
    return poly


def newton_diagram(B: PointSet) -> PointSet:
    """Points whose outward ray leaves the hull immediately.

    alpha belongs iff max{lam >= 1 : lam*alpha in conv B} equals 1.  The ray
    through the origin degenerates to a single point, so the origin always
    belongs when it is in B.
    """
    points = B.sorted()
    d = B.dimension
    members = []
    for alpha in points:
        if not any(alpha):
            members.append(alpha)
            continue
        m = len(points)
        # maximize lam subject to: sum(w_p * p) = lam * alpha, sum w = 1, w >= 0
        rows = []
        for j in range(d):
            coeffs = [Fraction(-alpha[j])] + [Fraction(p[j]) for p in points]
            rows.append((tuple(coeffs), Fraction(0)))
            rows.append((tuple(-x for x in coeffs), Fraction(0)))
        ones = [Fraction(0)] + [Fraction(1)] * m
        rows.append((tuple(ones), Fraction(1)))
        rows.append((tuple(-x for x in ones), Fraction(-1)))
        prog = _lp.LinearProgram(
            tuple([Fraction(1)] + [Fraction(0)] * m),
            tuple(rows),
            lower=tuple(Fraction(0) for _ in range(1 + m)),
        )
        sol = _lp.solve_max(prog)
        assert sol.status == "optimal", "ray program must be bounded for nonzero alpha"
        if sol.value == 1:
            members.append(alpha)
    return PointSet.of(members, B.dimension)


def vertex_set(B: PointSet) -> PointSet:
    """Vertices of the hull of the diagram; idempotent."""
    diagram = newton_diagram(B)
    return PointSet.of(_hull_vertices(diagram.sorted()), B.dimension)


def faces(A: PointSet) -> list[Face]:
    """All proper faces of conv A, as supports with one supporting normal each.

    Faces are generated by closing the facet supports under pairwise
    intersection (every proper face is an intersection of facets); the empty
    face and conv A itself are excluded.  Supporting normals of intersections
    are sums of the generating facet normals, which is exact for polytopes.
    """
    points = A.sorted()
    _, facet_list, _, hull_dim = _hull_data(A)
    if hull_dim == 0:
        return []

    def support_of(n: Vector, c: Fraction) -> frozenset[Monomial]:
        return frozenset(
            p for p in points if dot(n, tuple(Fraction(x) for x in p)) == c)

    by_support: dict[frozenset, tuple[Vector, Fraction]] = {}
    for n, c in facet_list:
        by_support.setdefault(support_of(n, c), (n, c))
    frontier = list(by_support.items())
    while frontier:
        new_frontier = []
        for sup1, (n1, c1) in frontier:
            for sup2, (n2, c2) in list(by_support.items()):
                inter = sup1 & sup2
                if not inter or inter in by_support:
                    continue
                n = tuple(a + b for a, b in zip(n1, n2))
                by_support[inter] = (n, c1 + c2)
                new_frontier.append((inter, (n, c1 + c2)))
        frontier = new_frontier
    return [
        Face(sup, n, c)
        for sup, (n, c) in sorted(by_support.items(), key=lambda kv: sorted(kv[0]))
    ]


def polar_hrep(B: PointSet) -> Polyhedron:
    """H-rep of the polar set {x : <a, x> <= 1 for a in B}; the zero row is vacuous."""
    ineqs = [
        (tuple(Fraction(x) for x in p), Fraction(1))
        for p in B.sorted() if any(p)
    ]
    return Polyhedron(B.dimension, (), tuple(ineqs))


def compactness_check(A: PointSet) -> CompactnessReport:
    """Origin membership and per-axis ray hits; both together give compactness
    (for a non-degenerate symbol, which the caller screens separately)."""
    d = A.dimension
    zero = tuple(0 for _ in range(d))
    rays = tuple(
        any(p[j] > 0 and all(p[i] == 0 for i in range(d) if i != j) for p in A.points)
        for j in range(d)
    )
    zero_in = zero in A.points
    return CompactnessReport(zero_in, rays, zero_in and all(rays))
