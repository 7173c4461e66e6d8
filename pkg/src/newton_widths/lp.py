"""Exact linear programming over the rationals.

A two-phase simplex with Bland's anti-cycling rule, pivoting in Fractions.
Problem sizes here are tiny (at most ~100 rows), and exactness is what makes
the dimension of an optimal face a well-defined integer: a floating solver
cannot decide reliably which constraints are implicit equalities of the
solution set.

On top of the solver sit the two dual programs attached to a finite point
set B in the nonnegative orthant:

* ``polar_sum_max(B)``   -- maximize x_1 + ... + x_d over the polar set
  {x : <a, x> <= 1 for every a in B};
* ``diagonal_reach(B)``  -- the largest r > 0 with r*(1,...,1) inside conv B.

The two values are exact reciprocals whenever 0 is in B and B meets every
positive coordinate axis; ``duality_check`` verifies the product is 1.
``solution_face_dimension(B)`` is the affine dimension of the optimizer set
of the polar program, computed by implicit-equality detection.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from ._linalg import dot, rank, solve_square, as_fractions
from .errors import HypothesisError

Vector = tuple[Fraction, ...]
Row = tuple[Vector, Fraction]


@dataclass(frozen=True)
class LinearProgram:
    """Maximize <objective, x> subject to rows <a_i, x> <= b_i and optional bounds."""

    objective: Vector
    rows: tuple[Row, ...]
    lower: tuple[Fraction | None, ...] | None = None
    upper: tuple[Fraction | None, ...] | None = None

    def __post_init__(self):
        n = len(self.objective)
        for a, _ in self.rows:
            if len(a) != n:
                raise ValueError("constraint row length does not match objective")
        for bounds in (self.lower, self.upper):
            if bounds is not None and len(bounds) != n:
                raise ValueError("bounds length does not match objective")
        if not self.rows and self.lower is None and self.upper is None:
            raise ValueError("need at least one constraint or bound")

    @classmethod
    def of(cls, objective, rows, lower=None, upper=None) -> "LinearProgram":
        return cls(
            as_fractions(objective),
            tuple((as_fractions(a), Fraction(b)) for a, b in rows),
            None if lower is None else tuple(None if l is None else Fraction(l) for l in lower),
            None if upper is None else tuple(None if u is None else Fraction(u) for u in upper),
        )


@dataclass(frozen=True)
class LPSolution:
    status: str  # "optimal" | "infeasible" | "unbounded"
    value: Fraction | None = None
    witness: Vector | None = None
    active_set: tuple[int, ...] = ()


@dataclass(frozen=True)
class OptimalFace:
    implicit_equalities: tuple[int, ...]
    dimension: int
    sample_vertices: tuple[Vector, ...]


# ---------------------------------------------------------------------------
# core tableau solver: maximize c*y, A y <= b, y >= 0

def _solve_standard(A: list[list[Fraction]], b: list[Fraction], c: list[Fraction]):
    m, n = len(A), len(c)
    art_of_row = {}
    ncols = n + m
    tableau: list[list[Fraction]] = []
    basis: list[int] = []
    for i in range(m):
        row = list(A[i]) + [Fraction(0)] * m + [b[i]]
        row[n + i] = Fraction(1)
        if b[i] < 0:
            row = [-x for x in row]
        tableau.append(row)
    for i in range(m):
        if tableau[i][n + i] == 1:
            basis.append(n + i)
        else:
            art = ncols
            ncols += 1
            art_of_row[i] = art
            for r in range(m):
                tableau[r].insert(-1, Fraction(1) if r == i else Fraction(0))
            basis.append(art)
    art_cols = set(art_of_row.values())

    def run_phase(costs: list[Fraction], banned: set[int]) -> str:
        # objective row holds reduced costs z_j - c_j; optimal when all >= 0
        obj = [-costs[j] for j in range(ncols)] + [Fraction(0)]
        for i, bv in enumerate(basis):
            if costs[bv] != 0:
                f = costs[bv]
                for j in range(ncols + 1):
                    obj[j] += f * tableau[i][j]
        while True:
            entering = next(
                (j for j in range(ncols) if j not in banned and obj[j] < 0), None)
            if entering is None:
                return "optimal"
            ratios = [
                (tableau[i][ncols] / tableau[i][entering], basis[i], i)
                for i in range(m) if tableau[i][entering] > 0
            ]
            if not ratios:
                return "unbounded"
            _, _, pivot_row = min(ratios)  # Bland: lowest basis index on ties
            pv = tableau[pivot_row][entering]
            tableau[pivot_row] = [x / pv for x in tableau[pivot_row]]
            for i in range(m):
                if i != pivot_row and tableau[i][entering] != 0:
                    f = tableau[i][entering]
                    tableau[i] = [x - f * y for x, y in zip(tableau[i], tableau[pivot_row])]
            if obj[entering] != 0:
                f = obj[entering]
                obj[:] = [x - f * y for x, y in zip(obj, tableau[pivot_row])]
            basis[pivot_row] = entering

    if art_cols:
        phase1_costs = [Fraction(0)] * ncols
        for a in art_cols:
            phase1_costs[a] = Fraction(-1)
        status = run_phase(phase1_costs, banned=set())
        assert status == "optimal"
        if any(basis[i] in art_cols and tableau[i][ncols] != 0 for i in range(m)):
            return "infeasible", None, None
        # drive leftover artificials out of the basis where possible
        for i in range(m):
            if basis[i] in art_cols:
                entering = next(
                    (j for j in range(n + m) if tableau[i][j] != 0), None)
                if entering is not None:
                    pv = tableau[i][entering]
                    tableau[i] = [x / pv for x in tableau[i]]
                    for r in range(m):
                        if r != i and tableau[r][entering] != 0:
                            f = tableau[r][entering]
                            tableau[r] = [x - f * y for x, y in zip(tableau[r], tableau[i])]
                    basis[i] = entering

    phase2_costs = [Fraction(0)] * ncols
    for j in range(n):
        phase2_costs[j] = c[j]
    status = run_phase(phase2_costs, banned=art_cols)
    if status == "unbounded":
        return "unbounded", None, None
    y = [Fraction(0)] * n
    for i, bv in enumerate(basis):
        if bv < n:
            y[bv] = tableau[i][ncols]
    value = sum((c[j] * y[j] for j in range(n)), Fraction(0))
    return "optimal", value, y


def solve_max(lp: LinearProgram) -> LPSolution:
    """Exact optimum, witness, and tight-constraint set for a maximization LP."""
    n = len(lp.objective)
    lower = lp.lower or (None,) * n
    upper = lp.upper or (None,) * n

    # variable translation: shifted (x = l + y) or split (x = y+ - y-)
    columns: list[tuple[int, Fraction]] = []  # (y column, sign) contributions per variable
    offsets: list[Fraction] = []
    ycols = 0
    var_map = []
    for j in range(n):
        if lower[j] is not None:
            var_map.append(("shift", ycols))
            offsets.append(lower[j])
            ycols += 1
        else:
            var_map.append(("split", ycols))
            offsets.append(Fraction(0))
            ycols += 2

    def translate_row(a: Sequence[Fraction], b: Fraction):
        coeffs = [Fraction(0)] * ycols
        rhs = Fraction(b)
        for j, aj in enumerate(a):
            if aj == 0:
                continue
            kind, col = var_map[j]
            if kind == "shift":
                coeffs[col] += aj
                rhs -= aj * offsets[j]
            else:
                coeffs[col] += aj
                coeffs[col + 1] -= aj
        return coeffs, rhs

    rows = [translate_row(a, b) for a, b in lp.rows]
    for j in range(n):
        if upper[j] is not None:
            unit = [Fraction(0)] * n
            unit[j] = Fraction(1)
            rows.append(translate_row(unit, upper[j]))
    A = [r[0] for r in rows]
    b = [r[1] for r in rows]
    cvec = [Fraction(0)] * ycols
    const = Fraction(0)
    for j, cj in enumerate(lp.objective):
        if cj == 0:
            continue
        kind, col = var_map[j]
        if kind == "shift":
            cvec[col] += cj
            const += cj * offsets[j]
        else:
            cvec[col] += cj
            cvec[col + 1] -= cj

    status, value, y = _solve_standard(A, b, cvec)
    if status != "optimal":
        return LPSolution(status)
    x = []
    for j in range(n):
        kind, col = var_map[j]
        if kind == "shift":
            x.append(offsets[j] + y[col])
        else:
            x.append(y[col] - y[col + 1])
    witness = tuple(x)
    active = tuple(i for i, (a, bb) in enumerate(lp.rows) if dot(a, witness) == bb)
    return LPSolution("optimal", value + const, witness, active)


# ---------------------------------------------------------------------------
# point-set programs

def _points_of(B) -> tuple[int, list[Monomial]]:
    """Accept a PointSet-like object or a bare iterable of integer tuples."""
    if hasattr(B, "points") and hasattr(B, "dimension"):
        pts = sorted(B.points)
        return B.dimension, pts
    pts = sorted(tuple(int(x) for x in p) for p in B)
    if not pts:
        raise ValueError("empty point set")
    return len(pts[0]), pts


Monomial = tuple[int, ...]


def _axis_gaps(d: int, points: list[Monomial]) -> list[int]:
    """Coordinate axes j (1-based) with no point a*u^j, a > 0, in the set."""
    missing = []
    for j in range(d):
        if not any(p[j] > 0 and all(p[i] == 0 for i in range(d) if i != j) for p in points):
            missing.append(j + 1)
    return missing


def polar_program(B) -> LinearProgram:
    """The LP 'maximize coordinate sum over the polar set of B'."""
    d, points = _points_of(B)
    rows = [(tuple(Fraction(x) for x in p), Fraction(1)) for p in points if any(p)]
    return LinearProgram(tuple(Fraction(1) for _ in range(d)), tuple(rows))


def polar_sum_max(B) -> Fraction:
    """Optimal value of the coordinate-sum program over the polar set of B.

    Requires a point on every positive coordinate axis; that is exactly what
    keeps the objective bounded over the (otherwise unbounded) polar set.
    """
    d, points = _points_of(B)
    missing = _axis_gaps(d, points)
    if missing:
        raise HypothesisError(
            f"polar program unbounded: no axis point on coordinate(s) {missing}")
    sol = solve_max(polar_program(B))
    if sol.status != "optimal":
        raise HypothesisError(f"polar program did not solve: {sol.status}")
    return sol.value


def diagonal_reach(B) -> Fraction:
    """Largest r > 0 with r*(1,...,1) in conv B, as an exact rational.

    Solved with barycentric weights: maximize r subject to
    sum(w_a * a) = r * 1, sum(w_a) = 1, w >= 0, r >= 0.
    """
    d, points = _points_of(B)
    zero = tuple(0 for _ in range(d))
    if zero not in points:
        raise HypothesisError("diagonal-reach program needs the origin in the set")
    missing = _axis_gaps(d, points)
    if missing:
        raise HypothesisError(
            f"diagonal-reach program needs axis point(s) on coordinate(s) {missing}")
    m = len(points)
    nvars = 1 + m  # (r, w_0..w_{m-1})
    rows = []
    for j in range(d):
        coeffs = [Fraction(-1)] + [Fraction(p[j]) for p in points]
        rows.append((tuple(coeffs), Fraction(0)))
        rows.append((tuple(-x for x in coeffs), Fraction(0)))
    ones = [Fraction(0)] + [Fraction(1)] * m
    rows.append((tuple(ones), Fraction(1)))
    rows.append((tuple(-x for x in ones), Fraction(-1)))
    lp = LinearProgram(
        tuple([Fraction(1)] + [Fraction(0)] * m),
        tuple(rows),
        lower=tuple(Fraction(0) for _ in range(nvars)),
    )
    sol = solve_max(lp)
    if sol.status != "optimal":
        raise HypothesisError(f"diagonal-reach program did not solve: {sol.status}")
    return sol.value


def optimal_face(lp: LinearProgram, value: Fraction) -> OptimalFace:
    """Implicit equalities and affine dimension of {x feasible : <c,x> = value}.

    A constraint is an implicit equality when its minimum over the optimal set
    equals its right-hand side; one auxiliary LP per constraint decides that.
    Bounds participate as ordinary rows.  The dimension is
    d - rank(implicit normals united with the objective).
    """
    n = len(lp.objective)
    all_rows: list[Row] = list(lp.rows)
    lower = lp.lower or (None,) * n
    upper = lp.upper or (None,) * n
    for j in range(n):
        unit = [Fraction(0)] * n
        unit[j] = Fraction(1)
        if upper[j] is not None:
            all_rows.append((tuple(unit), upper[j]))
        if lower[j] is not None:
            all_rows.append((tuple(-x for x in unit), -lower[j]))

    value = Fraction(value)
    eq_rows = list(all_rows)
    eq_rows.append((lp.objective, value))
    eq_rows.append((tuple(-x for x in lp.objective), -value))

    implicit = []
    for i, (a, b) in enumerate(all_rows):
        aux = LinearProgram(tuple(-x for x in a), tuple(eq_rows))
        sol = solve_max(aux)
        if sol.status == "infeasible":
            raise ValueError("stated optimal value is not attained by any feasible point")
        if sol.status == "optimal" and -sol.value == b:
            implicit.append(i)

    normals = [all_rows[i][0] for i in implicit] + [lp.objective]
    dimension = n - rank(normals)

    vertices = _face_vertices(all_rows, lp.objective, value, n)
    if not vertices:
        sol = solve_max(LinearProgram(lp.objective, tuple(eq_rows)))
        if sol.status == "optimal":
            vertices = (sol.witness,)
    return OptimalFace(tuple(implicit), dimension, tuple(vertices))


def _face_vertices(all_rows: list[Row], c: Vector, value: Fraction, n: int,
                   combo_cap: int = 20000) -> tuple[Vector, ...]:
    """Vertices of the optimal face by brute-force basic solutions (small d)."""
    candidates: list[Row] = list(all_rows) + [(c, value)]
    total = 1
    for i in range(n):
        total *= len(candidates) - i
    if total > combo_cap:
        return ()
    found = set()
    for combo in itertools.combinations(range(len(candidates)), n):
        mat = [candidates[i][0] for i in combo]
        rhs = [candidates[i][1] for i in combo]
        x = solve_square(mat, rhs)
        if x is None:
            continue
        if dot(c, x) != value:
            continue
        if all(dot(a, x) <= b for a, b in all_rows):
            found.add(x)
    return tuple(sorted(found))


def solution_face_dimension(B) -> int:
    """Affine dimension of the optimizer set of the polar coordinate-sum program."""
    d, points = _points_of(B)
    missing = _axis_gaps(d, points)
    if missing:
        raise HypothesisError(
            f"polar program unbounded: no axis point on coordinate(s) {missing}")
    lp = polar_program(B)
    sol = solve_max(lp)
    if sol.status != "optimal":
        raise HypothesisError(f"polar program did not solve: {sol.status}")
    return optimal_face(lp, sol.value).dimension


@dataclass(frozen=True)
class DualityReport:
    polar_value: Fraction
    reach: Fraction
    product_is_one: bool


def duality_check(B) -> DualityReport:
    """Solve both programs independently and verify their product is exactly 1."""
    mu = polar_sum_max(B)
    rho = diagonal_reach(B)
    return DualityReport(mu, rho, mu * rho == 1)
