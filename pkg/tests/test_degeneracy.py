import random
from fractions import Fraction

from newton_widths.degeneracy import (VERDICT_DEGENERATE, VERDICT_FAILS_NECESSARY,
                                      VERDICT_LIKELY_OK, DegeneracyConfig,
                                      degeneracy_report, even_vertex_check,
                                      face_vanishing_witness, gamma_estimate)
from newton_widths.newton import Face, PointSet
from newton_widths.symbol import (SymbolPolynomial, evaluate, exponent_set,
                                  parse_polynomial)

from conftest import isotropic_symbol


def test_even_vertex_check_examples(nondeg_quartic):
    A = PointSet.of(exponent_set(nondeg_quartic), 2)
    assert even_vertex_check(A)
    odd = isotropic_symbol(3, 2)
    assert not even_vertex_check(PointSet.of(exponent_set(odd), 2))
    assert even_vertex_check(PointSet.of([(0, 0)]))


def test_gamma_estimate_positive_dominated_symbol():
    # |P| = 1 + x1^2 + x2^2 dominates every vertex monomial pointwise
    p = parse_polynomial("1 + x1^2 + x2^2")
    assert gamma_estimate(p, sample_count=100, seed=1) >= 1.0


def test_gamma_estimate_decays_for_degenerate_symbol(degen_quartic):
    # along the diagonal the ratio behaves like (2r^2+1)/r^4 and collapses
    assert gamma_estimate(degen_quartic, sample_count=150, seed=0) < 1e-4


def test_gamma_estimate_positive_for_quartic(nondeg_quartic):
    assert gamma_estimate(nondeg_quartic, sample_count=150, seed=0) > 1e-6


def test_gamma_estimate_constant_symbol():
    p = parse_polynomial("5", dimension=2)
    # vertex set is the origin alone: estimate reduces to min |P| = 5
    assert gamma_estimate(p, sample_count=20, seed=0) == 5.0


def test_gamma_estimate_scales_with_coefficient():
    base = parse_polynomial("1 + x1^2 + x2^2")
    tripled = SymbolPolynomial.from_terms(
        2, [(e, 3 * c) for e, c in base.terms])
    g1 = gamma_estimate(base, sample_count=60, seed=9)
    g3 = gamma_estimate(tripled, sample_count=60, seed=9)
    assert abs(g3 - 3 * g1) < 1e-9 * max(1.0, g3)


def test_face_witness_on_degenerate_edge(degen_quartic):
    face = Face(frozenset({(4, 0), (3, 1), (2, 2)}),
                (Fraction(1), Fraction(1)), Fraction(4))
    w = face_vanishing_witness(degen_quartic, face, sample_count=50, seed=0)
    assert w is not None
    assert w.kind == "zero"
    point = w.points[0]
    assert all(x != 0 for x in point)
    restricted_value = sum(
        c * point[0] ** e[0] * point[1] ** e[1]
        for e, c in degen_quartic.terms if e in w.support)
    assert restricted_value == 0


def test_face_witness_none_for_positive_faces(nondeg_quartic):
    # the constant vertex face is a nonzero constant
    face = Face(frozenset({(0, 0)}), (Fraction(-1), Fraction(-1)), Fraction(0))
    assert face_vanishing_witness(nondeg_quartic, face, 30, 0) is None
    p = parse_polynomial("1 + x1^2")
    sq = Face(frozenset({(2,)}), (Fraction(1),), Fraction(2))
    assert face_vanishing_witness(p, sq, 30, 0) is None


def test_report_verdicts(nondeg_quartic, nondeg_sextic, degen_quartic):
    assert degeneracy_report(nondeg_quartic).verdict == VERDICT_LIKELY_OK
    assert degeneracy_report(nondeg_sextic).verdict == VERDICT_LIKELY_OK
    rep = degeneracy_report(degen_quartic)
    assert rep.verdict == VERDICT_DEGENERATE
    assert any(w.support == frozenset({(4, 0), (3, 1), (2, 2)}) for w in rep.witnesses)


def test_report_odd_vertex():
    rep = degeneracy_report(isotropic_symbol(3, 2))
    assert rep.verdict == VERDICT_FAILS_NECESSARY
    assert not rep.even_vertices


def test_degenerate_witnesses_are_exact(degen_quartic):
    rep = degeneracy_report(degen_quartic)
    for w in rep.witnesses:
        terms = (degen_quartic.terms if w.support is None
                 else tuple(t for t in degen_quartic.terms if t[0] in w.support))
        values = []
        for point in w.points:
            assert all(x != 0 for x in point)
            v = sum(c * point[0] ** e[0] * point[1] ** e[1] for e, c in terms)
            values.append(v)
        if w.kind == "zero":
            assert values[0] == 0
        else:
            assert len(values) == 2 and (values[0] > 0) != (values[1] > 0)


def test_all_even_positive_symbols_never_degenerate():
    rng = random.Random(42)
    for _ in range(20):
        d = rng.randint(1, 2)
        terms = {(0,) * d: Fraction(rng.randint(1, 5))}
        for _ in range(rng.randint(1, 4)):
            exp = tuple(2 * rng.randint(0, 2) for _ in range(d))
            terms[exp] = Fraction(rng.randint(1, 5))
        for j in range(d):
            axis = [0] * d
            axis[j] = 2
            terms.setdefault(tuple(axis), Fraction(1))
        p = SymbolPolynomial.from_terms(d, terms.items())
        rep = degeneracy_report(p, DegeneracyConfig(sample_count=40))
        assert rep.verdict == VERDICT_LIKELY_OK, (p, rep.verdict)
