from __future__ import annotations

import itertools
from fractions import Fraction
from math import comb

import pytest

from kakeya_zn.fields import PrimeField, RationalField, build_field
from kakeya_zn.polymethod import (
    INFINITY,
    MultiPoly,
    PreconditionError,
    ZeroPolynomialError,
    build_eval_matrix,
    compose,
    from_text,
    hasse_derivative,
    hasse_expansion_holds,
    highest_degree_part,
    homogeneous_monomials,
    iterated_hasse_holds,
    multiplicity,
    projective_points,
    random_poly,
    schwartz_zippel_check,
    select_monomials,
    vanishing_poly,
)

Q = RationalField()
F2, F3 = PrimeField(2), PrimeField(3)


def P(F, n, text):
    return from_text(F, n, text)


def test_hasse_examples():
    x3 = MultiPoly.monomial(Q, (3,))
    assert hasse_derivative(x3, (2,)) == P(Q, 1, "3*x1^1")
    g = P(Q, 2, "1*x1^2*x2^1 + 2*x2^1")
    assert hasse_derivative(g, (0, 0)) == g
    assert hasse_derivative(MultiPoly.monomial(F2, (2,)), (1,)).is_zero()


def test_multiplicity_examples():
    assert multiplicity(P(Q, 2, "1*x1^2*x2^1"), (0, 0)) == 3
    assert multiplicity(MultiPoly.constant(Q, 2, Fraction(5)), (1, 1)) == 0
    assert multiplicity(P(Q, 1, "1*x1^2 + -2*x1^1 + 1"), (1,)) == 2
    assert multiplicity(MultiPoly.zero(Q, 1), (0,)) == INFINITY


def test_compose_examples():
    x2 = MultiPoly.monomial(Q, (2,))
    y1 = P(Q, 1, "1*x1^1 + 1")
    assert compose(x2, [y1]) == P(Q, 1, "1*x1^2 + 2*x1^1 + 1")
    g = P(Q, 2, "1*x1^2*x2^1 + 3*x1^1")
    assert compose(g, [MultiPoly.variable(Q, 2, 0), MultiPoly.variable(Q, 2, 1)]) == g
    t = MultiPoly.variable(Q, 1, 0)
    assert compose(P(Q, 2, "1*x1^1*x2^1"), [t, t]) == MultiPoly.monomial(Q, (2,))


def test_schwartz_zippel_examples():
    r = schwartz_zippel_check(P(F2, 2, "1*x1^1*x2^1"), F2.elements())
    assert (r.lhs, r.rhs) == (4, 4) and r.holds
    r = schwartz_zippel_check(MultiPoly.constant(F3, 2, 1), F3.elements())
    assert (r.lhs, r.rhs) == (0, 0)
    r = schwartz_zippel_check(P(F3, 1, "1*x1^3 + 2*x1^2"), F3.elements())
    assert (r.lhs, r.rhs) == (3, 3)
    with pytest.raises(ZeroPolynomialError):
        schwartz_zippel_check(MultiPoly.zero(F2, 1), [0, 1])


def test_eval_matrix_examples():
    S = projective_points(F2, 2)
    assert len(S) == 3
    E = build_eval_matrix(F2, S, [(1, 0), (0, 1)], 1)
    assert sorted(map(tuple, E.entries)) == sorted([(1, 0), (0, 1), (1, 1)]) and E.rank() == 2
    E = build_eval_matrix(F3, projective_points(F3, 2), [(0, 0)], 1)
    assert all(row == [1] for row in E.entries)
    E = build_eval_matrix(F2, [(1, 0)], [(1, 0), (0, 1)], 2)
    assert E.entries == [[1, 0], [1, 0], [0, 1]] and E.rank() == 2


def test_select_monomials_examples():
    sel = select_monomials(F2, [(1, 0)], 1, 2)
    assert sorted(sel.monomials) == [(0, 1), (1, 0)] and sel.size_bound == 1 and sel.holds
    full = select_monomials(F3, projective_points(F3, 2), 4, 2)
    assert len(full.monomials) == comb(4 + 1, 1)
    const = select_monomials(F2, [(1, 0)], 0, 1)
    assert const.monomials == [(0, 0)]
    with pytest.raises(PreconditionError):
        select_monomials(F2, [(1, 0)], 4, 2)
    assert full.count_variants["homogeneous"] == 5


def test_select_monomials_guarantee(rng):
    # no nonzero combination of the chosen monomials vanishes to order r on B
    F = F3
    pts = projective_points(F, 2)
    for _ in range(10):
        B = [pts[i] for i in sorted(set(int(i) for i in rng.integers(0, len(pts), size=2)))]
        d, r = int(rng.integers(0, 5)), 2
        if d >= r * 3:
            continue
        sel = select_monomials(F, B, d, r)
        assert sel.holds
        assert vanishing_poly(F, [(b, r) for b in B], sel.monomials) is None


def test_vanishing_poly_examples():
    v = vanishing_poly(F3, [((0,), 1)], [(0,), (1,)])
    assert v is not None and set(v.terms) == {(1,)}
    assert vanishing_poly(F3, [((0,), 1)], [(0,)]) is None
    v = vanishing_poly(Q, [((Fraction(1),), 2)], [(0,), (1,), (2,)])
    lead = v.coeff((2,))
    assert v == P(Q, 1, "1*x1^2 + -2*x1^1 + 1").scale(lead)


def test_highest_degree_part_examples():
    assert highest_degree_part(P(Q, 1, "1*x1^2 + 1*x1^1 + 1")) == MultiPoly.monomial(Q, (2,))
    assert highest_degree_part(P(Q, 2, "1*x1^2*x2^1 + 1*x1^1*x2^1 + 1*x2^1")) == MultiPoly.monomial(Q, (2, 1))
    h = P(Q, 2, "1*x1^2 + 3*x1^1*x2^1")
    assert highest_degree_part(h) == h
    with pytest.raises(ZeroPolynomialError):
        highest_degree_part(MultiPoly.zero(Q, 1))


def test_text_round_trip(rng):
    for F in (F3, Q):
        for _ in range(20):
            g = random_poly(F, 2, 3, rng)
            assert from_text(F, 2, g.to_text()) == g


def _fields():
    return [F2, F3, Q, build_field(4)]


def test_hasse_expansion_random(rng):
    for F in _fields():
        elems = F.elements() if hasattr(F, "elements") else [Fraction(x) for x in range(-3, 4)]
        for _ in range(15):
            n = int(rng.integers(1, 4))
            g = random_poly(F, n, int(rng.integers(0, 5)), rng, elements=elems)
            z = tuple(elems[int(rng.integers(len(elems)))] for _ in range(n))
            assert hasse_expansion_holds(g, z)


def test_iterated_hasse_random(rng):
    for F in _fields():
        for _ in range(20):
            n = int(rng.integers(1, 4))
            g = random_poly(F, n, 5, rng)
            i = tuple(int(x) for x in rng.integers(0, 3, size=n))
            j = tuple(int(x) for x in rng.integers(0, 3, size=n))
            assert iterated_hasse_holds(g, i, j)


def test_composition_multiplicity_random(rng):
    for F in (F2, F3, build_field(4)):
        E = F.elements()
        for _ in range(40):
            n, k = int(rng.integers(1, 3)), int(rng.integers(1, 3))
            g = random_poly(F, n, 3, rng)
            G = [random_poly(F, k, 2, rng) for _ in range(n)]
            a = tuple(E[int(rng.integers(len(E)))] for _ in range(k))
            Ga = tuple(h(a) for h in G)
            assert multiplicity(compose(g, G), a) >= multiplicity(g, Ga)


def test_schwartz_zippel_random(rng):
    for F in (F2, F3, build_field(4)):
        for _ in range(30):
            n = int(rng.integers(1, 3))
            g = random_poly(F, n, int(rng.integers(0, 6)), rng)
            if g.is_zero():
                continue
            assert schwartz_zippel_check(g, F.elements()).holds


@pytest.mark.parametrize("q", [2, 3])
@pytest.mark.parametrize("m", [1, 2, 3])
def test_eval_full_rank(q, m):
    F = PrimeField(q)
    S = projective_points(F, 2)
    for d in range(m * q):
        W = homogeneous_monomials(d, 2)
        assert build_eval_matrix(F, S, W, m).rank() == comb(d + 1, 1) == len(W)
