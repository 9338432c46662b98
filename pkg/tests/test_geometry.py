from __future__ import annotations

import itertools
import math
from fractions import Fraction

import numpy as np
import pytest

from kakeya_zn.geometry import (
    GridFunction,
    InvalidPrimeError,
    Line,
    is_m_eps_kakeya,
    line_points,
    line_sum,
    maximal_function,
    maximal_profile,
    mweight,
    random_grid_function,
    slice_power_inequality,
    slice_profile,
    transform,
)
from kakeya_zn.projective import apply_matrix, canonicalize, enumerate_projective
from kakeya_zn.ring import crt_join, crt_split, factorize, inverse_mod_pk, random_gl, ResidueVector

THREE = [(0, 0), (1, 0), (0, 1)]


def brute_fstar(f: GridFunction, u) -> tuple[int, tuple]:
    """Scan every base point; the smallest base attaining the maximum wins."""
    N, n = f.N, f.n
    best, arg = -1, None
    for a in itertools.product(range(N), repeat=n):
        s = sum(f(tuple((ai + t * ui) % N for ai, ui in zip(a, u.coords))) for t in range(N))
        if s > best:
            best, arg = s, a
    return best, arg


def test_line_points_examples():
    assert line_points(Line((0, 0), canonicalize((1, 1), 2))) == [(0, 0), (1, 1)]
    assert line_points(Line((1, 0), canonicalize((1, 2), 3))) == [(1, 0), (2, 2), (0, 1)]
    assert len(set(line_points(Line((0, 0), canonicalize((1, 2), 4))))) == 4


def test_maximal_function_examples():
    f = GridFunction.from_points(2, 2, THREE)
    val, L = maximal_function(f, canonicalize((1, 1), 2))
    assert val == 2 and (0, 1) in line_points(L)
    for N, n in [(3, 2), (4, 2), (2, 3)]:
        ones = GridFunction.constant(N, n, 1)
        zero = GridFunction.zeros(N, n)
        for u in enumerate_projective(N, n):
            assert maximal_function(ones, u)[0] == N
            assert maximal_function(zero, u)[0] == 0


def test_maximal_profile_examples():
    prof = maximal_profile(GridFunction.from_points(2, 2, THREE))
    assert list(prof.values) == [2, 2, 2]
    g = GridFunction(3, 1, [2, 0, 5])
    assert list(maximal_profile(g).values) == [7]
    prof = maximal_profile(GridFunction.from_points(2, 2, [(0, 0), (1, 0)]))
    assert prof.value(canonicalize((1, 0), 2)) == 2
    assert prof.value(canonicalize((0, 1), 2)) == 1
    assert prof.value(canonicalize((1, 1), 2)) == 1


@pytest.mark.parametrize("N,n", [(2, 2), (3, 2), (4, 2), (5, 2), (6, 2), (8, 2), (9, 2), (2, 3), (3, 3)])
def test_maximal_profile_matches_brute_force(N, n, rng):
    for _ in range(3):
        f = random_grid_function(N, n, rng)
        prof = maximal_profile(f)
        for u, v, L in prof.items():
            bv, base = brute_fstar(f, u)
            assert v == bv
            assert L.base == base


def test_line_sum_injective(rng):
    for N in (4, 6, 12):
        f = random_grid_function(N, 2, rng)
        for u in enumerate_projective(N, 2):
            a = tuple(int(x) for x in rng.integers(0, N, 2))
            L = Line(a, u)
            pts = line_points(L)
            assert len(set(pts)) == N
            assert line_sum(f, L) == sum(f(x) for x in pts)


def test_crt_line_product():
    for N in (6, 10, 12):
        fac = factorize(N)
        for u in enumerate_projective(N, 2):
            L = Line((1, 2), u)
            pts = set(line_points(L))
            comps = []
            for q in fac.prime_powers:
                Lq = Line(tuple(c % q for c in L.base), canonicalize(tuple(c % q for c in u.coords), q))
                comps.append(line_points(Lq))
            joined = {
                crt_join([ResidueVector.of(q, x) for q, x in zip(fac.prime_powers, combo)]).coords
                for combo in itertools.product(*comps)
            }
            assert joined == pts


def test_slice_profile_examples():
    f = GridFunction.constant(6, 2, 1)
    L = Line((0, 0), canonicalize((1, 1), 6))
    sp = slice_profile(f, L, 2)
    assert sp.values == [2, 2, 2]
    assert sp.b_ge(1) == sp.b_ge(2) == 3
    sp0 = slice_profile(GridFunction.zeros(6, 2), L, 2)
    assert sp0.values == [0, 0, 0] and sp0.b_ge(1) == 0
    ind = GridFunction.from_points(6, 2, line_points(L))
    sp3 = slice_profile(ind, L, 3)
    assert sp3.values == [3, 3] and sp3.b_ge(3) == 2
    with pytest.raises(InvalidPrimeError):
        slice_profile(f, L, 5)


def test_slice_profile_sums_to_line_sum(rng):
    for N, p in [(6, 2), (6, 3), (12, 2), (12, 3), (10, 5)]:
        f = random_grid_function(N, 2, rng)
        for u in enumerate_projective(N, 2)[:6]:
            L = Line((0, 1), u)
            sp = slice_profile(f, L, p)
            assert sum(i * sp.b_eq(i) for i in range(1, sp.w + 1)) == line_sum(f, L)
            bs = [sp.b_ge(i) for i in range(1, sp.w + 1)]
            assert bs == sorted(bs, reverse=True)


def test_mweight_examples(rng):
    for N in (2, 4, 8, 9):
        f = random_grid_function(N, 2, rng)
        p = factorize(N).primes[0]
        assert mweight(f, p) == maximal_profile(f).wstar
    assert mweight(GridFunction.constant(6, 2, 1), 2) == 2
    for _ in range(20):
        S = random_grid_function(6, 2, rng, max_value=1)
        assert mweight(S, 2) <= 2


def test_is_m_eps_kakeya_examples():
    full = GridFunction.constant(3, 2, 1)
    assert is_m_eps_kakeya(full, 3, 1)
    S = GridFunction.from_points(2, 2, THREE)
    assert is_m_eps_kakeya(S, 2, 1)
    assert not is_m_eps_kakeya(S, 3, Fraction(1, 10))


@pytest.mark.parametrize("N", [2, 3, 4, 6])
def test_slice_power_inequality(N, rng):
    p = factorize(N).descending()[0][0]
    for _ in range(250):
        f = random_grid_function(N, 2, rng)
        for row in slice_power_inequality(f, p):
            assert row.holds


def test_gl_invariance(rng):
    for p, k in [(2, 1), (3, 1), (2, 2)]:
        q = p**k
        for s in range(5):
            f = random_grid_function(q, 2, rng)
            G = random_gl(2, p, k, s)
            Ginv = inverse_mod_pk(G, p, k)
            g = transform(f, Ginv)  # g(x) = f(G^-1 x)
            pf, pg = maximal_profile(f), maximal_profile(g)
            for u in enumerate_projective(q, 2):
                assert pg.value(apply_matrix(G, u, q)) == pf.value(u)


def test_json_round_trip(rng):
    f = random_grid_function(5, 2, rng)
    assert GridFunction.from_json(f.to_json()) == f
    S = GridFunction.from_dict({"N": 2, "n": 2, "points": THREE})
    assert S.values.tolist() == [1, 1, 1, 0]
    assert f.offset((1, 2)) == 1 * 5 + 2


def test_invalid_grid():
    with pytest.raises(ValueError):
        GridFunction(2, 2, [1, -1, 0, 0])
    with pytest.raises(ValueError):
        GridFunction.from_dict({"N": 2})
