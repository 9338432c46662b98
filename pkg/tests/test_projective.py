from __future__ import annotations

import itertools

import numpy as np
import pytest

from kakeya_zn.projective import NotProjectiveError, apply_matrix, canonicalize, enumerate_projective, projective_size
from kakeya_zn.ring import factorize
from kakeya_zn.decoding import enumerate_gl


def brute_classes(N, n):
    """Orbits of unit scaling on vectors with a unit coordinate mod every prime power."""
    fac = factorize(N)
    units = [a for a in range(1, N) if np.gcd(a, N) == 1]
    seen, classes = set(), 0
    for v in itertools.product(range(N), repeat=n):
        if not all(any(c % p for c in v) for p in fac.primes):
            continue
        if v in seen:
            continue
        classes += 1
        for lam in units:
            seen.add(tuple(lam * c % N for c in v))
    return classes


def test_canonicalize_examples():
    assert canonicalize((1, 1), 2).coords == (1, 1)
    assert canonicalize((3, 2), 4).coords == (1, 2)
    with pytest.raises(NotProjectiveError):
        canonicalize((2, 2), 4)


def test_enumerate_examples():
    assert {u.coords for u in enumerate_projective(2, 2)} == {(1, 0), (0, 1), (1, 1)}
    assert len(enumerate_projective(4, 2)) == 6
    assert len(enumerate_projective(6, 2)) == 12


def test_size_examples():
    assert projective_size(2, 2) == 3
    assert projective_size(9, 2) == 12
    for p in (2, 3, 5, 7):
        assert projective_size(p, 1) == 1


def test_enumeration_sorted_and_unique():
    dirs = enumerate_projective(12, 2)
    coords = [u.coords for u in dirs]
    assert coords == sorted(coords)
    assert len(set(coords)) == len(coords)


@pytest.mark.parametrize("N", range(2, 13))
def test_size_matches_brute_force(N):
    for n in (1, 2):
        assert projective_size(N, n) == brute_classes(N, n) == len(enumerate_projective(N, n))


@pytest.mark.parametrize("N", [2, 3, 4, 5, 6])
def test_size_matches_brute_force_n3(N):
    assert projective_size(N, 3) == brute_classes(N, 3)


def test_unit_multiple_invariance():
    for N in (4, 6, 9, 12):
        units = [a for a in range(1, N) if np.gcd(a, N) == 1]
        for u in enumerate_projective(N, 2):
            for lam in units:
                assert canonicalize(tuple(lam * c for c in u.coords), N) == u


def test_crt_product_structure():
    for N in (6, 10, 12, 15):
        fac = factorize(N)
        expected = 1
        for q in fac.prime_powers:
            expected *= len(enumerate_projective(q, 2))
        assert len(enumerate_projective(N, 2)) == expected


@pytest.mark.parametrize("q,p,k", [(2, 2, 1), (3, 3, 1), (4, 2, 2)])
def test_gl_acts_transitively(q, p, k):
    dirs = enumerate_projective(q, 2)
    gl = enumerate_gl(2, p, k)
    u0 = dirs[0]
    reached = {apply_matrix(G, u0, q) for G in gl}
    assert reached == set(dirs)
