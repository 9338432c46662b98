from __future__ import annotations

import itertools
from collections import Counter
from math import prod

import numpy as np
import pytest

from kakeya_zn.ring import (
    InvalidModulusError,
    ResidueVector,
    StructureError,
    crt_join,
    crt_split,
    det_mod_p,
    factorize,
    inverse_mod_pk,
    random_gl,
)


def test_factorize_examples():
    assert factorize(12).factors == ((2, 2), (3, 1))
    assert factorize(7).factors == ((7, 1),)
    with pytest.raises(InvalidModulusError):
        factorize(1)


def test_factorize_descending_view():
    assert factorize(12).descending() == ((3, 1), (2, 2))


def test_factorize_multiplies_back():
    for N in list(range(2, 5000)) + [999_983, 10**6, 720720]:
        fac = factorize(N)
        assert prod(p**k for p, k in fac.factors) == N


def test_crt_split_examples():
    parts = crt_split(ResidueVector.of(6, [5]))
    assert [(c.N, c.coords) for c in parts] == [(2, (1,)), (3, (2,))]
    parts = crt_split(ResidueVector.of(6, [0]))
    assert [c.coords for c in parts] == [(0,), (0,)]
    parts = crt_split(ResidueVector.of(12, [7]))
    assert sorted((c.N, c.coords) for c in parts) == [(3, (1,)), (4, (3,))]


def test_crt_join_examples():
    assert crt_join([ResidueVector.of(2, [1]), ResidueVector.of(3, [2])]).coords == (5,)
    assert crt_join([ResidueVector.of(2, [0]), ResidueVector.of(3, [0])]).coords == (0,)
    assert crt_join([ResidueVector.of(4, [3]), ResidueVector.of(3, [1])]).coords == (7,)


def test_crt_join_count_mismatch():
    with pytest.raises(StructureError):
        crt_join([ResidueVector.of(2, [1])], factorize(6))


@pytest.mark.parametrize("N", [6, 10, 12, 30])
def test_crt_round_trip_exhaustive(N):
    for n in (1, 2):
        for x in itertools.product(range(N), repeat=n):
            v = ResidueVector.of(N, x)
            assert crt_join(crt_split(v), v.modulus) == v


def test_random_gl_trivial_group():
    for s in range(20):
        assert random_gl(1, 2, 1, s).tolist() == [[1]]


def test_random_gl_uniform_gl1_f3():
    counts = Counter(int(random_gl(1, 3, 1, s)[0, 0]) for s in range(10_000))
    assert set(counts) == {1, 2}
    sigma = (10_000 * 0.25) ** 0.5
    assert abs(counts[1] - 5000) < 3 * sigma


def test_random_gl_uniform_gl2_f2():
    counts = Counter(tuple(random_gl(2, 2, 1, s).ravel()) for s in range(10_000))
    assert len(counts) == 6
    sigma = (10_000 * (1 / 6) * (5 / 6)) ** 0.5
    for c in counts.values():
        assert abs(c - 10_000 / 6) < 3 * sigma


@pytest.mark.parametrize("p,k,n", [(2, 1, 2), (2, 3, 3), (3, 2, 2), (5, 1, 3)])
def test_random_gl_invertible_and_lifted_inverse(p, k, n):
    q = p**k
    for s in range(50):
        G = random_gl(n, p, k, s)
        assert det_mod_p(G, p) % p
        Ginv = inverse_mod_pk(G, p, k)
        assert np.array_equal((G @ Ginv) % q, np.eye(n, dtype=np.int64))


def test_random_gl_deterministic():
    assert np.array_equal(random_gl(3, 3, 2, 123), random_gl(3, 3, 2, 123))
