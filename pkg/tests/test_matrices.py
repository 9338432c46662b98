from __future__ import annotations

import itertools
from math import comb

import numpy as np
import pytest

from kakeya_zn.fields import CyclotomicField, PrimeField
from kakeya_zn.matrices import (
    CycloMatrix,
    RingMismatchError,
    TruncMatrix,
    V_mp,
    build_M,
    build_M_rows,
    coeff_matrix,
    count_nonzero_diagonals,
    diagonal_valuation,
    eval_row,
    kronecker,
    ldu_vandermonde,
    quotient_rank_check,
    rank_bound_formula,
    rank_cyclo,
    rank_fp,
    split_basis,
    trunc_matmul,
)
from kakeya_zn.polyquot import CycloRat, CycloZPoly, NotInDomainError, TruncPoly, lucas_binom


def test_build_M_examples():
    M = build_M(2, 1, 2, 2)
    assert M.monomial().tolist() == [[[1, 0], [1, 0]], [[1, 0], [0, 1]]]
    assert build_M(1, 1, 3, 2).monomial().tolist() == [[[1, 0, 0]]]
    M2 = build_M(2, 2, 2, 2)
    r = M2.row_labels.index((1, 1))
    c = M2.col_labels.index((1, 1))
    # z^2 = 2z - 1 = 1 over F_2 modulo (z-1)^2
    assert M2.monomial()[r, c].tolist() == [1, 0]
    with pytest.raises(ValueError):
        build_M(0, 1, 1, 2)


def test_coeff_matrix_examples():
    C = coeff_matrix(build_M(2, 1, 2, 2))
    assert C.data.tolist() == [[1, 1], [0, 0], [1, 0], [0, 1]]
    Z = TruncMatrix(3, 2, np.zeros((2, 3, 2)))
    assert not coeff_matrix(Z).data.any()
    single = TruncMatrix.from_monomial(2, 2, [[[0, 1]]])
    assert coeff_matrix(single).data.tolist() == [[0], [1]]
    assert "row" in C.to_csv().splitlines()[0]


def test_rank_examples():
    assert rank_fp(np.eye(4, dtype=int), 5) == 4
    assert rank_fp(coeff_matrix(build_M(2, 1, 2, 2))) == 2
    F = CyclotomicField(2, 2)
    z = CycloRat.zeta(2, 2)
    M = CycloMatrix(2, 2, [[CycloRat.from_fraction(2, 2, 1), z], [z, z * z]])
    assert rank_cyclo(M) == 1
    with pytest.raises(ValueError):
        CycloMatrix(2, 2, [[1, 2], [3]])


def test_kronecker_examples(rng):
    A = build_M(2, 1, 3, 2)
    I1 = TruncMatrix.from_monomial(2, 3, [[[1, 0, 0]]])
    assert (kronecker(I1, A).w == A.w).all()
    K = kronecker(A, A)
    M = build_M(2, 2, 3, 2)
    assert K.row_labels == [((0,), (0,)), ((0,), (1,)), ((1,), (0,)), ((1,), (1,))] or len(K.row_labels) == 4
    assert (K.w == M.w).all()
    for _ in range(20):
        p, ell = 3, 3
        mats = [TruncMatrix(p, ell, rng.integers(0, p, size=(2, 2, ell))) for _ in range(4)]
        A1, A2, B1, B2 = mats
        lhs = trunc_matmul(kronecker(A1, A2), kronecker(B1, B2))
        rhs = kronecker(trunc_matmul(A1, B1), trunc_matmul(A2, B2))
        assert (lhs.w == rhs.w).all()
    with pytest.raises(RingMismatchError):
        kronecker(build_M(2, 1, 2, 2), build_M(2, 1, 2, 3))


def test_fact_column_dependencies_match(rng):
    # a column subset of A is dependent over F_p[z]/(z-1)^l iff it is dependent in Coeff(A):
    # checked via the kernel over F_p of Coeff, which is the F_p-span of dependencies
    for _ in range(30):
        p, ell = int(rng.choice([2, 3])), int(rng.integers(1, 4))
        A = TruncMatrix(p, ell, rng.integers(0, p, size=(3, 4, ell)))
        C = coeff_matrix(A).data
        for size in range(1, 5):
            for cols in itertools.combinations(range(4), size):
                sub_dep = rank_fp(C[:, cols], p) < size
                # brute force: some nonzero F_p combination of the chosen columns vanishes in A
                brute = False
                for coeffs in itertools.product(range(p), repeat=size):
                    if not any(coeffs):
                        continue
                    tot = sum(c * A.w[:, j, :] for c, j in zip(coeffs, cols)) % p
                    if not tot.any():
                        brute = True
                        break
                assert sub_dep == brute


def test_ldu_examples():
    L2 = ldu_vandermonde(2)
    assert L2.L == [[[1], []], [[1], [1]]]
    assert L2.D[1][1] == [-1, 1]
    L1 = ldu_vandermonde(1)
    assert L1.L == [[[1]]] and L1.D == [[[1]]]
    L3 = ldu_vandermonde(3)
    assert L3.verify()
    assert L3.D[2][2] == L3.diagonal_formula(2)


@pytest.mark.parametrize("m", range(1, 7))
def test_ldu_exact(m):
    F = ldu_vandermonde(m)
    assert F.verify()
    for j in range(m):
        assert F.D[j][j] == F.diagonal_formula(j)
        for i in range(j + 1, m):
            assert not F.D[i][j]
    inv = F.L_inverse()
    # L * L^-1 = I with integer polynomial entries
    from kakeya_zn.matrices import _zp_matmul

    prod = _zp_matmul(F.L, inv)
    assert prod == [[[1] if i == j else [] for j in range(m)] for i in range(m)]
    assert all(isinstance(c, int) for row in inv for e in row for c in e)


def test_lucas_examples():
    assert lucas_binom(5, 2, 2) == 0
    assert lucas_binom(7, 0, 3) == 1
    assert lucas_binom(10, 3, 3) == 0


def test_diagonal_valuation_examples():
    assert [diagonal_valuation(j, 2) for j in range(4)] == [0, 1, 3, 4]
    assert count_nonzero_diagonals(4, 4, 1, 2) == 3
    assert count_nonzero_diagonals(2, 2, 1, 2) == 2


def test_diagonal_valuation_matches_direct():
    # valuation of prod_{i<j}(z^j - z^i) at z = 1 over F_p, from the product's expansion
    from kakeya_zn.matrices import ldu_vandermonde as _ldu

    for p in (2, 3):
        F = _ldu(6)
        for j in range(6):
            poly = [c % p for c in F.diagonal_formula(j)]
            # count how many times (z-1) divides poly over F_p
            v = 0
            while any(poly) and sum(poly) % p == 0:
                # synthetic division by (z - 1)
                q, acc = [], 0
                for c in reversed(poly[1:]):
                    acc = (acc + c) % p
                    q.append(acc)
                poly = list(reversed(q))
                v += 1
            assert v == diagonal_valuation(j, p)


def test_rank_bound_formula_examples():
    assert rank_bound_formula(4, 1, 2) == 3
    assert rank_bound_formula(8, 1, 2) == 4
    assert rank_bound_formula(2, 1, 2) == 3  # exceeds the two available columns
    assert rank_bound_formula(1, 3, 2) == 1


@pytest.mark.parametrize("p", [2, 3, 5])
def test_rank_at_least_count(p):
    for ell in range(1, 7):
        for n in (1, 2):
            if ell**n > 40:
                continue
            C = coeff_matrix(build_M(ell, n, ell, p))
            assert rank_fp(C) >= count_nonzero_diagonals(ell, ell, n, p)


def test_restriction_to_V_keeps_rank():
    for p in (2, 3):
        for m in (2, 3, 4):
            for n in (1, 2):
                for ell in range(1, m + 1):
                    full = rank_fp(coeff_matrix(build_M(m, n, ell, p)))
                    V = V_mp(m, n, p)
                    sub = rank_fp(coeff_matrix(build_M_rows(V, m, n, ell, p)))
                    # the zero row is all ones; V misses it, so add it back when V rows span less
                    zero_row = rank_fp(coeff_matrix(build_M_rows(V + [(0,) * n], m, n, ell, p)))
                    assert zero_row == full
                    assert sub in (full, full - 1)


def test_split_basis_examples():
    S = split_basis(2, 1, 2, 2)
    assert S.sizes == [1, 1] and S.total == 2 and S.verify()
    S1 = split_basis(1, 2, 1, 3)
    assert S1.sizes == [1]
    S4 = split_basis(4, 1, 4, 2)
    assert S4.total >= 3 and S4.verify()
    with pytest.raises(ValueError):
        split_basis(2, 1, 3, 2)
    assert S4.to_dict()["count_oracle"] == 3


def test_split_basis_total_at_least_oracle():
    for p in (2, 3):
        for ell in range(1, 5):
            for n in (1, 2):
                S = split_basis(ell, n, ell, p)
                assert S.verify()
                assert S.total >= S.count_oracle


def test_eval_row_examples():
    F = PrimeField(5)
    assert eval_row(2, (0, 0), (2, 3), F) == [1, 3, 2, 6 % 5]
    assert eval_row(2, (1,), (4,), F) == [0, 1]
    K = CyclotomicField(2, 2)
    row = eval_row(2, (1,), (K.zeta(),), K)
    assert row == [K.zero(), K.one()]


def test_eval_row_matches_binomial_rule(rng):
    F = PrimeField(7)
    for _ in range(20):
        a = int(rng.integers(0, 4))
        y = int(rng.integers(0, 7))
        row = eval_row(5, (a,), (y,), F)
        assert row == [comb(j, a) * pow(y, j - a, 7) % 7 if j >= a else 0 for j in range(5)]


def _czp(p, k, c):
    return CycloZPoly(p, k, tuple(CycloRat.from_fraction(p, k, x) if not isinstance(x, CycloRat) else x for x in c))


def test_quotient_rank_examples(rng):
    one, zero = _czp(2, 2, [1]), _czp(2, 2, [0])
    rep = quotient_rank_check([[one, zero], [zero, one]], 2)
    assert rep.rank_cyclo == rep.rank_fp == 2
    rep = quotient_rank_check([[_czp(3, 1, [3])]], 1)
    assert rep.rank_cyclo == 1 and rep.rank_fp == 0 and rep.holds
    with pytest.raises(NotInDomainError):
        quotient_rank_check([[CycloZPoly(2, 1, (CycloRat.from_fraction(2, 1, __import__("fractions").Fraction(1, 2)),))]], 1)
    z = CycloRat.zeta(2, 2)
    for seed in range(100):
        r = np.random.default_rng(seed)
        A = []
        for _ in range(3):
            row = []
            for _ in range(3):
                coeffs = []
                for _ in range(2):
                    a, b = (int(x) for x in r.integers(-2, 3, size=2))
                    coeffs.append(CycloRat.from_fraction(2, 2, a) + z * CycloRat.from_fraction(2, 2, b))
                row.append(CycloZPoly(2, 2, tuple(coeffs)))
            A.append(row)
        assert quotient_rank_check(A, 2).holds
