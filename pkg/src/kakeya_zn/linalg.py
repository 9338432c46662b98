"""Exact Gaussian elimination over any field from :mod:`kakeya_zn.fields`, plus a numpy fast path mod p."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass
class RREF:
    rows: list
    pivots: list

    @property
    def rank(self) -> int:
        return len(self.pivots)


def rref(F, matrix) -> RREF:
    """Reduced row echelon form; returns the nonzero rows and pivot columns."""
    A = [list(r) for r in matrix]
    if not A:
        return RREF([], [])
    ncols = len(A[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(A)) if not F.is_zero(A[i][c])), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = F.inv(A[r][c])
        A[r] = [F.mul(inv, x) for x in A[r]]
        for i in range(len(A)):
            if i != r and not F.is_zero(A[i][c]):
                fac = A[i][c]
                A[i] = [F.sub(x, F.mul(fac, y)) for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == len(A):
            break
    return RREF(A[:r], pivots)


def rank(F, matrix) -> int:
    return rref(F, matrix).rank


def nullspace(F, matrix, ncols: int | None = None) -> list:
    """Basis of {x : A x = 0}."""
    if not matrix:
        if ncols is None:
            raise ValueError("ncols is required for an empty matrix")
        return [[F.one() if i == j else F.zero() for i in range(ncols)] for j in range(ncols)]
    ncols = len(matrix[0])
    R = rref(F, matrix)
    free = [c for c in range(ncols) if c not in R.pivots]
    basis = []
    for fc in free:
        v = [F.zero()] * ncols
        v[fc] = F.one()
        for row, pc in zip(R.rows, R.pivots):
            v[pc] = F.neg(row[fc])
        basis.append(v)
    return basis


class SingularSystemError(ValueError):
    pass


def solve(F, A, b) -> list:
    """Unique solution of A x = b; raises if A is not square and invertible."""
    n = len(A)
    if any(len(r) != n for r in A):
        raise SingularSystemError("system is not square")
    aug = [list(r) + [bi] for r, bi in zip(A, b)]
    R = rref(F, aug)
    if R.pivots != list(range(n)):
        raise SingularSystemError("system is singular")
    return [row[n] for row in R.rows]


def solve_many(F, A, B) -> list:
    """Solve A X = B column by column in one elimination; returns X as rows."""
    n = len(A)
    m = len(B[0]) if B else 0
    aug = [list(r) + list(br) for r, br in zip(A, B)]
    R = rref(F, aug)
    if R.pivots[:n] != list(range(n)) or len(R.pivots) != n:
        raise SingularSystemError("system is singular")
    return [row[n : n + m] for row in R.rows]


def inverse(F, A) -> list:
    n = len(A)
    eye = [[F.one() if i == j else F.zero() for j in range(n)] for i in range(n)]
    return solve_many(F, A, eye)


def matmul(F, A, B) -> list:
    if not A:
        return []
    inner = len(B)
    cols = len(B[0]) if B else 0
    out = []
    for row in A:
        new = []
        for j in range(cols):
            acc = F.zero()
            for t in range(inner):
                if not F.is_zero(row[t]) and not F.is_zero(B[t][j]):
                    acc = F.add(acc, F.mul(row[t], B[t][j]))
            new.append(acc)
        out.append(new)
    return out


# --- numpy fast path over F_p ------------------------------------------------------------


def rref_mod_p(M, p: int) -> tuple[np.ndarray, list]:
    """Row echelon reduction over F_p with numpy; returns (reduced rows, pivot columns)."""
    A = np.array(M, dtype=np.int64) % p
    if A.ndim != 2 or A.size == 0:
        return A.reshape(0, A.shape[-1] if A.ndim == 2 else 0), []
    inv_table = np.zeros(p, dtype=np.int64)
    for a in range(1, p):
        inv_table[a] = pow(a, -1, p)
    rows, cols = A.shape
    r = 0
    pivots = []
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        A[r] = (A[r] * inv_table[A[r, c]]) % p
        col = A[:, c].copy()
        col[r] = 0
        nzr = np.flatnonzero(col)
        if nzr.size:
            A[nzr] = (A[nzr] - np.outer(col[nzr], A[r])) % p
        pivots.append(c)
        r += 1
    return A[:r], pivots


def rank_mod_p(M, p: int) -> int:
    return len(rref_mod_p(M, p)[1])


class EchelonBasis:
    """Incrementally grown row basis over F_p; ``add`` reports whether a row was new."""

    def __init__(self, p: int, ncols: int):
        self.p = p
        self.ncols = ncols
        self.rows: list[np.ndarray] = []
        self.pivots: list[int] = []
        self._inv = [0] + [pow(a, -1, p) for a in range(1, p)]

    def __len__(self):
        return len(self.rows)

    def reduce(self, row) -> np.ndarray:
        v = np.asarray(row, dtype=np.int64) % self.p
        for b, c in zip(self.rows, self.pivots):
            if v[c]:
                v = (v - v[c] * b) % self.p
        return v

    def contains(self, row) -> bool:
        return not self.reduce(row).any()

    def add(self, row) -> bool:
        v = self.reduce(row)
        nz = np.flatnonzero(v)
        if not nz.size:
            return False
        c = int(nz[0])
        self.rows.append((v * self._inv[v[c]]) % self.p)
        self.pivots.append(c)
        return True

    def copy(self) -> EchelonBasis:
        out = EchelonBasis(self.p, self.ncols)
        out.rows = list(self.rows)
        out.pivots = list(self.pivots)
        return out


def row_pivots_mod_p(M, p: int) -> list:
    """Indices of a maximal independent subset of rows, chosen greedily in order."""
    A = np.array(M, dtype=np.int64) % p
    if A.ndim != 2:
        return []
    basis = EchelonBasis(p, A.shape[1])
    return [i for i, row in enumerate(A) if basis.add(row)]
