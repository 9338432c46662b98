"""Vandermonde-type matrices over F_p[z]/(z-1)^l and their ranks.

The central object is M_{m,n}: rows and columns indexed by {0..m-1}^n with
entry z^<u,v>.  Reduced mod (z-1)^l it becomes a :class:`TruncMatrix`; its
coefficient matrix (one F_p row per coefficient of z^i) is an :class:`FpMatrix`.
"""

from __future__ import annotations

import csv
import io
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil, comb, factorial

import numpy as np

from .bounds import ceil_log
from .fields import CyclotomicField
from .linalg import EchelonBasis, rref, rref_mod_p
from .polyquot import CycloRat, CycloZPoly, NotInDomainError, TruncPoly, lucas_binom, psi

__all__ = [
    "RingMismatchError",
    "TruncMatrix",
    "FpMatrix",
    "CycloMatrix",
    "build_M",
    "build_M_rows",
    "coeff_matrix",
    "rank_fp",
    "fp_rank_pivots",
    "rank_cyclo",
    "cyclo_rank_pivots",
    "kronecker",
    "trunc_matmul",
    "LDU",
    "ldu_vandermonde",
    "lucas_binom",
    "diagonal_valuation",
    "count_nonzero_diagonals",
    "binom_rational",
    "rank_bound_formula",
    "V_mp",
    "SplitBasis",
    "split_basis",
    "eval_row",
    "QuotientRankReport",
    "quotient_rank_check",
]


class RingMismatchError(ValueError):
    pass


def exponent_grid(m: int, n: int) -> list[tuple[int, ...]]:
    """{0..m-1}^n in lexicographic order, the row/column order of M_{m,n}."""
    return list(itertools.product(range(m), repeat=n))


def _w_to_z(p: int, ell: int) -> np.ndarray:
    # row j holds the monomial expansion of w^j = (z-1)^j
    C = np.zeros((ell, ell), dtype=np.int64)
    for j in range(ell):
        for i in range(j + 1):
            C[j, i] = comb(j, i) * (-1) ** (j - i) % p
    return C


def _z_to_w(p: int, ell: int) -> np.ndarray:
    # row i holds z^i = (1+w)^i in the w-basis
    C = np.zeros((ell, ell), dtype=np.int64)
    for i in range(ell):
        for j in range(i + 1):
            C[i, j] = comb(i, j) % p
    return C


# --- matrices over F_p[z]/(z-1)^l -------------------------------------------------------


@dataclass
class TruncMatrix:
    """Matrix over F_p[z]/(z-1)^l; ``w[r, c]`` holds the w-basis coefficients (w = z-1)."""

    p: int
    ell: int
    w: np.ndarray
    row_labels: list = field(default_factory=list)
    col_labels: list = field(default_factory=list)

    def __post_init__(self):
        self.w = np.asarray(self.w, dtype=np.int64) % self.p
        if self.w.ndim != 3 or self.w.shape[2] != self.ell:
            raise ValueError("w must have shape (rows, cols, ell)")
        if not self.row_labels:
            self.row_labels = list(range(self.w.shape[0]))
        if not self.col_labels:
            self.col_labels = list(range(self.w.shape[1]))

    @property
    def shape(self) -> tuple[int, int]:
        return self.w.shape[0], self.w.shape[1]

    def entry(self, r: int, c: int) -> TruncPoly:
        return TruncPoly(self.p, self.ell, tuple(int(x) for x in self.w[r, c]))

    @classmethod
    def from_entries(cls, entries, row_labels=None, col_labels=None) -> TruncMatrix:
        """Build from a nested list of TruncPoly sharing one (p, l)."""
        first = entries[0][0]
        p, ell = first.p, first.ell
        for row in entries:
            for e in row:
                if (e.p, e.ell) != (p, ell):
                    raise RingMismatchError("entries live in different rings")
        w = np.array([[e.coeffs for e in row] for row in entries], dtype=np.int64)
        return cls(p, ell, w, list(row_labels or []), list(col_labels or []))

    @classmethod
    def from_monomial(cls, p: int, ell: int, coeffs, row_labels=None, col_labels=None) -> TruncMatrix:
        """From z-basis coefficients of shape (rows, cols, ell)."""
        z = np.asarray(coeffs, dtype=np.int64) % p
        return cls(p, ell, z @ _z_to_w(p, ell) % p, list(row_labels or []), list(col_labels or []))

    def monomial(self) -> np.ndarray:
        """Coefficients in the z^0..z^(l-1) basis, shape (rows, cols, ell)."""
        return self.w @ _w_to_z(self.p, self.ell) % self.p

    def rows(self, idx) -> TruncMatrix:
        idx = list(idx)
        return TruncMatrix(self.p, self.ell, self.w[idx], [self.row_labels[i] for i in idx], list(self.col_labels))

    def __eq__(self, other):
        return (
            isinstance(other, TruncMatrix)
            and (self.p, self.ell) == (other.p, other.ell)
            and self.w.shape == other.w.shape
            and bool(np.array_equal(self.w, other.w))
        )

    def to_csv(self) -> str:
        """Entries printed in the z-monomial basis, e.g. ``1+2*z^1``."""
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(["row"] + [_label(c) for c in self.col_labels])
        mono = self.monomial()
        for r, lab in enumerate(self.row_labels):
            writer.writerow([_label(lab)] + [_poly_string(mono[r, c]) for c in range(self.shape[1])])
        return buf.getvalue()


def _label(x) -> str:
    if isinstance(x, tuple):
        return "(" + " ".join(_label(y) for y in x) + ")"
    return str(x)


def _poly_string(coeffs) -> str:
    terms = []
    for i, c in enumerate(coeffs):
        c = int(c)
        if c:
            terms.append(str(c) if i == 0 else (f"z^{i}" if c == 1 else f"{c}*z^{i}"))
    return "+".join(terms) if terms else "0"


def _binom_table(p: int, ell: int, exponents: np.ndarray) -> np.ndarray:
    """w-basis coefficients of z^e, i.e. binom(e, j) mod p, for each exponent."""
    flat = exponents.reshape(-1)
    uniq, inv = np.unique(flat, return_inverse=True)
    table = np.array([[lucas_binom(int(e), j, p) for j in range(ell)] for e in uniq], dtype=np.int64)
    table = table.reshape(len(uniq), ell)
    return table[inv].reshape(exponents.shape + (ell,))


def build_M_rows(rows, m: int, n: int, ell: int, p: int) -> TruncMatrix:
    """Rows z^<u,v> mod (z-1)^l for arbitrary integer vectors u; columns v in {0..m-1}^n."""
    rows = [tuple(int(x) for x in u) for u in rows]
    cols = exponent_grid(m, n)
    if any(len(u) != n for u in rows):
        raise ValueError("row vectors must have length n")
    U = np.array(rows, dtype=np.int64).reshape(len(rows), n)
    Vc = np.array(cols, dtype=np.int64).reshape(len(cols), n)
    if (U < 0).any():
        raise ValueError("row vectors must be non-negative integers")
    E = U @ Vc.T
    return TruncMatrix(p, ell, _binom_table(p, ell, E), rows, cols)


def build_M(m: int, n: int, ell: int, p: int) -> TruncMatrix:
    """M^l_{m,n}: entry (u, v) = z^<u,v> mod (z-1)^l over F_p."""
    if min(m, n, ell) < 1:
        raise ValueError("m, n and ell must be positive")
    return build_M_rows(exponent_grid(m, n), m, n, ell, p)


def trunc_matmul(A: TruncMatrix, B: TruncMatrix) -> TruncMatrix:
    if (A.p, A.ell) != (B.p, B.ell):
        raise RingMismatchError("matrices live over different rings")
    if A.shape[1] != B.shape[0]:
        raise ValueError("inner dimensions differ")
    p, ell = A.p, A.ell
    out = np.zeros((A.shape[0], B.shape[1], ell), dtype=np.int64)
    for i in range(ell):
        for j in range(ell - i):
            out[:, :, i + j] += A.w[:, :, i] @ B.w[:, :, j] % p
    return TruncMatrix(p, ell, out % p, list(A.row_labels), list(B.col_labels))


# --- F_p and Q(zeta) matrices ---------------------------------------------------------------


@dataclass
class FpMatrix:
    p: int
    data: np.ndarray
    row_labels: list = field(default_factory=list)
    col_labels: list = field(default_factory=list)

    def __post_init__(self):
        self.data = np.asarray(self.data, dtype=np.int64) % self.p
        if self.data.ndim != 2:
            self.data = self.data.reshape(len(self.row_labels) if self.row_labels else 0, -1)
        if not self.row_labels:
            self.row_labels = list(range(self.data.shape[0]))
        if not self.col_labels:
            self.col_labels = list(range(self.data.shape[1]))
        if len(set(map(repr, self.row_labels))) != len(self.row_labels):
            raise ValueError("row labels must be unique")

    @property
    def shape(self) -> tuple[int, int]:
        return self.data.shape

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(["row"] + [_label(c) for c in self.col_labels])
        for lab, row in zip(self.row_labels, self.data):
            writer.writerow([_label(lab)] + [int(x) for x in row])
        return buf.getvalue()


@dataclass
class CycloMatrix:
    p: int
    k: int
    entries: list
    row_labels: list = field(default_factory=list)

    def __post_init__(self):
        width = {len(r) for r in self.entries}
        if len(width) > 1:
            raise ValueError("matrix is not rectangular")
        self.entries = [
            [x if isinstance(x, CycloRat) else CycloRat.from_fraction(self.p, self.k, x) for x in r] for r in self.entries
        ]
        if not self.row_labels:
            self.row_labels = list(range(len(self.entries)))

    @property
    def field(self) -> CyclotomicField:
        return CyclotomicField(self.p, self.k)


def coeff_matrix(A: TruncMatrix) -> FpMatrix:
    """Coeff(A): each row of A becomes l rows holding the z^0..z^(l-1) coefficients."""
    R, C = A.shape
    mono = A.monomial()  # (R, C, ell)
    data = mono.transpose(0, 2, 1).reshape(R * A.ell, C)
    labels = [(lab, i) for lab in A.row_labels for i in range(A.ell)]
    return FpMatrix(A.p, data, labels, list(A.col_labels))


def fp_rank_pivots(M, p: int | None = None) -> tuple[int, list]:
    if isinstance(M, FpMatrix):
        p, M = M.p, M.data
    if p is None:
        raise ValueError("p is required for a raw array")
    M = np.asarray(M, dtype=np.int64)
    if M.size == 0:
        return 0, []
    _, piv = rref_mod_p(M, p)
    return len(piv), piv


def rank_fp(M, p: int | None = None) -> int:
    """Exact rank over F_p."""
    return fp_rank_pivots(M, p)[0]


def cyclo_rank_pivots(M: CycloMatrix) -> tuple[int, list]:
    if not M.entries or not M.entries[0]:
        return 0, []
    R = rref(M.field, M.entries)
    return R.rank, list(R.pivots)


def rank_cyclo(M: CycloMatrix) -> int:
    """Exact rank over Q(zeta_{p^k})."""
    return cyclo_rank_pivots(M)[0]


def kronecker(A, B):
    """Kronecker product; entry ((r1, r2), (c1, c2)) = A(r1, c1) * B(r2, c2)."""
    if isinstance(A, TruncMatrix) and isinstance(B, TruncMatrix):
        if (A.p, A.ell) != (B.p, B.ell):
            raise RingMismatchError("matrices live over different rings")
        p, ell = A.p, A.ell
        Ra, Ca = A.shape
        Rb, Cb = B.shape
        out = np.zeros((Ra, Rb, Ca, Cb, ell), dtype=np.int64)
        for i in range(ell):
            for j in range(ell - i):
                out[..., i + j] += np.einsum("ac,bd->abcd", A.w[:, :, i], B.w[:, :, j]) % p
        out = out.reshape(Ra * Rb, Ca * Cb, ell) % p
        rows = [(a, b) for a in A.row_labels for b in B.row_labels]
        cols = [(a, b) for a in A.col_labels for b in B.col_labels]
        return TruncMatrix(p, ell, out, rows, cols)
    if isinstance(A, FpMatrix) and isinstance(B, FpMatrix):
        if A.p != B.p:
            raise RingMismatchError("matrices live over different prime fields")
        rows = [(a, b) for a in A.row_labels for b in B.row_labels]
        cols = [(a, b) for a in A.col_labels for b in B.col_labels]
        return FpMatrix(A.p, np.kron(A.data, B.data) % A.p, rows, cols)
    if isinstance(A, CycloMatrix) and isinstance(B, CycloMatrix):
        if (A.p, A.k) != (B.p, B.k):
            raise RingMismatchError("matrices live over different cyclotomic fields")
        entries = [[a * b for a in ra for b in rb] for ra in A.entries for rb in B.entries]
        rows = [(a, b) for a in A.row_labels for b in B.row_labels]
        return CycloMatrix(A.p, A.k, entries, rows)
    raise RingMismatchError(f"cannot tensor {type(A).__name__} with {type(B).__name__}")


# --- LDU of the Vandermonde matrix over Z[z] -----------------------------------------------
# integer polynomials are lists of ints, constant term first


def _zp_trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _zp_add(a, b):
    n = max(len(a), len(b))
    return _zp_trim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])


def _zp_neg(a):
    return [-x for x in a]


def _zp_sub(a, b):
    return _zp_add(a, _zp_neg(b))


def _zp_mul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _zp_trim(out)


def _zp_divexact(a, b):
    """a / b in Z[z]; raises if the division is not exact."""
    a, b = _zp_trim(a), _zp_trim(b)
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    if not a:
        return []
    q = [0] * (len(a) - len(b) + 1) if len(a) >= len(b) else []
    r = list(a)
    lead = b[-1]
    for d in range(len(a) - len(b), -1, -1):
        c = r[d + len(b) - 1]
        if c % lead:
            raise ArithmeticError("polynomial division is not exact over Z")
        c //= lead
        q[d] = c
        if c:
            for i, y in enumerate(b):
                r[d + i] -= c * y
    if any(r):
        raise ArithmeticError("polynomial division leaves a remainder")
    return _zp_trim(q)


def _zmono(e: int) -> list:
    return [0] * e + [1]


def _zp_matmul(A, B):
    n, k, m = len(A), len(B), len(B[0])
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = []
            for t in range(k):
                if A[i][t] and B[t][j]:
                    acc = _zp_add(acc, _zp_mul(A[i][t], B[t][j]))
            row.append(acc)
        out.append(row)
    return out


@dataclass
class LDU:
    """V_m = L * D over Z[z]; L unit lower triangular, D upper triangular."""

    m: int
    V: list
    L: list
    D: list

    def reconstruct(self) -> list:
        return _zp_matmul(self.L, self.D)

    def verify(self) -> bool:
        return self.reconstruct() == self.V

    def L_inverse(self) -> list:
        """Forward substitution; every step stays inside Z[z] because L is unit triangular."""
        m = self.m
        inv = [[[1] if i == j else [] for j in range(m)] for i in range(m)]
        for i in range(m):
            for j in range(i):
                acc = []
                for t in range(j, i):
                    if self.L[i][t] and inv[t][j]:
                        acc = _zp_add(acc, _zp_mul(self.L[i][t], inv[t][j]))
                inv[i][j] = _zp_neg(acc)
        return inv

    def diagonal_formula(self, j: int) -> list:
        """prod_{i<j} (z^j - z^i)."""
        out = [1]
        for i in range(j):
            out = _zp_mul(out, _zp_sub(_zmono(j), _zmono(i)))
        return out


def vandermonde(m: int) -> list:
    """V_m(i, j) = z^(i j) as integer polynomials."""
    return [[_zmono(i * j) for j in range(m)] for i in range(m)]


def ldu_vandermonde(m: int) -> LDU:
    """Eliminate below the diagonal of V_m using exact division in Z[z]."""
    if m < 1:
        raise ValueError("m must be positive")
    V = vandermonde(m)
    A = [[list(x) for x in row] for row in V]
    L = [[[1] if i == j else [] for j in range(m)] for i in range(m)]
    for j in range(m):
        piv = A[j][j]
        for i in range(j + 1, m):
            if not A[i][j]:
                continue
            fac = _zp_divexact(A[i][j], piv)
            L[i][j] = fac
            A[i] = [_zp_sub(x, _zp_mul(fac, y)) for x, y in zip(A[i], A[j])]
    return LDU(m, V, L, A)


# --- rank lower bounds ---------------------------------------------------------------------


def _vp(i: int, p: int) -> int:
    e = 0
    while i % p == 0:
        i //= p
        e += 1
    return e


def diagonal_valuation(j: int, p: int) -> int:
    """(z-1)-adic valuation of prod_{i<j}(z^j - z^i) over F_p, i.e. sum_{i=1}^{j} p^{v_p(i)}."""
    if j < 0:
        raise ValueError("j must be non-negative")
    return sum(p ** _vp(i, p) for i in range(1, j + 1))


def count_nonzero_diagonals(ell: int, m: int, n: int, p: int) -> int:
    """#{(j_1..j_n) in {0..m-1}^n : sum of diagonal valuations <= l-1}."""
    if ell < 1:
        return 0
    vals = [diagonal_valuation(j, p) for j in range(m)]
    # distribution of partial sums, capped at ell
    dist = np.zeros(ell, dtype=object)
    dist[0] = 1
    for _ in range(n):
        nxt = np.zeros(ell, dtype=object)
        for s in range(ell):
            if dist[s]:
                for v in vals:
                    if s + v < ell:
                        nxt[s + v] += dist[s]
        dist = nxt
    return int(sum(dist))


def binom_rational(x, n: int) -> Fraction:
    """binom(x, n) = x (x-1) ... (x-n+1) / n! for rational x."""
    x = Fraction(x)
    out = Fraction(1)
    for t in range(n):
        out *= x - t
    return out / factorial(n)


def rank_bound_formula(ell: int, n: int, p: int) -> int:
    """ceil(binom(l / ceil(log_p l) + n, n)); l = 1 gives 1 and l = 0 gives 0."""
    if ell <= 0:
        return 0
    if ell == 1:
        return 1
    return ceil(binom_rational(Fraction(ell, ceil_log(p, ell)) + n, n))


def stated_increment(i: int, n: int, p: int) -> int:
    """ceil(binom(i/c + n, n)) - ceil(binom((i-1)/c + n, n)) with c = ceil(log_p i) clamped to 1."""
    c = max(ceil_log(p, i), 1)
    return ceil(binom_rational(Fraction(i, c) + n, n)) - ceil(binom_rational(Fraction(i - 1, c) + n, n))


# --- the split basis -------------------------------------------------------------------------


def V_mp(m: int, n: int, p: int) -> list[tuple[int, ...]]:
    """Vectors of {0..m-1}^n with at least one coordinate not divisible by p."""
    return [u for u in exponent_grid(m, n) if any(x % p for x in u)]


@dataclass
class SplitBasis:
    m: int
    n: int
    ell: int
    p: int
    levels: list  # levels[i-1] = labels (u, i, coefficient index) of A_i
    rows: np.ndarray  # all chosen rows, level by level
    count_oracle: int
    stated_total: int
    stated_sizes: list

    @property
    def sizes(self) -> list[int]:
        return [len(a) for a in self.levels]

    @property
    def total(self) -> int:
        return sum(self.sizes)

    @property
    def flags(self) -> list[str]:
        out = []
        if self.stated_total != self.total:
            out.append(f"stated total {self.stated_total} differs from achieved {self.total}")
        for i, (a, s) in enumerate(zip(self.sizes, self.stated_sizes), start=1):
            if a != s:
                out.append(f"|A_{i}| achieved {a}, stated {s}")
        return out

    def verify(self) -> bool:
        """Rows are independent and each A_i row lies outside the row space of Coeff(M^{i-1})."""
        if rank_fp(self.rows, self.p) != self.total:
            return False
        pos = 0
        for i, level in enumerate(self.levels, start=1):
            prev = EchelonBasis(self.p, self.m**self.n)
            if i > 1:
                for row in coeff_matrix(build_M(self.m, self.n, i - 1, self.p)).data:
                    prev.add(row)
            for r in range(len(level)):
                if prev.contains(self.rows[pos + r]):
                    return False
            pos += len(level)
        return True

    def to_dict(self) -> dict:
        return {
            "m": self.m,
            "n": self.n,
            "l": self.ell,
            "p": self.p,
            "sizes": self.sizes,
            "total": self.total,
            "stated_sizes": self.stated_sizes,
            "stated_total": self.stated_total,
            "count_oracle": self.count_oracle,
            "levels": [[[list(u), i, c] for (u, i, c) in level] for level in self.levels],
            "flags": self.flags,
        }


def split_basis(m: int, n: int, ell: int, p: int) -> SplitBasis:
    """Greedy independent rows A_1..A_l with A_i drawn from Coeff(M^i_{m,n}(V_{m,p}))."""
    if m < ell:
        raise ValueError(f"split_basis needs m >= l (got m={m}, l={ell})")
    V = V_mp(m, n, p)
    if not V:
        # m = 1: the only row is u = 0, whose entries are all 1
        V = [(0,) * n]
    basis = EchelonBasis(p, m**n)
    levels, chosen = [], []
    for i in range(1, ell + 1):
        C = coeff_matrix(build_M_rows(V, m, n, i, p))
        level = []
        for (u, c), row in zip(C.row_labels, C.data):
            if basis.add(row):
                level.append((u, i, c))
                chosen.append(row)
        levels.append(level)
    rows = np.array(chosen, dtype=np.int64).reshape(len(chosen), m**n)
    return SplitBasis(
        m,
        n,
        ell,
        p,
        levels,
        rows,
        count_nonzero_diagonals(ell, m, n, p),
        rank_bound_formula(ell, n, p),
        [stated_increment(i, n, p) for i in range(1, ell + 1)],
    )


# --- evaluation rows -------------------------------------------------------------------------


def eval_row(d: int, alpha, y, F) -> list:
    """U^(alpha)_d(y): the alpha-Hasse derivative of every monomial x^j, j in {0..d-1}^n, at y."""
    alpha = tuple(int(a) for a in alpha)
    n = len(alpha)
    if len(y) != n:
        raise ValueError("point and alpha have different lengths")
    # per-coordinate tables binom(j, a) y^(j-a)
    tables = []
    for a, yi in zip(alpha, y):
        col = []
        for j in range(d):
            if j < a:
                col.append(F.zero())
            else:
                val = F.one()
                for _ in range(j - a):
                    val = F.mul(val, yi)
                col.append(F.mul(F.from_int(comb(j, a)), val))
        tables.append(col)
    out = []
    for js in exponent_grid(d, n):
        val = F.one()
        for t, j in enumerate(js):
            val = F.mul(val, tables[t][j])
        out.append(val)
    return out


# --- rank under psi ----------------------------------------------------------------------------


@dataclass(frozen=True)
class QuotientRankReport:
    rank_cyclo: int
    rank_fp: int

    @property
    def holds(self) -> bool:
        return self.rank_cyclo >= self.rank_fp

    def to_dict(self) -> dict:
        return {"rank_cyclo": self.rank_cyclo, "rank_fp": self.rank_fp, "holds": self.holds}


def _w_power_poly(ell: int) -> tuple:
    return tuple(comb(ell, i) * (-1) ** (ell - i) for i in range(ell + 1))


def quotient_rank_check(A, ell: int) -> QuotientRankReport:
    """Compare the Q(zeta)-rank of A over Z(zeta)[z]/(z-1)^l with the F_p-rank of psi(A).

    Ranks are column ranks of the coefficient expansions in the z-monomial basis.
    """
    A = [list(r) for r in A]
    if not A or not A[0]:
        return QuotientRankReport(0, 0)
    first = A[0][0]
    p, k = first.p, first.k
    mod = _w_power_poly(ell)
    rows_q, rows_p = [], []
    for row in A:
        red = []
        for e in row:
            if not isinstance(e, CycloZPoly):
                e = CycloZPoly(p, k, (e,))
            if (e.p, e.k) != (p, k):
                raise RingMismatchError("entries live over different cyclotomic fields")
            if not e.is_p_integral():
                raise NotInDomainError("entry is not p-integral")
            red.append(CycloZPoly(p, k, e.coeffs, mod))
        for i in range(ell):
            rows_q.append([e.coeff(i) for e in red])
            rows_p.append([psi(e.coeff(i)) for e in red])
    rq = rref(CyclotomicField(p, k), rows_q).rank
    rp = rank_fp(np.array(rows_p, dtype=np.int64), p)
    return QuotientRankReport(rq, rp)
