"""Multivariate polynomials over an exact field, Hasse derivatives and multiplicities.

Fields come from :mod:`kakeya_zn.fields`.  Monomials are exponent tuples; a
polynomial is a sparse dict from exponent tuple to nonzero coefficient.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil, comb

import numpy as np

from .fields import PrimeField, RationalField, build_field
from .linalg import nullspace, rref


class ZeroPolynomialError(ValueError):
    pass


class PreconditionError(ValueError):
    pass


def weight(j) -> int:
    return sum(j)


def _mono_key(e):
    # canonical order: higher total degree first, then descending lexicographic
    return (-sum(e), tuple(-x for x in e))


@dataclass(eq=False)
class MultiPoly:
    F: object
    n: int
    terms: dict = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for e, c in self.terms.items():
            e = tuple(int(x) for x in e)
            if len(e) != self.n:
                raise ValueError(f"exponent {e} has the wrong number of variables")
            if not self.F.is_zero(c):
                clean[e] = c
        self.terms = clean

    # constructors
    @classmethod
    def zero(cls, F, n):
        return cls(F, n, {})

    @classmethod
    def constant(cls, F, n, c):
        return cls(F, n, {(0,) * n: c})

    @classmethod
    def monomial(cls, F, exps, c=None):
        exps = tuple(exps)
        return cls(F, len(exps), {exps: F.one() if c is None else c})

    @classmethod
    def variable(cls, F, n, i):
        e = [0] * n
        e[i] = 1
        return cls(F, n, {tuple(e): F.one()})

    # basic queries
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def coeff(self, e):
        return self.terms.get(tuple(e), self.F.zero())

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: _mono_key(t[0]))

    def __eq__(self, other):
        return isinstance(other, MultiPoly) and self.n == other.n and self.terms == other.terms

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    # arithmetic
    def _check(self, other):
        if self.n != other.n:
            raise ValueError("polynomials have different numbers of variables")

    def __add__(self, other):
        self._check(other)
        F = self.F
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = F.add(out[e], c) if e in out else c
        return MultiPoly(F, self.n, out)

    def __neg__(self):
        return MultiPoly(self.F, self.n, {e: self.F.neg(c) for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> MultiPoly:
        return MultiPoly(self.F, self.n, {e: self.F.mul(c, x) for e, x in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            return self.scale(other)
        self._check(other)
        F = self.F
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                c = F.mul(c1, c2)
                out[e] = F.add(out[e], c) if e in out else c
        return MultiPoly(F, self.n, out)

    def __pow__(self, k: int):
        out = MultiPoly.constant(self.F, self.n, self.F.one())
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __call__(self, a):
        return evaluate(self, a)

    def to_text(self) -> str:
        """Canonical text: ``c*x1^a1*...*xn^an`` terms joined by `` + ``."""
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            factors = [f"x{i + 1}^{a}" for i, a in enumerate(e) if a]
            parts.append("*".join([_fmt(self.F, c)] + factors))
        return " + ".join(parts)

    def __repr__(self):
        return f"MultiPoly({self.to_text()})"


def _fmt(F, c) -> str:
    return F.format(c) if hasattr(F, "format") else str(c)


_TERM = re.compile(r"^(?P<c>[^*]+)(?P<rest>(\*x\d+\^\d+)*)$")


def from_text(F, n: int, text: str) -> MultiPoly:
    """Parse the canonical text format; coefficients are integers or fractions."""
    text = text.strip()
    if text == "0":
        return MultiPoly.zero(F, n)
    out = MultiPoly.zero(F, n)
    for part in text.split(" + "):
        m = _TERM.match(part.strip())
        if not m:
            raise ValueError(f"cannot parse term {part!r}")
        c = Fraction(m.group("c"))
        if isinstance(F, RationalField):
            coeff = c
        else:
            coeff = F.mul(F.from_int(c.numerator), F.inv(F.from_int(c.denominator)))
        e = [0] * n
        for var, a in re.findall(r"\*x(\d+)\^(\d+)", m.group("rest")):
            e[int(var) - 1] += int(a)
        out = out + MultiPoly(F, n, {tuple(e): coeff})
    return out


def random_poly(F, n: int, deg: int, rng: np.random.Generator, density: float = 0.5, elements=None) -> MultiPoly:
    """Random polynomial of degree <= deg with coefficients drawn from ``elements`` (default: the field)."""
    if elements is None:
        elements = F.elements() if hasattr(F, "elements") else [F.from_int(x) for x in range(-3, 4)]
    terms = {}
    for e in itertools.product(range(deg + 1), repeat=n):
        if sum(e) <= deg and rng.random() < density:
            terms[e] = elements[int(rng.integers(len(elements)))]
    return MultiPoly(F, n, terms)


# --- evaluation and derivatives ---------------------------------------------------------------


def _power(F, a, k):
    out = F.one()
    for _ in range(k):
        out = F.mul(out, a)
    return out


def evaluate(Q: MultiPoly, a):
    F = Q.F
    if len(a) != Q.n:
        raise ValueError("point has the wrong dimension")
    acc = F.zero()
    for e, c in Q.terms.items():
        v = c
        for x, k in zip(a, e):
            if k:
                v = F.mul(v, _power(F, x, k))
        acc = F.add(acc, v)
    return acc


def _binom_prod(F, v, i):
    c = F.one()
    for vt, it in zip(v, i):
        c = F.mul(c, F.from_int(comb(vt, it)))
    return c


def hasse_derivative(Q: MultiPoly, i) -> MultiPoly:
    """x^v -> prod binom(v_t, i_t) x^(v-i); terms with some v_t < i_t vanish."""
    i = tuple(i)
    if len(i) != Q.n:
        raise ValueError("derivative order has the wrong dimension")
    F = Q.F
    out = {}
    for v, c in Q.terms.items():
        if all(vt >= it for vt, it in zip(v, i)):
            b = _binom_prod(F, v, i)
            if not F.is_zero(b):
                e = tuple(vt - it for vt, it in zip(v, i))
                cc = F.mul(b, c)
                out[e] = F.add(out[e], cc) if e in out else cc
    return MultiPoly(F, Q.n, out)


def shift(Q: MultiPoly, a) -> MultiPoly:
    """Q(x + a) expanded; its x^j coefficient is the j-th Hasse derivative of Q at a."""
    F = Q.F
    out: dict = {}
    for v, c in Q.terms.items():
        ranges = [range(vt + 1) for vt in v]
        for j in itertools.product(*ranges):
            val = F.mul(c, _binom_prod(F, v, j))
            if F.is_zero(val):
                continue
            for at, vt, jt in zip(a, v, j):
                if vt - jt:
                    val = F.mul(val, _power(F, at, vt - jt))
            out[j] = F.add(out[j], val) if j in out else val
    return MultiPoly(F, Q.n, out)


INFINITY = float("inf")


def multiplicity(Q: MultiPoly, a):
    """Least weight of a Hasse derivative of Q that is nonzero at a (infinity for Q = 0)."""
    if Q.is_zero():
        return INFINITY
    S = shift(Q, a)
    return min(sum(e) for e in S.terms)


def compose(Q: MultiPoly, G) -> MultiPoly:
    """Q(G_1, ..., G_n) for polynomials G_i sharing a ring."""
    G = list(G)
    if len(G) != Q.n:
        raise ValueError("need one polynomial per variable of Q")
    if not G:
        raise ValueError("empty substitution")
    F, k = G[0].F, G[0].n
    if any(g.n != k for g in G):
        raise ValueError("substituted polynomials use different variable counts")
    cache = [{0: MultiPoly.constant(F, k, F.one())} for _ in G]

    def pw(i, e):
        if e not in cache[i]:
            cache[i][e] = pw(i, e - 1) * G[i]
        return cache[i][e]

    out = MultiPoly.zero(F, k)
    for v, c in Q.terms.items():
        term = MultiPoly.constant(F, k, c)
        for i, e in enumerate(v):
            if e:
                term = term * pw(i, e)
        out = out + term
    return out


def highest_degree_part(Q: MultiPoly) -> MultiPoly:
    if Q.is_zero():
        raise ZeroPolynomialError("the zero polynomial has no highest degree part")
    d = Q.degree
    return MultiPoly(Q.F, Q.n, {e: c for e, c in Q.terms.items() if sum(e) == d})


def orders_below(n: int, m: int) -> list[tuple[int, ...]]:
    """Derivative orders j in Z_{>=0}^n with wt(j) < m, by weight then descending lex."""
    out = [j for j in itertools.product(range(m), repeat=n) if sum(j) < m]
    return sorted(out, key=lambda j: (sum(j), tuple(-x for x in j)))


def hasse_expansion_holds(Q: MultiPoly, z) -> bool:
    """Q(x + z) = sum_j Q^(j)(x) z^j, with the left side computed by substitution."""
    F = Q.F
    n = Q.n
    lhs = compose(Q, [MultiPoly.variable(F, n, i) + MultiPoly.constant(F, n, z[i]) for i in range(n)])
    rhs = MultiPoly.zero(F, n)
    d = max(Q.degree, 0)
    for j in itertools.product(range(d + 1), repeat=n):
        zj = F.one()
        for zt, jt in zip(z, j):
            zj = F.mul(zj, _power(F, zt, jt))
        rhs = rhs + hasse_derivative(Q, j).scale(zj)
    return lhs == rhs


def iterated_hasse_holds(Q: MultiPoly, i, j) -> bool:
    """(Q^(i))^(j) = prod binom(i_t + j_t, i_t) Q^(i+j)."""
    F = Q.F
    lhs = hasse_derivative(hasse_derivative(Q, i), j)
    ij = tuple(a + b for a, b in zip(i, j))
    c = F.one()
    for a, b in zip(i, j):
        c = F.mul(c, F.from_int(comb(a + b, a)))
    return lhs == hasse_derivative(Q, ij).scale(c)


# --- Schwartz-Zippel with multiplicities ---------------------------------------------------------


@dataclass(frozen=True)
class SZReport:
    lhs: int
    rhs: int

    @property
    def holds(self) -> bool:
        return self.lhs <= self.rhs

    def to_dict(self) -> dict:
        return {"lhs": self.lhs, "rhs": self.rhs, "holds": self.holds}


def schwartz_zippel_check(Q: MultiPoly, U) -> SZReport:
    """sum_{a in U^n} mult(Q, a) against deg(Q) |U|^(n-1)."""
    if Q.is_zero():
        raise ZeroPolynomialError("the zero polynomial vanishes to infinite order")
    U = list(U)
    lhs = sum(multiplicity(Q, a) for a in itertools.product(U, repeat=Q.n))
    return SZReport(int(lhs), Q.degree * len(U) ** (Q.n - 1))


# --- EVAL matrices and monomial selection ----------------------------------------------------------


def homogeneous_monomials(d: int, n: int) -> list[tuple[int, ...]]:
    """W_{d,n}: exponents of total degree exactly d, descending lexicographic."""
    if d < 0:
        return []
    out = [e for e in itertools.product(range(d + 1), repeat=n) if sum(e) == d]
    return sorted(out, reverse=True)


def projective_points(F, n: int) -> list[tuple]:
    """P F^(n-1): nonzero vectors with last nonzero coordinate 1, grouped by that position."""
    elems = F.elements()
    out = []
    for pos in range(n):
        for head in itertools.product(elems, repeat=pos):
            out.append(tuple(head) + (F.one(),) + (F.zero(),) * (n - pos - 1))
    return out


@dataclass
class EvalMatrix:
    F: object
    rows: list  # labels (point, order)
    cols: list  # monomial exponents
    entries: list

    def rank(self) -> int:
        return rref(self.F, self.entries).rank if self.entries else 0

    def pivots(self) -> list[int]:
        if not self.entries:
            return []
        # column pivots of the row echelon form
        return list(rref(self.F, self.entries).pivots)


def _hasse_monomial_at(F, e, j, a):
    if any(et < jt for et, jt in zip(e, j)):
        return F.zero()
    val = _binom_prod(F, e, j)
    for at, et, jt in zip(a, e, j):
        if et - jt:
            val = F.mul(val, _power(F, at, et - jt))
    return val


def build_eval_matrix(F, S, W, m: int) -> EvalMatrix:
    """Entry ((x, j), f) = f^(j)(x) for x in S, wt(j) < m, f in W (monomial exponents)."""
    S = [tuple(x) for x in S]
    W = [tuple(w) for w in W]
    n = len(W[0]) if W else (len(S[0]) if S else 0)
    orders = orders_below(n, m)
    rows, entries = [], []
    for x in S:
        for j in orders:
            rows.append((x, j))
            entries.append([_hasse_monomial_at(F, e, j, x) for e in W])
    return EvalMatrix(F, rows, W, entries)


@dataclass
class MonomialSelection:
    monomials: list
    rank: int
    size_bound: int
    full_count: int
    count_variants: dict

    @property
    def holds(self) -> bool:
        return len(self.monomials) >= self.size_bound

    def to_dict(self) -> dict:
        return {
            "monomials": [list(e) for e in self.monomials],
            "rank": self.rank,
            "size_bound": self.size_bound,
            "full_count": self.full_count,
            "count_variants": self.count_variants,
            "holds": self.holds,
        }


def select_monomials(F, B, d: int, r: int) -> MonomialSelection:
    """Pivot monomials of EVAL^r(B, W_{d,n}); no nonzero combination of them vanishes to order r on B."""
    B = [tuple(b) for b in B]
    if not B:
        raise PreconditionError("B must be nonempty")
    q = F.q if hasattr(F, "q") else None
    if q is None:
        raise PreconditionError("select_monomials needs a finite field")
    if d >= r * q:
        raise PreconditionError(f"need d < r q (d={d}, r={r}, q={q})")
    n = len(B[0])
    W = homogeneous_monomials(d, n)
    E = build_eval_matrix(F, B, W, r)
    piv = E.pivots()
    full = comb(d + n - 1, n - 1)
    P = (q**n - 1) // (q - 1)
    bound = ceil(Fraction(len(B), P) * full)
    variants = {"homogeneous": full, "binom(d+n,n)": comb(d + n, n), "binom(d+n,n-1)": comb(d + n, n - 1)}
    return MonomialSelection([W[c] for c in piv], len(piv), bound, full, variants)


def vanishing_poly(F, constraints, pool) -> MultiPoly | None:
    """A nonzero combination of pool monomials vanishing to the required order at each point, if any."""
    pool = [tuple(e) for e in pool]
    if not pool:
        return None
    n = len(pool[0])
    rows = []
    for a, mult in constraints:
        for j in orders_below(n, mult):
            rows.append([_hasse_monomial_at(F, e, j, tuple(a)) for e in pool])
    basis = nullspace(F, rows, len(pool))
    if not basis:
        return None
    v = basis[0]
    return MultiPoly(F, n, {e: c for e, c in zip(pool, v)})


def constraint_count(n: int, mult: int) -> int:
    """Number of linear conditions for vanishing to order mult in n variables."""
    return comb(mult + n - 1, n)


def default_field(q: int):
    """PrimeField for primes, table field otherwise."""
    F = build_field(q)
    return PrimeField(q) if F.e == 1 else F


__all__ = [
    "MultiPoly",
    "ZeroPolynomialError",
    "PreconditionError",
    "from_text",
    "random_poly",
    "evaluate",
    "hasse_derivative",
    "shift",
    "multiplicity",
    "compose",
    "highest_degree_part",
    "orders_below",
    "hasse_expansion_holds",
    "iterated_hasse_holds",
    "SZReport",
    "schwartz_zippel_check",
    "homogeneous_monomials",
    "projective_points",
    "EvalMatrix",
    "build_eval_matrix",
    "MonomialSelection",
    "select_monomials",
    "vanishing_poly",
    "constraint_count",
    "default_field",
]
