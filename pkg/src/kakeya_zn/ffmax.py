"""Maximal Kakeya bounds over a finite field F_q, with the multiplicity ladder and a
replay of the polynomial-method argument at desk scale.

Field elements use the integer encoding of :class:`kakeya_zn.fields.FqField`, so the
prime field F_p is the integers 0..p-1.  Points of F_q^n are stored densely with offset
sum_i x_i q^(n-1-i).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

import numpy as np

from .bounds import BoundReport, _num, _report
from .fields import FqField, NotPrimePowerError, _is_irreducible, build_field
from .geometry import MAX_GRID, BudgetError
from .linalg import rank_mod_p, rref
from .polymethod import (
    _hasse_monomial_at,
    default_field,
    highest_degree_part,
    multiplicity,
    orders_below,
    projective_points,
    select_monomials,
    vanishing_poly,
)
from .ring import factorize

__all__ = [
    "FieldFunction",
    "FieldProfile",
    "LimitPoint",
    "PipelineTrace",
    "build_field",
    "NotPrimePowerError",
    "directions",
    "field_maximal",
    "ffmax_check",
    "ladder",
    "limit_study",
    "pipeline_demo",
    "projective_count",
    "random_field_function",
]


# --- functions on F_q^n ---------------------------------------------------------------------


@dataclass
class FieldFunction:
    """Non-negative integer function on F_q^n."""

    q: int
    n: int
    values: np.ndarray = field(repr=False)
    modulus: tuple | None = None

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("need n >= 1")
        if self.q**self.n > MAX_GRID:
            raise BudgetError(f"grid of size {self.q}^{self.n} exceeds budget {MAX_GRID}")
        vals = np.asarray(self.values, dtype=np.int64).reshape(-1)
        if vals.size != self.q**self.n:
            raise ValueError(f"expected {self.q ** self.n} values, got {vals.size}")
        if (vals < 0).any():
            raise ValueError("function values must be non-negative")
        self.values = vals
        F = build_field(self.q)
        if self.modulus is not None:
            mod = tuple(int(c) % F.p for c in self.modulus)
            if len(mod) != F.e + 1 or mod[-1] != 1 or not _is_irreducible(mod, F.p):
                raise ValueError(f"modulus {list(self.modulus)} is not a monic irreducible of degree {F.e}")
            self.modulus = mod
        else:
            self.modulus = F.modulus

    @property
    def field(self) -> FqField:
        F = build_field(self.q)
        return F if F.modulus == self.modulus else FqField(F.p, F.e, self.modulus)

    def offset(self, x) -> int:
        off = 0
        for c in x:
            c = int(c)
            if not 0 <= c < self.q:
                raise ValueError(f"coordinate {c} is not a field element code in [0, {self.q})")
            off = off * self.q + c
        return off

    def point(self, offset: int) -> tuple[int, ...]:
        return tuple(int(c) for c in np.unravel_index(offset, (self.q,) * self.n))

    def __call__(self, x) -> int:
        return int(self.values[self.offset(x)])

    def power_sum(self, e: int) -> int:
        return sum(int(v) ** e for v in self.values if v)

    def support(self) -> list[tuple[int, ...]]:
        return [self.point(i) for i in np.flatnonzero(self.values)]

    @classmethod
    def zeros(cls, q: int, n: int) -> FieldFunction:
        return cls(q, n, np.zeros(q**n, dtype=np.int64))

    @classmethod
    def constant(cls, q: int, n: int, c: int) -> FieldFunction:
        return cls(q, n, np.full(q**n, c, dtype=np.int64))

    @classmethod
    def from_points(cls, q: int, n: int, points, modulus=None) -> FieldFunction:
        f = cls(q, n, np.zeros(q**n, dtype=np.int64), modulus)
        for x in points:
            if len(x) != n:
                raise ValueError(f"point {x} does not have {n} coordinates")
            f.values[f.offset(x)] = 1
        return f

    def to_dict(self) -> dict:
        d = {"q": self.q, "n": self.n, "values": [int(v) for v in self.values]}
        if build_field(self.q).e > 1:
            d["modulus"] = list(self.modulus)
        return d

    @classmethod
    def from_dict(cls, d: dict) -> FieldFunction:
        try:
            q, n = int(d["q"]), int(d["n"])
        except KeyError as exc:
            raise ValueError(f"field function JSON is missing {exc}") from None
        mod = d.get("modulus")
        if "values" in d:
            return cls(q, n, np.asarray(d["values"], dtype=np.int64), mod)
        if "points" in d:
            return cls.from_points(q, n, d["points"], mod)
        raise ValueError("field function JSON needs 'values' or 'points'")

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> FieldFunction:
        return cls.from_dict(json.loads(text))


def random_field_function(q: int, n: int, rng: np.random.Generator, max_value: int = 3, density: float = 0.5) -> FieldFunction:
    vals = rng.integers(1, max_value + 1, size=q**n)
    vals[rng.random(q**n) >= density] = 0
    return FieldFunction(q, n, vals)


# --- lines and the maximal function -----------------------------------------------------------


def directions(F, n: int) -> list[tuple]:
    """P F_q^(n-1) as representatives whose last nonzero coordinate is 1."""
    return projective_points(F, n)


@lru_cache(maxsize=64)
def _line_table(F: FqField, n: int) -> np.ndarray:
    """table[u, x] = smallest offset on the line through x in direction u."""
    q = F.q
    add = np.array(F._add, dtype=np.int64)
    mul = np.array(F._mul, dtype=np.int64)
    pts = np.array(np.unravel_index(np.arange(q**n), (q,) * n)).T  # (q^n, n)
    place = q ** np.arange(n - 1, -1, -1)
    dirs = directions(F, n)
    table = np.empty((len(dirs), q**n), dtype=np.int64)
    for iu, u in enumerate(dirs):
        best = np.full(q**n, q**n, dtype=np.int64)
        u = np.array(u, dtype=np.int64)
        for t in range(q):
            moved = add[pts, mul[t, u][None, :]]
            best = np.minimum(best, moved @ place)
        table[iu] = best
    return table


def field_maximal(f: FieldFunction) -> np.ndarray:
    """f*(u) = max over lines in direction u of the sum of f, in the order of :func:`directions`."""
    table = _line_table(f.field, f.n)
    out = np.empty(table.shape[0], dtype=np.int64)
    size = f.q**f.n
    for iu in range(table.shape[0]):
        out[iu] = np.bincount(table[iu], weights=f.values, minlength=size).max()
    return out


# --- the inequality -----------------------------------------------------------------------------


def ffmax_check(f: FieldFunction, fstar: np.ndarray | None = None) -> BoundReport:
    """sum f^n >= (q/(2q-1))^n |P|^-1 sum f*^n, exactly; the weaker 2^-n form is in params."""
    q, n = f.q, f.n
    fstar = field_maximal(f) if fstar is None else fstar
    P = len(fstar)
    total = sum(int(v) ** n for v in fstar)
    lhs = f.power_sum(n)
    C = Fraction(q, 2 * q - 1) ** n
    rhs = C * Fraction(total, P)
    weak = Fraction(1, 2**n) * Fraction(total, P)
    params = {
        "q": q,
        "n": n,
        "mean_fstar_n": _num(Fraction(total, P)),
        "weak_constant": _num(Fraction(1, 2**n)),
        "weak_rhs": _num(weak),
        "weak_holds": lhs >= weak,
    }
    return _report("maximal-field", lhs, rhs, C, params)


# --- the multiplicity ladder ----------------------------------------------------------------------


def _ceil(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)


@dataclass
class FieldProfile:
    q: int
    n: int
    m: int
    fstar: np.ndarray = field(repr=False)
    w: int
    eps_ge: list  # eps_ge[k] for 0 <= k <= w
    eps: list  # eps[k] for 0 <= k <= w
    r: list
    d: list
    eq3_rhs: int

    @property
    def P(self) -> int:
        return len(self.fstar)

    @property
    def strict(self) -> bool:
        return all(a < b for a, b in zip(self.r, self.r[1:])) and all(a < b for a, b in zip(self.d, self.d[1:]))

    @property
    def eq3_lhs(self) -> Fraction:
        n = self.n
        tot = Fraction(0)
        for i in range(1, self.w + 1):
            s = sum(comb(j + n - 1, n - 1) for j in range(self.d[i - 1] + 1, self.d[i] + 1))
            tot += self.eps_ge[i] * s
        return tot

    @property
    def eq4_value(self) -> Fraction:
        return sum((self.eps[k] * comb(self.d[k] + self.n, self.n) for k in range(1, self.w + 1)), Fraction(0))

    @property
    def eq3_holds(self) -> bool:
        return self.eq3_lhs <= self.eq3_rhs

    @property
    def rearrangement_holds(self) -> bool:
        return self.eq3_lhs == self.eq4_value

    @property
    def limit_target(self) -> Fraction:
        q, n = self.q, self.n
        s = sum((self.eps[k] * k**n for k in range(1, self.w + 1)), Fraction(0))
        return s * Fraction(q**n, (2 * q - 1) ** n * factorial(n))

    @property
    def normalized_lhs(self) -> Fraction:
        return self.eq3_lhs / self.m**self.n

    def to_dict(self) -> dict:
        return {
            "q": self.q,
            "n": self.n,
            "m": self.m,
            "w": self.w,
            "fstar": [int(v) for v in self.fstar],
            "eps_ge": [_num(e) for e in self.eps_ge],
            "eps": [_num(e) for e in self.eps],
            "r": list(self.r),
            "d": list(self.d),
            "strict": self.strict,
            "ladder_lhs": _num(self.eq3_lhs),
            "ladder_rhs": self.eq3_rhs,
            "ladder_holds": self.eq3_holds,
            "rearranged": _num(self.eq4_value),
            "rearrangement_holds": self.rearrangement_holds,
            "limit_target": _num(self.limit_target),
        }


def ladder(f: FieldFunction, m: int, fstar: np.ndarray | None = None) -> FieldProfile:
    """All multiplicity-ladder quantities for f at scale m, computed exactly."""
    if m < 1:
        raise ValueError("need m >= 1")
    q, n = f.q, f.n
    fstar = field_maximal(f) if fstar is None else np.asarray(fstar)
    P = len(fstar)
    w = int(fstar.max()) if P else 0
    counts = np.bincount(fstar, minlength=w + 1)
    eps = [Fraction(int(counts[k]), P) for k in range(w + 1)]
    eps_ge = [sum(eps[k:], Fraction(0)) for k in range(w + 1)]
    r = [max(_ceil(Fraction(m * k + 1, 2 * q - 1) - 1), 0) if k else 0 for k in range(w + 1)]
    d = [rk * q - 1 for rk in r]
    rhs = sum(comb(m * int(v) + n - 1, n) for v in f.values if v)
    return FieldProfile(q, n, m, fstar, w, eps_ge, eps, r, d, rhs)


@dataclass
class LimitPoint:
    m: int
    normalized_lhs: Fraction
    target: Fraction

    @property
    def gap(self) -> float:
        if self.target == 0:
            return 0.0 if self.normalized_lhs == 0 else float("inf")
        return abs(float(self.normalized_lhs / self.target) - 1.0)


def limit_study(f: FieldFunction, multipliers=(2, 4, 8, 16)) -> list[LimitPoint]:
    """Ladder left side over m^n against its m -> infinity limit, for m = c q."""
    fstar = field_maximal(f)
    out = []
    for c in multipliers:
        prof = ladder(f, c * f.q, fstar)
        out.append(LimitPoint(prof.m, prof.normalized_lhs, prof.limit_target))
    return out


# --- replay of the polynomial-method argument ----------------------------------------------------

MAX_PIPELINE_ENTRIES = 400_000


@dataclass
class PipelineTrace:
    profile: FieldProfile
    pools: list = field(default_factory=list)
    pool_total: int = 0
    constraint_rows: int = 0
    constraint_rank: int = 0
    q_exists: bool = False
    q_text: str = ""
    q_degree: int | None = None
    claim: list = field(default_factory=list)
    steps: list = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return all(ok for _, ok in self.steps)

    def to_dict(self) -> dict:
        return {
            "profile": self.profile.to_dict(),
            "pools": self.pools,
            "pool_total": self.pool_total,
            "constraint_rows": self.constraint_rows,
            "constraint_rank": self.constraint_rank,
            "q_exists": self.q_exists,
            "q": self.q_text,
            "q_degree": self.q_degree,
            "claim": self.claim,
            "steps": [{"step": s, "ok": ok} for s, ok in self.steps],
            "holds": self.holds,
        }


def _level_of(prof: FieldProfile, j: int) -> int:
    return next(i for i in range(1, prof.w + 1) if prof.d[i - 1] < j <= prof.d[i])


def pipeline_demo(f: FieldFunction, m: int) -> PipelineTrace:
    """Build the monomial pools, look for a vanishing Q and record which step rules it out.

    Pools P(j) for d_(i-1) < j <= d_i are pivot monomials of degree j that cannot vanish to
    order r_i on all of B_(>=i).  A nonzero Q in their span vanishing to order m f(x) at
    every x would have a top-degree part vanishing to order r_i on B_(>=i), which the pool
    construction forbids; so no Q exists and the pool size is at most the constraint rank.
    """
    q, n = f.q, f.n
    if q > 3 or n != 2 or not 2 * q <= m <= 2 * q + 2:
        raise BudgetError(f"pipeline runs only for q <= 3, n = 2, 2q <= m <= 2q+2 (got q={q}, n={n}, m={m})")
    F = default_field(q)
    fstar = field_maximal(f)
    prof = ladder(f, m, fstar)
    trace = PipelineTrace(prof)
    if prof.w == 0:
        trace.steps.append(("f* is identically zero: empty ladder, both sides 0", prof.eq3_lhs == 0 == prof.eq3_rhs))
        return trace
    dirs = directions(F, n)
    pool: list = []
    for i in range(1, prof.w + 1):
        B = [u for u, v in zip(dirs, fstar) if v >= i]
        for j in range(prof.d[i - 1] + 1, prof.d[i] + 1):
            sel = select_monomials(F, B, j, prof.r[i])
            bound = _ceil(prof.eps_ge[i] * comb(j + n - 1, n - 1))
            trace.pools.append(
                {"degree": j, "level": i, "order": prof.r[i], "size": len(sel.monomials), "bound": bound, "holds": len(sel.monomials) >= bound}
            )
            pool.extend(sel.monomials)
    trace.pool_total = len(pool)
    constraints = [(f.point(o), m * int(v)) for o, v in enumerate(f.values) if v]
    trace.constraint_rows = sum(len(orders_below(n, mult)) for _, mult in constraints)
    if trace.constraint_rows * max(len(pool), 1) > MAX_PIPELINE_ENTRIES:
        raise BudgetError(f"constraint system {trace.constraint_rows} x {len(pool)} exceeds budget")
    rows = [[_hasse_monomial_at(F, e, j, a) for e in pool] for a, mult in constraints for j in orders_below(n, mult)]
    if rows and pool:
        trace.constraint_rank = rank_mod_p(rows, q) if F.q == getattr(F, "p", None) else rref(F, rows).rank
    trace.q_exists = bool(pool) and trace.constraint_rank < len(pool)

    trace.steps.append(("every pool meets its size bound", all(p["holds"] for p in trace.pools)))
    trace.steps.append(("pool total >= ladder left side", trace.pool_total >= prof.eq3_lhs))
    if not trace.q_exists:
        trace.steps.append(("no vanishing Q: pool total <= constraint rank", trace.pool_total <= trace.constraint_rank))
        trace.steps.append(("constraint rank <= ladder right side", trace.constraint_rank <= prof.eq3_rhs))
        trace.steps.append(("ladder inequality", prof.eq3_holds))
        return trace

    Q = vanishing_poly(F, constraints, pool)
    trace.q_text = Q.to_text()
    trace.q_degree = Q.degree
    i = _level_of(prof, Q.degree)
    QH = highest_degree_part(Q)
    B = [u for u, v in zip(dirs, fstar) if v >= i]
    for u in B:
        mu = multiplicity(QH, u)
        trace.claim.append({"direction": list(u), "mult": mu if isinstance(mu, int) else str(mu), "order": prof.r[i]})
    claim_ok = all(multiplicity(QH, u) >= prof.r[i] for u in B)
    trace.steps.append(("top part vanishes to order r_i on B_(>=i)", claim_ok))
    # the claim contradicts the pool construction, so reaching here is a failure
    trace.steps.append(("pool construction rules out such a top part", False))
    return trace


def _check_prime_power(q: int):
    fac = factorize(q).factors
    if len(fac) != 1:
        raise NotPrimePowerError(f"{q} is not a prime power")


def projective_count(q: int, n: int) -> int:
    _check_prime_power(q)
    return (q**n - 1) // (q - 1)

