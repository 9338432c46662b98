"""Lines, maximal functions, slice profiles and the p-maximal weight over (Z/NZ)^n."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .intervals import RatInterval, log
from .projective import Direction, canonicalize, enumerate_projective
from .ring import FactoredModulus, factorize


class InvalidPrimeError(ValueError):
    pass


class BudgetError(ValueError):
    """Raised when a computation would exceed the configured size budget."""


MAX_GRID = 10**6


# --- grid functions -----------------------------------------------------------


@dataclass
class GridFunction:
    """Non-negative integer function on (Z/NZ)^n stored densely in row-major order.

    The offset of x is sum_i x_i N^(n-1-i), so x_1 is the most significant digit.
    """

    N: int
    n: int
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.N < 2 or self.n < 1:
            raise ValueError("need N >= 2 and n >= 1")
        if self.N**self.n > MAX_GRID:
            raise BudgetError(f"grid of size {self.N}^{self.n} exceeds budget {MAX_GRID}")
        vals = np.asarray(self.values, dtype=np.int64).reshape(-1)
        if vals.size != self.N**self.n:
            raise ValueError(f"expected {self.N ** self.n} values, got {vals.size}")
        if (vals < 0).any():
            raise ValueError("grid function values must be non-negative")
        self.values = vals

    @property
    def modulus(self) -> FactoredModulus:
        return factorize(self.N)

    @property
    def size(self) -> int:
        return self.values.size

    def offset(self, x) -> int:
        off = 0
        for c in x:
            off = off * self.N + int(c) % self.N
        return off

    def __call__(self, x) -> int:
        return int(self.values[self.offset(x)])

    def point(self, offset: int) -> tuple[int, ...]:
        return tuple(int(c) for c in np.unravel_index(offset, (self.N,) * self.n))

    def is_indicator(self) -> bool:
        return bool(((self.values == 0) | (self.values == 1)).all())

    def support(self) -> list[tuple[int, ...]]:
        return [self.point(i) for i in np.flatnonzero(self.values)]

    def total(self) -> int:
        return int(self.values.sum())

    def power_sum(self, e: int) -> int:
        return sum(int(v) ** e for v in self.values if v)

    @classmethod
    def zeros(cls, N: int, n: int) -> GridFunction:
        return cls(N, n, np.zeros(N**n, dtype=np.int64))

    @classmethod
    def constant(cls, N: int, n: int, c: int) -> GridFunction:
        return cls(N, n, np.full(N**n, c, dtype=np.int64))

    @classmethod
    def from_points(cls, N: int, n: int, points) -> GridFunction:
        f = cls.zeros(N, n)
        for x in points:
            if len(x) != n:
                raise ValueError(f"point {x} does not have {n} coordinates")
            f.values[f.offset(x)] = 1
        return f

    def to_dict(self) -> dict:
        return {"N": self.N, "n": self.n, "values": [int(v) for v in self.values]}

    @classmethod
    def from_dict(cls, d: dict) -> GridFunction:
        try:
            N, n = int(d["N"]), int(d["n"])
        except KeyError as exc:
            raise ValueError(f"grid function JSON is missing {exc}") from None
        if "values" in d:
            return cls(N, n, np.asarray(d["values"], dtype=np.int64))
        if "points" in d:
            return cls.from_points(N, n, d["points"])
        raise ValueError("grid function JSON needs 'values' or 'points'")

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> GridFunction:
        return cls.from_dict(json.loads(text))

    def __eq__(self, other):
        return (
            isinstance(other, GridFunction)
            and (self.N, self.n) == (other.N, other.n)
            and np.array_equal(self.values, other.values)
        )


def random_grid_function(N: int, n: int, rng: np.random.Generator, max_value: int = 4, density: float = 0.5) -> GridFunction:
    vals = rng.integers(1, max_value + 1, size=N**n)
    vals[rng.random(N**n) >= density] = 0
    return GridFunction(N, n, vals)


def transform(f: GridFunction, G_inv) -> GridFunction:
    """The function x -> f(G^{-1} x), given the inverse matrix ``G_inv`` mod N."""
    pts = _grid_points(f.N, f.n)
    img = (pts @ np.asarray(G_inv, dtype=np.int64).T) % f.N
    return GridFunction(f.N, f.n, f.values[img @ _weights(f.N, f.n)])


# --- lines ---------------------------------------------------------------------


@dataclass(frozen=True)
class Line:
    base: tuple[int, ...]
    direction: Direction

    def __post_init__(self):
        N = self.direction.N
        object.__setattr__(self, "base", tuple(int(c) % N for c in self.base))
        if len(self.base) != self.direction.n:
            raise ValueError("base point and direction have different dimensions")

    @property
    def N(self) -> int:
        return self.direction.N

    def point(self, t: int) -> tuple[int, ...]:
        N = self.N
        return tuple((a + t * u) % N for a, u in zip(self.base, self.direction.coords))


def line_points(L: Line) -> list[tuple[int, ...]]:
    return [L.point(t) for t in range(L.N)]


def line_sum(f: GridFunction, L: Line) -> int:
    return sum(f(x) for x in line_points(L))


@lru_cache(maxsize=None)
def _grid_points(N: int, n: int) -> np.ndarray:
    return np.indices((N,) * n).reshape(n, -1).T.astype(np.int64)


@lru_cache(maxsize=None)
def _weights(N: int, n: int) -> np.ndarray:
    return N ** np.arange(n - 1, -1, -1, dtype=np.int64)


def maximal_function(f: GridFunction, u: Direction) -> tuple[int, Line]:
    """Largest line sum in direction ``u`` by scanning every base point.

    Ties go to the lexicographically smallest base point.
    """
    N, n = f.N, f.n
    pts = _grid_points(N, n)
    t = np.arange(N, dtype=np.int64)
    uu = np.asarray(u.coords, dtype=np.int64)
    idx = ((pts[:, None, :] + t[None, :, None] * uu) % N) @ _weights(N, n)
    sums = f.values[idx].sum(axis=1)
    best = int(np.argmax(sums))
    return int(sums[best]), Line(tuple(int(c) for c in pts[best]), u)


# --- batched profile ---------------------------------------------------------------


@dataclass(frozen=True)
class _LineTable:
    directions: tuple[Direction, ...]
    members: np.ndarray  # (D, lines per direction, N) point offsets, first entry is the line's minimum
    dir_array: np.ndarray  # (D, n)


@lru_cache(maxsize=16)
def line_table(N: int, n: int) -> _LineTable:
    """Partition of the grid into lines, for every direction.

    Lines are ordered by their smallest point so that ``argmax`` over lines
    reproduces the smallest-base tie-break of :func:`maximal_function`.
    """
    if N**n > MAX_GRID:
        raise BudgetError(f"grid of size {N}^{n} exceeds budget {MAX_GRID}")
    dirs = tuple(enumerate_projective(N, n))
    pts = _grid_points(N, n)
    w = _weights(N, n)
    t = np.arange(N, dtype=np.int64)
    n_lines = N ** (n - 1)
    members = np.empty((len(dirs), n_lines, N), dtype=np.int32)
    for d, u in enumerate(dirs):
        uu = np.asarray(u.coords, dtype=np.int64)
        idx = ((pts[:, None, :] + t[None, :, None] * uu) % N) @ w  # (N^n, N)
        line_min = idx.min(axis=1)
        bases = np.unique(line_min)  # sorted; exactly N^(n-1) of them
        # points of each line listed in t order from its minimum point
        members[d] = idx[bases]
    dir_array = np.array([u.coords for u in dirs], dtype=np.int64).reshape(len(dirs), n)
    return _LineTable(dirs, members, dir_array)


@dataclass
class MaximalProfile:
    """f*(u) and a maximizing line for every direction, in enumeration order."""

    N: int
    n: int
    directions: tuple[Direction, ...]
    values: np.ndarray
    base_offsets: np.ndarray

    def __len__(self):
        return len(self.directions)

    def index(self, u: Direction) -> int:
        return _direction_index(self.N, self.n)[u.coords]

    def value(self, u: Direction) -> int:
        return int(self.values[self.index(u)])

    def line(self, u: Direction) -> Line:
        off = int(self.base_offsets[self.index(u)])
        base = np.unravel_index(off, (self.N,) * self.n)
        return Line(tuple(int(c) for c in base), u)

    def items(self):
        for i, u in enumerate(self.directions):
            yield u, int(self.values[i]), self.line(u)

    @property
    def wstar(self) -> int:
        return int(self.values.max()) if len(self.values) else 0

    def count_ge(self, k: int) -> int:
        return int((self.values >= k).sum())

    def eps_ge(self, k: int) -> Fraction:
        return Fraction(self.count_ge(k), len(self.directions))

    def eps_eq(self, k: int) -> Fraction:
        return Fraction(int((self.values == k).sum()), len(self.directions))

    def power_mean(self, e: int) -> Fraction:
        return Fraction(sum(int(v) ** e for v in self.values), len(self.directions))

    def to_dict(self) -> dict:
        return {
            "N": self.N,
            "n": self.n,
            "directions": [
                {"u": list(u.coords), "fstar": v, "base": list(L.base)} for u, v, L in self.items()
            ],
        }


@lru_cache(maxsize=16)
def _direction_index(N: int, n: int) -> dict:
    return {u.coords: i for i, u in enumerate(enumerate_projective(N, n))}


def maximal_profile(f: GridFunction) -> MaximalProfile:
    table = line_table(f.N, f.n)
    sums = f.values[table.members].sum(axis=-1)  # (D, lines)
    best = sums.argmax(axis=1)
    D = len(table.directions)
    return MaximalProfile(
        f.N,
        f.n,
        table.directions,
        sums[np.arange(D), best].astype(np.int64),
        table.members[np.arange(D), best, 0].astype(np.int64),
    )


# --- slices along the p-part -----------------------------------------------------


@dataclass
class SliceProfile:
    """Line mass split along the p-part of the line.

    ``g`` maps each point y of the prime-to-p line to the mass of the p-part
    slice over it, listed in order of t mod N1.
    """

    line: Line
    p: int
    q: int
    g: dict = field(default_factory=dict)

    @property
    def values(self) -> list[int]:
        return list(self.g.values())

    def b_ge(self, i: int) -> int:
        return sum(1 for v in self.g.values() if v >= i)

    def b_eq(self, i: int) -> int:
        return sum(1 for v in self.g.values() if v == i)

    @property
    def w(self) -> int:
        return max(self.g.values(), default=0)


def _prime_part(N: int, p: int) -> int:
    if p < 2 or N % p:
        raise InvalidPrimeError(f"{p} is not a prime factor of {N}")
    k = factorize(N).exponent_of(p)
    if k == 0:
        raise InvalidPrimeError(f"{p} is not a prime factor of {N}")
    return p**k


def slice_profile(f: GridFunction, L: Line, p: int) -> SliceProfile:
    q = _prime_part(f.N, p)
    N1 = f.N // q
    g = {}
    for s in range(N1):
        y = tuple((a + s * u) % N1 for a, u in zip(L.base, L.direction.coords))
        g[y] = sum(f(L.point(s + j * N1)) for j in range(q))
    return SliceProfile(L, p, q, g)


def _argmax_slices(f: GridFunction, profile: MaximalProfile, p: int) -> np.ndarray:
    """Slice masses of every argmax line, shape (D, N1)."""
    q = _prime_part(f.N, p)
    N, n = f.N, f.n
    N1 = N // q
    bases = np.array(np.unravel_index(profile.base_offsets, (N,) * n), dtype=np.int64).T.reshape(-1, n)
    dirs = np.array([u.coords for u in profile.directions], dtype=np.int64).reshape(-1, n)
    t = np.arange(N, dtype=np.int64)
    pts = (bases[:, None, :] + t[None, :, None] * dirs[:, None, :]) % N
    vals = f.values[pts @ _weights(N, n)]  # (D, N) indexed by t = j*N1 + s
    return vals.reshape(len(dirs), q, N1).sum(axis=1)


def mweight(f: GridFunction, p: int, profile: MaximalProfile | None = None) -> int:
    """Largest p-part slice mass over all argmax lines."""
    profile = maximal_profile(f) if profile is None else profile
    slices = _argmax_slices(f, profile, p)
    return int(slices.max()) if slices.size else 0


def is_m_eps_kakeya(S: GridFunction, m: int, eps, profile: MaximalProfile | None = None) -> bool:
    if not S.is_indicator():
        raise ValueError("expected a 0/1 valued function")
    profile = maximal_profile(S) if profile is None else profile
    return profile.count_ge(m) >= Fraction(eps) * len(profile)


@dataclass(frozen=True)
class SliceInequality:
    direction: Direction
    lhs: int
    rhs: RatInterval
    holds: bool


def slice_power_inequality(
    f: GridFunction, p: int, profile: MaximalProfile | None = None, log_base="natural"
) -> list[SliceInequality]:
    """For each direction compare sum_i b_{>=i}^n (i^n - (i-1)^n) with (f*(u)/(log w + 1))^n.

    ``w`` is the p-maximal weight of ``f``.  The logarithm is enclosed in an
    interval and ``holds`` requires the left side to beat the upper end.
    """
    profile = maximal_profile(f) if profile is None else profile
    slices = _argmax_slices(f, profile, p)
    n = f.n
    w = int(slices.max()) if slices.size else 0
    denom = (log(w, log_base) + 1) if w >= 1 else None
    out = []
    for d, u in enumerate(profile.directions):
        g = slices[d]
        fstar = int(profile.values[d])
        lhs = sum(int((g >= i).sum()) ** n * (i**n - (i - 1) ** n) for i in range(1, w + 1))
        rhs = (RatInterval.point(fstar) / denom) ** n if denom is not None else RatInterval.point(0)
        out.append(SliceInequality(u, lhs, rhs, lhs >= rhs.hi))
    return out


def line_through(points, N: int) -> Line:
    """Line through the first two of ``points`` (convenience for tests and the CLI)."""
    a, b = points[0], points[1]
    return Line(tuple(a), canonicalize([bb - aa for aa, bb in zip(a, b)], N))
