"""Exact rational intervals for quantities involving logarithms.

Endpoints are Fractions.  Logarithms come from mpmath's interval context, whose
outward rounding guarantees the true value lies inside; the endpoints are then
carried exactly so later arithmetic adds no rounding of its own.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from mpmath import iv
from mpmath.libmp import to_rational

PRECISION_DIGITS = 50


@dataclass(frozen=True)
class RatInterval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lo", Fraction(self.lo))
        object.__setattr__(self, "hi", Fraction(self.hi))
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @classmethod
    def point(cls, x) -> RatInterval:
        x = Fraction(x)
        return cls(x, x)

    @property
    def is_exact(self) -> bool:
        return self.lo == self.hi

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def __float__(self):
        return float(self.mid)

    def _coerce(self, other) -> RatInterval:
        return other if isinstance(other, RatInterval) else RatInterval.point(other)

    def __add__(self, other):
        o = self._coerce(other)
        return RatInterval(self.lo + o.lo, self.hi + o.hi)

    __radd__ = __add__

    def __neg__(self):
        return RatInterval(-self.hi, -self.lo)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        prods = (self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi)
        return RatInterval(min(prods), max(prods))

    __rmul__ = __mul__

    def reciprocal(self) -> RatInterval:
        if self.lo <= 0 <= self.hi:
            raise ZeroDivisionError("interval contains zero")
        return RatInterval(1 / self.hi, 1 / self.lo)

    def __truediv__(self, other):
        return self * self._coerce(other).reciprocal()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.reciprocal()

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            raise ValueError("only non-negative integer powers are supported")
        if self.lo >= 0:
            return RatInterval(self.lo**e, self.hi**e)
        out = RatInterval.point(1)
        for _ in range(e):
            out = out * self
        return out

    def __repr__(self):
        if self.is_exact:
            return f"RatInterval({self.lo})"
        return f"RatInterval([{float(self.lo):.12g}, {float(self.hi):.12g}])"

    def widen(self, eps) -> RatInterval:
        eps = Fraction(eps)
        return RatInterval(self.lo - eps, self.hi + eps)


def as_interval(x) -> RatInterval:
    return x if isinstance(x, RatInterval) else RatInterval.point(x)


def upper(x) -> Fraction:
    return x.hi if isinstance(x, RatInterval) else Fraction(x)


def lower(x) -> Fraction:
    return x.lo if isinstance(x, RatInterval) else Fraction(x)


@lru_cache(maxsize=None)
def _ln_positive_int_ratio(num: int, den: int) -> RatInterval:
    if num == den:
        return RatInterval.point(0)
    iv.dps = PRECISION_DIGITS
    val = iv.log(iv.mpf(num) / iv.mpf(den))
    a, b = val._mpi_
    return RatInterval(Fraction(*to_rational(a)), Fraction(*to_rational(b)))


def ln(x) -> RatInterval:
    """Enclosure of the natural logarithm of a positive rational."""
    x = Fraction(x)
    if x <= 0:
        raise ValueError("logarithm of a non-positive number")
    return _ln_positive_int_ratio(x.numerator, x.denominator)


def log(x, base: str | int = "natural") -> RatInterval:
    """Enclosure of log(x) in the named base ("natural", "2", "10") or an integer base."""
    if base in ("natural", "e", None):
        return ln(x)
    b = int(base)
    if Fraction(x) == 1:
        return RatInterval.point(0)
    return ln(x) / ln(b)
