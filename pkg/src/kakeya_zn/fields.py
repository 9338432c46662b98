"""Exact coefficient fields behind one small interface.

A field object exposes ``zero``, ``one``, ``from_int``, ``add``, ``sub``,
``mul``, ``neg``, ``inv``, ``is_zero`` and ``characteristic``.  Elements are
plain Python values (ints, Fractions or CycloRat), so they can be hashed and
compared directly.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .polyquot import CycloRat
from .ring import factorize


class PrimeField:
    def __init__(self, p: int):
        self.p = p
        self.q = p
        self.characteristic = p

    def __repr__(self):
        return f"F_{self.p}"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("F", self.p))

    def zero(self):
        return 0

    def one(self):
        return 1

    def from_int(self, a):
        return int(a) % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def neg(self, a):
        return -a % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p)

    def is_zero(self, a):
        return a % self.p == 0

    def elements(self):
        return list(range(self.p))

    def format(self, a) -> str:
        return str(a)


class RationalField:
    characteristic = 0

    def __repr__(self):
        return "Q"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("Q")

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def from_int(self, a):
        return Fraction(a)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / Fraction(a)

    def is_zero(self, a):
        return a == 0

    def format(self, a) -> str:
        return str(a)


class CyclotomicField:
    characteristic = 0

    def __init__(self, p: int, k: int):
        self.p, self.k = p, k

    def __repr__(self):
        return f"Q(zeta_{self.p ** self.k})"

    def __eq__(self, other):
        return isinstance(other, CyclotomicField) and (other.p, other.k) == (self.p, self.k)

    def __hash__(self):
        return hash(("Qz", self.p, self.k))

    def zero(self):
        return CycloRat.from_int(self.p, self.k, 0)

    def one(self):
        return CycloRat.from_int(self.p, self.k, 1)

    def from_int(self, a):
        return CycloRat.from_fraction(self.p, self.k, a)

    def zeta(self, e=1):
        return CycloRat.zeta(self.p, self.k, e)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        return a.inv()

    def is_zero(self, a):
        return a.is_zero()

    def format(self, a) -> str:
        return "(" + " + ".join(f"{c}*zeta^{i}" for i, c in enumerate(a.num) if c) + (f")/{a.den}" if a.den != 1 else ")") if not a.is_zero() else "0"


# --- extension fields F_q --------------------------------------------------------------


def _poly_mulmod(a, b, mod, p):
    e = len(mod) - 1
    out = [0] * (2 * e - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    for d in range(len(out) - 1, e - 1, -1):
        c = out[d] % p
        if c:
            for i in range(e + 1):
                out[d - e + i] -= c * mod[i]
    return [x % p for x in out[:e]]


def _is_irreducible(mod, p) -> bool:
    """Brute force: no monic factor of degree 1..e//2."""
    e = len(mod) - 1
    for d in range(1, e // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            g = list(tail) + [1]
            r = list(mod)
            for dd in range(len(r) - 1, d - 1, -1):
                c = r[dd] % p
                if c:
                    for i in range(d + 1):
                        r[dd - d + i] -= c * g[i]
            if all(x % p == 0 for x in r[:d]):
                return False
    return True


@lru_cache(maxsize=None)
def first_irreducible(p: int, e: int) -> tuple[int, ...]:
    """Monic irreducible of degree e over F_p, smallest by the encoding sum c_i p^i."""
    for code in range(p**e):
        tail = [(code // p**i) % p for i in range(e)]
        mod = tuple(tail + [1])
        if _is_irreducible(mod, p):
            return mod
    raise RuntimeError("no irreducible polynomial found")


@dataclass(eq=False)
class FqField:
    """F_p[t]/(modulus); element c_0 + c_1 t + ... encoded as the integer sum c_i p^i."""

    p: int
    e: int
    modulus: tuple
    _add: list = field(init=False, repr=False)
    _mul: list = field(init=False, repr=False)
    _inv: list = field(init=False, repr=False)

    def __post_init__(self):
        q = self.p**self.e
        digits = [self._digits(a) for a in range(q)]
        enc = {tuple(d): a for a, d in enumerate(digits)}
        self._add = [[enc[tuple((x + y) % self.p for x, y in zip(digits[a], digits[b]))] for b in range(q)] for a in range(q)]
        if self.e == 1:
            self._mul = [[a * b % self.p for b in range(q)] for a in range(q)]
        else:
            self._mul = [
                [enc[tuple(_poly_mulmod(digits[a], digits[b], self.modulus, self.p))] for b in range(q)] for a in range(q)
            ]
        self._inv = [0] * q
        for a in range(1, q):
            for b in range(1, q):
                if self._mul[a][b] == 1:
                    self._inv[a] = b
                    break
        self._neg = [self._add[a].index(0) for a in range(q)]

    @property
    def q(self) -> int:
        return self.p**self.e

    @property
    def characteristic(self) -> int:
        return self.p

    def __repr__(self):
        return f"F_{self.q}" + ("" if self.e == 1 else f"[t]/{self.modulus_string()}")

    def __eq__(self, other):
        return isinstance(other, FqField) and (self.p, self.e, self.modulus) == (other.p, other.e, other.modulus)

    def __hash__(self):
        return hash(("Fq", self.p, self.e, self.modulus))

    def modulus_string(self) -> str:
        terms = []
        for i in range(len(self.modulus) - 1, -1, -1):
            c = self.modulus[i]
            if c:
                mono = "1" if i == 0 else ("t" if i == 1 else f"t^{i}")
                terms.append(mono if c == 1 and i else (f"{c}*{mono}" if i else str(c)))
        return " + ".join(terms)

    def _digits(self, a):
        return [(a // self.p**i) % self.p for i in range(self.e)]

    def zero(self):
        return 0

    def one(self):
        return 1

    def from_int(self, a):
        return int(a) % self.p

    def add(self, a, b):
        return self._add[a][b]

    def sub(self, a, b):
        return self._add[a][self._neg[b]]

    def mul(self, a, b):
        return self._mul[a][b]

    def neg(self, a):
        return self._neg[a]

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return self._inv[a]

    def is_zero(self, a):
        return a == 0

    def elements(self):
        return list(range(self.q))

    def format(self, a) -> str:
        return str(a)


class NotPrimePowerError(ValueError):
    pass


@lru_cache(maxsize=None)
def build_field(q: int) -> FqField:
    """F_q with the lexicographically first monic irreducible modulus."""
    try:
        fac = factorize(q).factors
    except ValueError:
        raise NotPrimePowerError(f"{q} is not a prime power") from None
    if len(fac) != 1:
        raise NotPrimePowerError(f"{q} is not a prime power")
    p, e = fac[0]
    mod = (0, 1) if e == 1 else first_irreducible(p, e)
    return FqField(p, e, mod)
