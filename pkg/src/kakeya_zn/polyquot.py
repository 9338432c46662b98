"""Quotient rings used by the polynomial method.

* :class:`TruncPoly` is an element of F_p[z]/(z-1)^l, stored in the basis w = z - 1.
* :class:`CycloRat` is an element of Q(zeta) for a primitive p^k-th root of unity,
  stored as an integer numerator vector over zeta^0..zeta^(phi-1) and a common
  positive denominator.
* :class:`CycloZPoly` is a polynomial in z with CycloRat coefficients, optionally
  reduced modulo a monic polynomial h(z).
* :func:`psi` sends zeta to 1 and reduces mod p.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, gcd


class NotInDomainError(ValueError):
    """An element is not p-integral, so psi is undefined on it."""


class TargetMismatchError(ValueError):
    pass


def lucas_binom(a: int, b: int, p: int) -> int:
    """binom(a, b) mod p from base-p digits."""
    if b < 0 or a < 0:
        return 0
    out = 1
    while a or b:
        ai, bi = a % p, b % p
        if bi > ai:
            return 0
        out = out * comb(ai, bi) % p
        a //= p
        b //= p
    return out % p


# --- F_p[z]/(z-1)^l ------------------------------------------------------------------


@dataclass(frozen=True)
class TruncPoly:
    p: int
    ell: int
    coeffs: tuple[int, ...]  # coefficient of w^i, w = z - 1

    def __post_init__(self):
        if self.ell < 1:
            raise ValueError("ell must be >= 1")
        c = tuple(int(x) % self.p for x in self.coeffs)
        if len(c) > self.ell:
            c = c[: self.ell]
        c = c + (0,) * (self.ell - len(c))
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def zero(cls, p, ell):
        return cls(p, ell, ())

    @classmethod
    def one(cls, p, ell):
        return cls(p, ell, (1,))

    @classmethod
    def w_power(cls, p, ell, j):
        return cls(p, ell, (0,) * j + (1,)) if j < ell else cls.zero(p, ell)

    @classmethod
    def z_power(cls, p: int, ell: int, e: int) -> TruncPoly:
        """z^e = (1 + w)^e, coefficients binom(e, j) mod p."""
        if e < 0:
            raise ValueError("negative exponent")
        return cls(p, ell, tuple(lucas_binom(e, j, p) for j in range(ell)))

    @classmethod
    def from_monomial(cls, p: int, ell: int, coeffs) -> TruncPoly:
        """Element given by sum_i c_i z^i (any length), reduced mod (z-1)^l."""
        out = [0] * ell
        for i, c in enumerate(coeffs):
            c = int(c) % p
            if c:
                for j in range(min(i, ell - 1) + 1):
                    out[j] = (out[j] + c * comb(i, j)) % p
        return cls(p, ell, tuple(out))

    def to_monomial(self) -> tuple[int, ...]:
        """Coefficients of 1, z, ..., z^(l-1) of the reduced representative."""
        out = [0] * self.ell
        for j, c in enumerate(self.coeffs):
            if c:
                for i in range(j + 1):
                    out[i] = (out[i] + c * comb(j, i) * (-1) ** (j - i)) % self.p
        return tuple(out)

    def _check(self, other: TruncPoly):
        if (self.p, self.ell) != (other.p, other.ell):
            raise ValueError("TruncPoly ring mismatch")

    def __add__(self, other):
        self._check(other)
        return TruncPoly(self.p, self.ell, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        self._check(other)
        return TruncPoly(self.p, self.ell, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return TruncPoly(self.p, self.ell, tuple(-a for a in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, int):
            return TruncPoly(self.p, self.ell, tuple(a * other for a in self.coeffs))
        self._check(other)
        ell = self.ell
        out = [0] * ell
        for i, a in enumerate(self.coeffs):
            if a:
                for j in range(ell - i):
                    out[i + j] += a * other.coeffs[j]
        return TruncPoly(self.p, ell, tuple(out))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        out = TruncPoly.one(self.p, self.ell)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def valuation(self) -> int:
        """Largest j with (z-1)^j dividing the element (l for zero)."""
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return self.ell

    def reduce_to(self, ell: int) -> TruncPoly:
        """Image under F_p[z]/(z-1)^l -> F_p[z]/(z-1)^ell for ell <= l."""
        if ell > self.ell:
            raise ValueError("can only reduce to a smaller exponent")
        return TruncPoly(self.p, ell, self.coeffs[:ell])

    def substitute_power(self, e: int) -> TruncPoly:
        """q(z^e) reduced mod (z-1)^l."""
        return trunc_substitute_zp(self, e)

    def __repr__(self):
        return f"TruncPoly(p={self.p}, l={self.ell}, z-basis={self.to_monomial()})"


def trunc_substitute_zp(q: TruncPoly, e: int) -> TruncPoly:
    """q(z^e) in F_p[z]/(z-1)^l; F_p-linear in q."""
    w_e = TruncPoly.z_power(q.p, q.ell, e) - TruncPoly.one(q.p, q.ell)
    out = TruncPoly.zero(q.p, q.ell)
    power = TruncPoly.one(q.p, q.ell)
    for c in q.coeffs:
        if c:
            out = out + power * c
        power = power * w_e
    return out


# --- cyclotomic fields ----------------------------------------------------------------


def cyclotomic_poly(p: int, k: int) -> tuple[int, ...]:
    """Coefficients (constant term first) of sum_{i<p} x^(i p^(k-1))."""
    if k < 1:
        raise ValueError("k must be >= 1")
    s = p ** (k - 1)
    out = [0] * ((p - 1) * s + 1)
    for i in range(p):
        out[i * s] = 1
    return tuple(out)


def _phi(p: int, k: int) -> int:
    return p ** (k - 1) * (p - 1)


@lru_cache(maxsize=None)
def _reduction_rule(p: int, k: int) -> tuple[int, ...]:
    # x^phi = -sum_{i=0}^{p-2} x^(i p^(k-1))
    s = p ** (k - 1)
    return tuple(i * s for i in range(p - 1))


def _reduce_cyclo(coeffs: list, p: int, k: int) -> list:
    phi = _phi(p, k)
    rule = _reduction_rule(p, k)
    c = list(coeffs)
    for d in range(len(c) - 1, phi - 1, -1):
        a = c[d]
        if a:
            c[d] = 0
            base = d - phi
            for off in rule:
                c[base + off] -= a
    c = c[:phi]
    return c + [0] * (phi - len(c))


@dataclass(frozen=True)
class CycloRat:
    p: int
    k: int
    num: tuple[int, ...]
    den: int = 1

    def __post_init__(self):
        phi = _phi(self.p, self.k)
        num = [int(x) for x in self.num]
        if len(num) > phi:
            num = _reduce_cyclo(num, self.p, self.k)
        num = num + [0] * (phi - len(num))
        den = int(self.den)
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        if den < 0:
            num, den = [-x for x in num], -den
        g = den
        for x in num:
            g = gcd(g, x)
            if g == 1:
                break
        if not any(num):
            g, den = den, 1
            num = [0] * phi
        elif g > 1:
            num = [x // g for x in num]
            den //= g
        object.__setattr__(self, "num", tuple(num))
        object.__setattr__(self, "den", den)

    # constructors
    @classmethod
    def from_int(cls, p, k, a: int) -> CycloRat:
        return cls(p, k, (a,))

    @classmethod
    def from_fraction(cls, p, k, a) -> CycloRat:
        a = Fraction(a)
        return cls(p, k, (a.numerator,), a.denominator)

    @classmethod
    def zeta(cls, p: int, k: int, e: int = 1) -> CycloRat:
        e %= p**k
        c = [0] * (e + 1)
        c[e] = 1
        return cls(p, k, tuple(c))

    @property
    def phi(self) -> int:
        return len(self.num)

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(x, self.den) for x in self.num)

    def _check(self, other):
        if (self.p, self.k) != (other.p, other.k):
            raise ValueError("CycloRat field mismatch")

    def _lift(self, other) -> CycloRat:
        if isinstance(other, CycloRat):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return CycloRat.from_fraction(self.p, self.k, other)
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        if self.den == o.den:
            return CycloRat(self.p, self.k, tuple(a + b for a, b in zip(self.num, o.num)), self.den)
        return CycloRat(
            self.p, self.k, tuple(a * o.den + b * self.den for a, b in zip(self.num, o.num)), self.den * o.den
        )

    __radd__ = __add__

    def __neg__(self):
        return CycloRat(self.p, self.k, tuple(-a for a in self.num), self.den)

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        a, b = self.num, o.num
        if not any(a) or not any(b):
            return CycloRat(self.p, self.k, (0,))
        prod = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        return CycloRat(self.p, self.k, tuple(_reduce_cyclo(prod, self.p, self.k)), self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self * o.inv()

    def __rtruediv__(self, other):
        return self._lift(other) * self.inv()

    def __pow__(self, e: int):
        if e < 0:
            return self.inv() ** (-e)
        out = CycloRat.from_int(self.p, self.k, 1)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def is_zero(self) -> bool:
        return not any(self.num)

    def __bool__(self):
        return not self.is_zero()

    def inv(self) -> CycloRat:
        """Inverse by the extended Euclidean algorithm against the cyclotomic polynomial."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in Q(zeta)")
        a = _trim([Fraction(x) for x in self.num])
        m = _trim([Fraction(x) for x in cyclotomic_poly(self.p, self.k)])
        # invariant: r_i = s_i * a (mod m)
        r0, r1 = m, a
        s0, s1 = [Fraction(0)], [Fraction(1)]
        while len(r1) > 1 or r1[0] == 0:
            qt, rem = _poly_divmod(r0, r1)
            r0, r1 = r1, rem
            s0, s1 = s1, _trim(_poly_sub(s0, _poly_mul(qt, s1)))
            if not any(r1):
                raise ZeroDivisionError("element is not invertible")
        c = r1[0]
        inv_num = [x / c for x in s1]
        out = _fractions_to_cyclo(self.p, self.k, inv_num)
        return out * CycloRat(self.p, self.k, (self.den,))

    def __eq__(self, other):
        if isinstance(other, CycloRat):
            return (self.p, self.k, self.num, self.den) == (other.p, other.k, other.num, other.den)
        if isinstance(other, (int, Fraction)):
            return self == CycloRat.from_fraction(self.p, self.k, other)
        return NotImplemented

    def __hash__(self):
        return hash((self.p, self.k, self.num, self.den))

    def is_p_integral(self) -> bool:
        return self.den % self.p != 0

    def to_complex(self) -> complex:
        z = cmath.exp(2j * cmath.pi / self.p**self.k)
        return sum(c * z**i for i, c in enumerate(self.num)) / self.den

    def __repr__(self):
        terms = [f"{c}*z^{i}" if i else str(c) for i, c in enumerate(self.num) if c]
        body = " + ".join(terms) or "0"
        den = "" if self.den == 1 else f"/{self.den}"
        return f"CycloRat[{self.p}^{self.k}]({body}){den}"


def _trim(c: list) -> list:
    c = list(c)
    while len(c) > 1 and c[-1] == 0:
        c.pop()
    return c or [Fraction(0)]


def _poly_sub(a, b):
    n = max(len(a), len(b))
    return [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)]


def _poly_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_divmod(a, b):
    a = list(a)
    b = _trim(b)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    lead = b[-1]
    for d in range(len(a) - len(b), -1, -1):
        c = a[d + len(b) - 1] / lead
        q[d] = c
        if c:
            for i, y in enumerate(b):
                a[d + i] -= c * y
    return _trim(q), _trim(a[: len(b) - 1] or [Fraction(0)])


def _fractions_to_cyclo(p, k, coeffs) -> CycloRat:
    den = 1
    for c in coeffs:
        den = den * Fraction(c).denominator // gcd(den, Fraction(c).denominator)
    return CycloRat(p, k, tuple(int(Fraction(c) * den) for c in coeffs), den)


def psi(x: CycloRat) -> int:
    """zeta -> 1 and reduction mod p."""
    if not x.is_p_integral():
        raise NotInDomainError(f"denominator {x.den} is divisible by {x.p}")
    return sum(x.num) * pow(x.den, -1, x.p) % x.p


# --- polynomials over Q(zeta) ------------------------------------------------------------


@dataclass(frozen=True)
class CycloZPoly:
    """Polynomial sum_i c_i z^i with CycloRat coefficients, optionally reduced mod monic h."""

    p: int
    k: int
    coeffs: tuple
    modulus: tuple | None = None

    def __post_init__(self):
        c = [x if isinstance(x, CycloRat) else CycloRat.from_fraction(self.p, self.k, x) for x in self.coeffs]
        mod = self.modulus
        if mod is not None:
            mod = tuple(x if isinstance(x, CycloRat) else CycloRat.from_fraction(self.p, self.k, x) for x in mod)
            if mod[-1] != 1:
                raise ValueError("modulus must be monic")
            c = _cz_mod(c, mod)
            object.__setattr__(self, "modulus", mod)
        while c and c[-1].is_zero():
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def from_roots(cls, p, k, roots_with_mult) -> CycloZPoly:
        """Monic prod (y - a)^beta."""
        poly = [CycloRat.from_int(p, k, 1)]
        for a, beta in roots_with_mult:
            for _ in range(beta):
                nxt = [CycloRat.from_int(p, k, 0)] * (len(poly) + 1)
                for i, c in enumerate(poly):
                    nxt[i + 1] = nxt[i + 1] + c
                    nxt[i] = nxt[i] - c * a
                poly = nxt
        return cls(p, k, tuple(poly))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def coeff(self, i: int) -> CycloRat:
        return self.coeffs[i] if i < len(self.coeffs) else CycloRat.from_int(self.p, self.k, 0)

    def _new(self, coeffs):
        return CycloZPoly(self.p, self.k, tuple(coeffs), self.modulus)

    def __add__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        return self._new([self.coeff(i) + other.coeff(i) for i in range(n)])

    def __sub__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        return self._new([self.coeff(i) - other.coeff(i) for i in range(n)])

    def __mul__(self, other):
        if isinstance(other, (CycloRat, int, Fraction)):
            return self._new([c * other for c in self.coeffs])
        if not self.coeffs or not other.coeffs:
            return self._new([])
        out = [CycloRat.from_int(self.p, self.k, 0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[i + j] = out[i + j] + a * b
        return self._new(out)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other):
        return isinstance(other, CycloZPoly) and self.coeffs == other.coeffs and (self.p, self.k) == (other.p, other.k)

    def __hash__(self):
        return hash((self.p, self.k, self.coeffs))

    def is_p_integral(self) -> bool:
        return all(c.is_p_integral() for c in self.coeffs)

    def psi_coeffs(self) -> tuple[int, ...]:
        return tuple(psi(c) for c in self.coeffs)


def _cz_mod(c: list, mod: tuple) -> list:
    c = list(c)
    dm = len(mod) - 1
    for d in range(len(c) - 1, dm - 1, -1):
        a = c[d]
        if not a.is_zero():
            c[d] = c[d] - a
            for i in range(dm):
                c[d - dm + i] = c[d - dm + i] - a * mod[i]
    return c[:dm] if len(c) > dm else c


def psi_poly(q: CycloZPoly, ell: int | None = None) -> TruncPoly:
    """Image of q in F_p[z]/(z-1)^l.

    When q carries a modulus h, psi(h) must equal (z-1)^l with l = deg h.
    """
    p = q.p
    if q.modulus is not None:
        h_img = tuple(psi(c) for c in q.modulus)
        l_h = len(h_img) - 1
        target = tuple(comb(l_h, i) * (-1) ** (l_h - i) % p for i in range(l_h + 1))
        if h_img != target:
            raise TargetMismatchError(f"psi(h) = {h_img} is not (z-1)^{l_h} over F_{p}")
        if ell is None:
            ell = l_h
        elif ell > l_h:
            raise TargetMismatchError("requested exponent exceeds deg h")
    if ell is None:
        raise ValueError("ell is required when q has no modulus")
    return TruncPoly.from_monomial(p, ell, q.psi_coeffs())
