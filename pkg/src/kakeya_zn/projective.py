"""Points of the projective space P(Z/NZ)^{n-1}."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import prod

from .ring import FactoredModulus, ResidueVector, crt_scalar, factorize


class NotProjectiveError(ValueError):
    """Vector lacks a unit coordinate modulo some prime power."""


@dataclass(frozen=True, order=True)
class Direction:
    coords: tuple[int, ...]
    modulus: FactoredModulus

    @property
    def N(self) -> int:
        return self.modulus.N

    @property
    def n(self) -> int:
        return len(self.coords)

    @property
    def rep(self) -> ResidueVector:
        return ResidueVector(self.modulus, self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __repr__(self):
        return f"Direction({self.coords} mod {self.N})"


def _as_modulus(N) -> FactoredModulus:
    return N if isinstance(N, FactoredModulus) else factorize(N)


def _canonical_component(coords, p: int, q: int) -> tuple[int, ...]:
    for c in coords:
        if c % p:
            inv = pow(c, -1, q)
            return tuple(x * inv % q for x in coords)
    raise NotProjectiveError(f"{tuple(coords)} has no unit coordinate mod {q}")


def canonicalize(v, N=None) -> Direction:
    """Canonical representative of the unit-multiple class of ``v``.

    Each prime-power component is scaled so its first unit coordinate is 1.
    ``v`` is a ResidueVector, or a coordinate sequence together with ``N``.
    """
    if isinstance(v, ResidueVector):
        modulus, coords = v.modulus, v.coords
    else:
        modulus = _as_modulus(N)
        coords = tuple(int(c) % modulus.N for c in v)
    parts = []
    for p, k in modulus.factors:
        q = p**k
        parts.append(_canonical_component([c % q for c in coords], p, q))
    moduli = modulus.prime_powers
    joined = tuple(crt_scalar([part[i] for part in parts], moduli) for i in range(len(coords)))
    return Direction(joined, modulus)


@lru_cache(maxsize=None)
def _component_reps(p: int, k: int, n: int) -> tuple[tuple[int, ...], ...]:
    q = p**k
    nonunits = range(0, q, p)
    out = []
    for i in range(n):
        for head in itertools.product(nonunits, repeat=i):
            for tail in itertools.product(range(q), repeat=n - i - 1):
                out.append(head + (1,) + tail)
    return tuple(out)


@lru_cache(maxsize=None)
def _enumerate(modulus: FactoredModulus, n: int) -> tuple[Direction, ...]:
    moduli = modulus.prime_powers
    comps = [_component_reps(p, k, n) for p, k in modulus.factors]
    dirs = []
    for combo in itertools.product(*comps):
        coords = tuple(crt_scalar([c[i] for c in combo], moduli) for i in range(n))
        dirs.append(Direction(coords, modulus))
    dirs.sort(key=lambda d: d.coords)
    return tuple(dirs)


def enumerate_projective(N, n: int) -> list[Direction]:
    """All canonical directions, sorted lexicographically."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return list(_enumerate(_as_modulus(N), n))


def projective_size(N, n: int) -> int:
    modulus = _as_modulus(N)
    return prod(p ** ((k - 1) * (n - 1)) * (p**n - 1) // (p - 1) for p, k in modulus.factors)


def apply_matrix(G, u: Direction, q: int | None = None) -> Direction:
    """Canonical form of ``G u``; ``G`` acts on coordinates mod ``q`` (default N)."""
    q = u.N if q is None else q
    coords = tuple(sum(int(g) * c for g, c in zip(row, u.coords)) % q for row in G)
    return canonicalize(coords, u.modulus if q == u.N else q)
