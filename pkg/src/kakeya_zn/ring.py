"""Arithmetic over Z/NZ: factorization, CRT decomposition, random GL_n(Z/p^kZ)."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import prod

import numpy as np


class InvalidModulusError(ValueError):
    pass


class StructureError(ValueError):
    """Raised when a composite object does not match the modulus it is used with."""


@dataclass(frozen=True)
class FactoredModulus:
    N: int
    factors: tuple[tuple[int, int], ...]  # ascending primes

    def __post_init__(self):
        if prod(p**k for p, k in self.factors) != self.N:
            raise InvalidModulusError(f"factors {self.factors} do not multiply to {self.N}")

    @property
    def r(self) -> int:
        return len(self.factors)

    @property
    def prime_powers(self) -> tuple[int, ...]:
        return tuple(p**k for p, k in self.factors)

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    def descending(self) -> tuple[tuple[int, int], ...]:
        """Factors with the largest prime first (the p_1 > ... > p_r convention)."""
        return tuple(sorted(self.factors, reverse=True))

    def exponent_of(self, p: int) -> int:
        for q, k in self.factors:
            if q == p:
                return k
        return 0

    def __str__(self):
        return " * ".join(f"{p}^{k}" if k > 1 else str(p) for p, k in self.factors)


@lru_cache(maxsize=None)
def factorize(N: int) -> FactoredModulus:
    """Trial-division factorization of ``N >= 2``."""
    if not isinstance(N, (int, np.integer)) or N <= 1:
        raise InvalidModulusError(f"modulus must be an integer >= 2, got {N!r}")
    N = int(N)
    factors = []
    rest, d = N, 2
    while d * d <= rest:
        if rest % d == 0:
            k = 0
            while rest % d == 0:
                rest //= d
                k += 1
            factors.append((d, k))
        d += 1 if d == 2 else 2
    if rest > 1:
        factors.append((rest, 1))
    return FactoredModulus(N, tuple(factors))


@dataclass(frozen=True)
class ResidueVector:
    modulus: FactoredModulus
    coords: tuple[int, ...]

    def __post_init__(self):
        if len(self.coords) < 1:
            raise StructureError("residue vectors need at least one coordinate")
        N = self.modulus.N
        object.__setattr__(self, "coords", tuple(int(c) % N for c in self.coords))

    @classmethod
    def of(cls, N: int, coords) -> ResidueVector:
        return cls(factorize(N), tuple(coords))

    @property
    def N(self) -> int:
        return self.modulus.N

    @property
    def n(self) -> int:
        return len(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __len__(self):
        return len(self.coords)


def crt_split(x: ResidueVector) -> list[ResidueVector]:
    """Reduce ``x`` modulo each prime power of its modulus (ascending primes)."""
    return [ResidueVector(factorize(q), tuple(c % q for c in x.coords)) for q in x.modulus.prime_powers]


def crt_scalar(residues, moduli) -> int:
    """Unique integer mod prod(moduli) with the given residues; moduli pairwise coprime."""
    N = prod(moduli)
    x = 0
    for a, q in zip(residues, moduli):
        Nq = N // q
        x += a * Nq * pow(Nq, -1, q)
    return x % N


def crt_join(components, modulus: FactoredModulus | None = None) -> ResidueVector:
    """Inverse of :func:`crt_split`.

    If ``modulus`` is given the components must match its prime powers one for one.
    """
    components = list(components)
    if not components:
        raise StructureError("crt_join needs at least one component")
    moduli = tuple(c.N for c in components)
    if modulus is None:
        modulus = factorize(prod(moduli))
    if len(components) != modulus.r or tuple(sorted(moduli)) != tuple(sorted(modulus.prime_powers)):
        raise StructureError(f"components with moduli {moduli} do not match {modulus.N}")
    n = components[0].n
    if any(c.n != n for c in components):
        raise StructureError("components have different dimensions")
    coords = tuple(crt_scalar([c.coords[i] for c in components], moduli) for i in range(n))
    return ResidueVector(modulus, coords)


# --- matrices over Z/p^kZ -------------------------------------------------


def det_mod_p(G, p: int) -> int:
    """Determinant of an integer matrix reduced mod a prime ``p``."""
    A = [[int(v) % p for v in row] for row in G]
    n = len(A)
    det = 1
    for c in range(n):
        piv = next((i for i in range(c, n) if A[i][c]), None)
        if piv is None:
            return 0
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            det = -det
        det = det * A[c][c] % p
        inv = pow(A[c][c], -1, p)
        for i in range(c + 1, n):
            if A[i][c]:
                f = A[i][c] * inv % p
                A[i] = [(a - f * b) % p for a, b in zip(A[i], A[c])]
    return det % p


def _inverse_mod_p(G: np.ndarray, p: int) -> np.ndarray:
    n = G.shape[0]
    A = np.concatenate([G % p, np.eye(n, dtype=np.int64)], axis=1).astype(object)
    for c in range(n):
        piv = next((i for i in range(c, n) if A[i, c] % p), None)
        if piv is None:
            raise ZeroDivisionError("matrix is singular mod p")
        A[[c, piv]] = A[[piv, c]]
        A[c] = (A[c] * pow(int(A[c, c]), -1, p)) % p
        for i in range(n):
            if i != c and A[i, c]:
                A[i] = (A[i] - A[i, c] * A[c]) % p
    return A[:, n:].astype(np.int64)


def inverse_mod_pk(G, p: int, k: int) -> np.ndarray:
    """Inverse of ``G`` mod ``p**k`` by Newton lifting of the mod-``p`` inverse."""
    G = np.asarray(G, dtype=object)
    n = G.shape[0]
    X = _inverse_mod_p(np.asarray(G, dtype=np.int64), p).astype(object)
    I2 = 2 * np.eye(n, dtype=np.int64).astype(object)
    prec = 1
    while prec < k:
        prec = min(2 * prec, k)
        q = p**prec
        X = X.dot(I2 - G.dot(X)) % q
    return (X % p**k).astype(np.int64)


def random_gl(n: int, p: int, k: int, seed) -> np.ndarray:
    """Uniform sample from GL_n(Z/p^kZ) by rejection.

    A uniformly random matrix is kept iff its determinant is a unit mod ``p``;
    invertibility mod ``p^k`` is equivalent to invertibility mod ``p``.
    ``seed`` is an int or a ``numpy.random.Generator`` owned by the caller.
    """
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    q = p**k
    while True:
        G = rng.integers(0, q, size=(n, n), dtype=np.int64)
        if det_mod_p(G, p):
            return G


def matvec_mod(G, x, q: int) -> tuple[int, ...]:
    return tuple(int(sum(int(g) * int(v) for g, v in zip(row, x)) % q) for row in G)
