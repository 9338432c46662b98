"""Decoding f(z^u') mod (z-1)^l from Hasse derivatives of f at roots of unity on a line.

Points x of (Z/p^kZ)^n are sent to zeta^x = (zeta^x_1, ..., zeta^x_n) for a
primitive p^k-th root of unity zeta.  For a line L = {a + lambda u} with a
derivative budget pi on its points, :func:`decode_rich_line` builds
coefficients c_{lambda, alpha} in Q(zeta)[z] with

    sum c_{lambda, alpha} Q^(alpha)(zeta^(a + lambda u)) = zeta^<a,v> z^<v,u'>   mod h(z)

for every monomial Q = x^v, where h(y) = prod (y - zeta^lambda)^pi(a + lambda u).
Applying psi (zeta -> 1, reduce mod p) turns the right side into z^<v,u'> in
F_p[z]/(z-1)^l.  Certificates are checked by replaying the sum from fresh
evaluations.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb, prod

import numpy as np

from .bounds import constant_set
from .fields import CyclotomicField
from .geometry import BudgetError, GridFunction, maximal_profile, mweight, transform
from .intervals import RatInterval
from .linalg import SingularSystemError, inverse, rref
from .matrices import (
    build_M_rows,
    coeff_matrix,
    eval_row,
    exponent_grid,
    quotient_rank_check,
    rank_bound_formula,
    rank_fp,
    split_basis,
)
from .polymethod import orders_below
from .polyquot import CycloRat, CycloZPoly, TruncPoly, psi, psi_poly
from .projective import canonicalize, enumerate_projective
from .ring import det_mod_p, factorize, inverse_mod_pk, random_gl


class DecodingError(RuntimeError):
    """A certificate failed verification, so the decoding identity did not hold."""


class PIntegralityError(RuntimeError):
    """The pre-psi expression left Z(zeta)[z]; this must never happen."""


# --- composition and Hermite interpolation ---------------------------------------------------


def _zero_like(x):
    return x * 0


def _is0(x) -> bool:
    return x.is_zero() if hasattr(x, "is_zero") else x == 0


def composition_hasse_coeffs(u_lift, w: int, gamma) -> dict:
    """b_{w,alpha} = [s^w] prod_i ((gamma+s)^u_i - gamma^u_i)^alpha_i for wt(alpha) <= w.

    For h(y) = G(y^u') these satisfy h^(w)(gamma) = sum_alpha b_{w,alpha} G^(alpha)(gamma^u').
    """
    u = tuple(int(x) for x in u_lift)
    if any(x < 0 for x in u):
        raise ValueError("exponents must be non-negative")
    n = len(u)
    zero = _zero_like(gamma)
    one = zero + 1
    # Delta_i(s) truncated to degree w
    deltas = []
    for ui in u:
        d = [zero] * (w + 1)
        for t in range(1, min(ui, w) + 1):
            d[t] = gamma ** (ui - t) * comb(ui, t) if ui - t else one * comb(ui, t)
        deltas.append(d)

    def mul(a, b):
        out = [zero] * (w + 1)
        for i, x in enumerate(a):
            if _is0(x):
                continue
            for j in range(w + 1 - i):
                if not _is0(b[j]):
                    out[i + j] = out[i + j] + x * b[j]
        return out

    powers = []
    for d in deltas:
        pw = [[one] + [zero] * w]
        for _ in range(w):
            pw.append(mul(pw[-1], d))
        powers.append(pw)
    out = {}
    for alpha in itertools.product(range(w + 1), repeat=n):
        if sum(alpha) > w:
            continue
        series = [one] + [zero] * w
        for i, a in enumerate(alpha):
            series = mul(series, powers[i][a])
        out[alpha] = series[w]
    return out


def _hermite_matrix(nodes):
    """Rows f -> f^(j)(a) on the basis 1, z, ..., z^(D-1), D = sum beta."""
    D = sum(b for _, b in nodes)
    rows = []
    for a, beta in nodes:
        zero = _zero_like(a)
        for j in range(beta):
            row = []
            for i in range(D):
                row.append(a ** (i - j) * comb(i, j) if i > j else (zero + comb(i, j)))
            rows.append(row)
    return rows


def hermite_recover(nodes, evals, p: int, k: int) -> CycloZPoly:
    """The residue mod h = prod (y - a_i)^beta_i with prescribed Hasse derivatives.

    ``nodes`` lists (a_i, beta_i); ``evals`` lists f^(j)(a_i) node by node, j < beta_i.
    """
    nodes = [(a, b) for a, b in nodes if b > 0]
    if len({a for a, _ in nodes}) != len(nodes):
        raise SingularSystemError("nodes must be distinct")
    F = CyclotomicField(p, k)
    A = _hermite_matrix(nodes)
    Ainv = inverse(F, A)
    ev = [e if isinstance(e, CycloRat) else CycloRat.from_fraction(p, k, e) for e in evals]
    coeffs = []
    for row in Ainv:
        acc = F.zero()
        for x, e in zip(row, ev):
            acc = acc + x * e
        coeffs.append(acc)
    h = CycloZPoly.from_roots(p, k, nodes)
    return CycloZPoly(p, k, tuple(coeffs), h.coeffs)


@lru_cache(maxsize=4096)
def _hermite_basis(p: int, k: int, pi: tuple) -> tuple:
    """t_{lambda,w}(z) as coefficient tuples, plus h; pi is indexed by lambda."""
    nodes = [(CycloRat.zeta(p, k, lam), b) for lam, b in enumerate(pi) if b > 0]
    F = CyclotomicField(p, k)
    Ainv = inverse(F, _hermite_matrix(nodes))
    labels = [(lam, wd) for lam, b in enumerate(pi) for wd in range(b)]
    t = {lab: tuple(Ainv[i][col] for i in range(len(Ainv))) for col, lab in enumerate(labels)}
    h = CycloZPoly.from_roots(p, k, nodes)
    return t, h.coeffs


# --- rich lines -----------------------------------------------------------------------------


@dataclass(frozen=True)
class RichLineWeights:
    """Line {a + lambda u} in (Z/p^kZ)^n, budget pi[lambda] and an integer lift u' of u."""

    p: int
    k: int
    a: tuple
    u: tuple
    pi: tuple
    u_lift: tuple = ()

    def __post_init__(self):
        q = self.p**self.k
        a = tuple(int(x) % q for x in self.a)
        u = tuple(int(x) % q for x in self.u)
        if len(a) != len(u):
            raise ValueError("base point and direction differ in length")
        if not any(x % self.p for x in u):
            raise ValueError("direction needs a unit coordinate")
        pi = tuple(int(x) for x in self.pi)
        if len(pi) != q or any(x < 0 for x in pi):
            raise ValueError(f"pi must list {q} non-negative values")
        lift = tuple(int(x) for x in self.u_lift) if self.u_lift else u
        if len(lift) != len(u) or any(x < 0 for x in lift) or tuple(x % q for x in lift) != u:
            raise ValueError("u' must be a non-negative lift of u")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "u", u)
        object.__setattr__(self, "pi", pi)
        object.__setattr__(self, "u_lift", lift)

    @property
    def q(self) -> int:
        return self.p**self.k

    @property
    def n(self) -> int:
        return len(self.a)

    def point(self, lam: int) -> tuple:
        return tuple((x + lam * y) % self.q for x, y in zip(self.a, self.u))

    def truncated(self, ell: int) -> tuple:
        """Reduce pi to total ell, lowering the largest lambda first."""
        pi = list(self.pi)
        excess = sum(pi) - ell
        if excess < 0:
            raise ValueError(f"budget {sum(pi)} is below l = {ell}")
        for lam in range(len(pi) - 1, -1, -1):
            if excess == 0:
                break
            cut = min(pi[lam], excess)
            pi[lam] -= cut
            excess -= cut
        return tuple(pi)


def _zeta_point(p, k, x):
    return tuple(CycloRat.zeta(p, k, xi) for xi in x)


def _monomial_hasse_at(v, alpha, y):
    """(x^v)^(alpha) at the point y."""
    if any(vt < at for vt, at in zip(v, alpha)):
        return _zero_like(y[0])
    out = _zero_like(y[0]) + prod(comb(vt, at) for vt, at in zip(v, alpha))
    for yt, vt, at in zip(y, v, alpha):
        if vt - at:
            out = out * yt ** (vt - at)
    return out


def _cz_power(p, k, e, mod) -> CycloZPoly:
    out = CycloZPoly(p, k, (1,), mod)
    base = CycloZPoly(p, k, (0, 1), mod)
    while e:
        if e & 1:
            out = out * base
        base = base * base
        e >>= 1
    return out


def _rat_json(x: CycloRat) -> dict:
    return {"num": list(x.num), "den": x.den}


@dataclass
class DecodingCertificate:
    rw: RichLineWeights
    ell: int
    pi: tuple  # truncated budget
    h: tuple  # coefficients of h(z), constant first
    c: dict  # (lambda, alpha) -> CycloZPoly mod h
    verified_degree: int = 0
    checks: int = 0

    @property
    def p(self) -> int:
        return self.rw.p

    @property
    def k(self) -> int:
        return self.rw.k

    def combination(self, v) -> CycloZPoly:
        """sum c_{lambda,alpha} (x^v)^(alpha)(zeta^(a + lambda u)) from fresh evaluations."""
        p, k = self.p, self.k
        acc = CycloZPoly(p, k, (), self.h)
        for (lam, alpha), c in self.c.items():
            y = _zeta_point(p, k, self.rw.point(lam))
            val = _monomial_hasse_at(v, alpha, y)
            if not val.is_zero():
                acc = acc + c * val
        return acc

    def check_monomial(self, v) -> TruncPoly:
        """Verify one monomial; returns psi of the combination."""
        p, k = self.p, self.k
        lhs = self.combination(v)
        e = sum(a * b for a, b in zip(v, self.rw.u_lift))
        shift_exp = sum(a * b for a, b in zip(self.rw.a, v))
        target = _cz_power(p, k, e, self.h) * CycloRat.zeta(p, k, shift_exp)
        if lhs != target:
            raise DecodingError(f"identity fails for monomial {v}")
        if not lhs.is_p_integral():
            raise PIntegralityError(f"combination for monomial {v} is not p-integral")
        img = psi_poly(lhs)
        if img != TruncPoly.z_power(p, self.ell, e):
            raise DecodingError(f"psi image fails for monomial {v}")
        return img

    def verify(self, d: int) -> bool:
        """Check every monomial x^v with all v_t < d."""
        for v in itertools.product(range(d), repeat=self.rw.n):
            self.check_monomial(v)
            self.checks += 1
        self.verified_degree = max(self.verified_degree, d)
        return True

    def coefficient_rows(self, m: int) -> list[list]:
        """For i < l, the Q(zeta) row sum_{lambda,alpha} [z^i]c_{lambda,alpha} U^(alpha)_m(zeta^x)."""
        p, k = self.p, self.k
        F = CyclotomicField(p, k)
        width = m**self.rw.n
        rows = [[F.zero()] * width for _ in range(self.ell)]
        for (lam, alpha), c in self.c.items():
            U = eval_row(m, alpha, _zeta_point(p, k, self.rw.point(lam)), F)
            for i in range(self.ell):
                ci = c.coeff(i)
                if ci.is_zero():
                    continue
                row = rows[i]
                for col, x in enumerate(U):
                    if not x.is_zero():
                        row[col] = row[col] + ci * x
        return rows

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "k": self.k,
            "a": list(self.rw.a),
            "u": list(self.rw.u),
            "u_lift": list(self.rw.u_lift),
            "pi": list(self.pi),
            "l": self.ell,
            "h": [_rat_json(x) for x in self.h],
            "coefficients": [
                {"lambda": lam, "alpha": list(alpha), "z_coeffs": [_rat_json(x) for x in c.coeffs]}
                for (lam, alpha), c in sorted(self.c.items())
            ],
            "verified_degree": self.verified_degree,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def build_certificate(rw: RichLineWeights, ell: int) -> DecodingCertificate:
    """Coefficients c_{lambda,alpha} = sum_{wt(alpha) <= w < pi} t_{lambda,w} zeta^<alpha,a> b_{w,alpha}(lambda)."""
    p, k = rw.p, rw.k
    if ell < 1:
        raise ValueError("l must be positive")
    pi = rw.truncated(ell)
    t, h = _hermite_basis(p, k, pi)
    c: dict = {}
    for lam, beta in enumerate(pi):
        if beta == 0:
            continue
        gamma = CycloRat.zeta(p, k, lam)
        for wd in range(beta):
            b = composition_hasse_coeffs(rw.u_lift, wd, gamma)
            tz = CycloZPoly(p, k, t[(lam, wd)], h)
            for alpha, bval in b.items():
                if _is0(bval):
                    continue
                scale = bval * CycloRat.zeta(p, k, sum(x * y for x, y in zip(alpha, rw.a)))
                term = tz * scale
                key = (lam, alpha)
                c[key] = c[key] + term if key in c else term
    c = {key: val for key, val in c.items() if not val.is_zero()}
    return DecodingCertificate(rw, ell, pi, h, c)


def decode_rich_line(rw: RichLineWeights, ell: int, d: int = 3) -> DecodingCertificate:
    """Build the certificate and verify it on all monomials with exponents below d."""
    cert = build_certificate(rw, ell)
    cert.verify(d)
    return cert


@dataclass
class DecodedRows:
    cert: DecodingCertificate
    pre_psi: list  # l rows over Q(zeta)
    rows: np.ndarray  # psi image, l x m^n over F_p
    target: np.ndarray  # Coeff(M^l_{m,n}(u'))

    @property
    def holds(self) -> bool:
        return bool(np.array_equal(self.rows, self.target))


def decode_M_row(rw: RichLineWeights, ell: int, m: int) -> DecodedRows:
    """Rebuild every row of Coeff(M^l_{m,n}(u')) as psi of a Q(zeta)-combination of U-rows on the line."""
    cert = build_certificate(rw, ell)
    pre = cert.coefficient_rows(m)
    p = rw.p
    img = np.zeros((ell, m**rw.n), dtype=np.int64)
    for i, row in enumerate(pre):
        for j, x in enumerate(row):
            if not x.is_p_integral():
                raise PIntegralityError("decoded row entry is not p-integral")
            img[i, j] = psi(x)
    target = coeff_matrix(build_M_rows([rw.u_lift], m, rw.n, ell, p)).data
    out = DecodedRows(cert, pre, img, target)
    if not out.holds:
        raise DecodingError("decoded rows differ from the coefficient rows")
    return out


# --- expected rank experiment ---------------------------------------------------------------

MAX_COLUMNS = 4096
MAX_N = 12


@dataclass
class ExpectedRankReport:
    N: int
    n: int
    m: int
    p0: int
    N0: int
    N1: int
    w: int
    trials: int
    exact: bool
    ranks: list
    rank_U: list
    bound_achieved: RatInterval
    bound_literal: RatInterval
    split_sizes: list
    lhs_max: int
    quotient_ok: bool
    decode_ok: bool
    flags: list = field(default_factory=list)

    @property
    def mean(self) -> Fraction:
        return Fraction(sum(self.ranks), len(self.ranks)) if self.ranks else Fraction(0)

    @property
    def holds(self) -> bool:
        return self.mean >= self.bound_achieved.hi and self.quotient_ok and self.decode_ok

    def to_dict(self) -> dict:
        return {
            "N": self.N,
            "n": self.n,
            "m": self.m,
            "p0": self.p0,
            "N0": self.N0,
            "N1": self.N1,
            "w": self.w,
            "trials": self.trials,
            "exact_enumeration": self.exact,
            "mean_rank": float(self.mean),
            "min_rank": min(self.ranks) if self.ranks else 0,
            "max_rank": max(self.ranks) if self.ranks else 0,
            "bound": float(self.bound_achieved.hi),
            "bound_stated_formula": float(self.bound_literal.hi),
            "split_sizes": self.split_sizes,
            "rank_upper_bound": self.lhs_max,
            "quotient_rank_ok": self.quotient_ok,
            "decoding_ok": self.decode_ok,
            "holds": self.holds,
            "flags": self.flags,
        }


def enumerate_gl(n: int, p: int, k: int) -> list[np.ndarray]:
    q = p**k
    out = []
    for entries in itertools.product(range(q), repeat=n * n):
        G = np.array(entries, dtype=np.int64).reshape(n, n)
        if det_mod_p(G, p):
            out.append(G)
    return out


def _crt_matrix(A0, N0: int, N1: int) -> np.ndarray:
    """Integer matrix congruent to A0 mod N0 and to the identity mod N1."""
    n = A0.shape[0]
    if N1 == 1:
        return np.asarray(A0, dtype=np.int64) % N0
    N = N0 * N1
    e0 = N1 * pow(N1, -1, N0)  # 1 mod N0, 0 mod N1
    e1 = N0 * pow(N0, -1, N1)
    return (np.asarray(A0, dtype=np.int64) * e0 + np.eye(n, dtype=np.int64) * e1) % N


def _lifts(u0: tuple, N0: int, p0: int, mw: int) -> list[tuple]:
    """u' in V_{mw,p0} whose reduction mod N0 lies in the projective class of u0."""
    cls = canonicalize(u0, N0)
    out = []
    for v in exponent_grid(mw, len(u0)):
        if any(x % p0 for x in v) and canonicalize([x % N0 for x in v], N0) == cls:
            out.append(v)
    return out


def _trial_rows(f: GridFunction, G, p0, k0, N0, N1, m, w, lines, check_quotient):
    """Rows of M_G (over F_p0) and of the pre-psi matrix, plus the rank of U_G if requested."""
    N, n = f.N, f.n
    mw = m * w
    H = _crt_matrix(inverse_mod_pk(G, p0, k0), N0, N1)
    fG = transform(f, H)
    ncols_mono = mw**n
    ncols_y = N1**n
    y_index = {y: i for i, y in enumerate(exponent_grid(N1, n))}
    M_rows, pre_rows = [], []
    decode_ok = True
    for (base, direction) in lines:
        a0 = tuple(x % N0 for x in base)
        d0 = tuple(x % N0 for x in direction)
        a1 = tuple(x % N1 for x in base)
        d1 = tuple(x % N1 for x in direction)
        Ga0 = tuple(int(x) for x in (G @ np.array(a0)) % N0)
        Gd0 = tuple(int(x) for x in (G @ np.array(d0)) % N0)
        for s in range(N1):
            y = tuple((x + s * u) % N1 for x, u in zip(a1, d1))
            for lift in _lifts(Gd0, N0, p0, mw):
                dl = tuple(x % N0 for x in lift)
                pts = [tuple((x + lam * u) % N0 for x, u in zip(Ga0, dl)) for lam in range(N0)]
                vals = [fG(_join(x0, y, N0, N1)) for x0 in pts]
                g = sum(vals)
                if g == 0:
                    continue
                pi = tuple(m * v for v in vals)
                for j in range(1, m * g + 1):
                    rw = RichLineWeights(p0, k0, Ga0, dl, pi, lift)
                    try:
                        dec = decode_M_row(rw, j, mw)
                    except (DecodingError, PIntegralityError):
                        decode_ok = False
                        continue
                    yi = y_index[y]
                    for i in range(j):
                        row = np.zeros(ncols_mono * ncols_y, dtype=np.int64)
                        row[np.arange(ncols_mono) * ncols_y + yi] = dec.rows[i]
                        M_rows.append(row)
                        if check_quotient:
                            pre = [CycloRat.from_int(p0, k0, 0)] * (ncols_mono * ncols_y)
                            for c, x in enumerate(dec.pre_psi[i]):
                                pre[c * ncols_y + yi] = x
                            pre_rows.append(pre)
    return fG, M_rows, pre_rows, decode_ok


def _join(x0, y, N0, N1):
    if N1 == 1:
        return x0
    N = N0 * N1
    e0 = N1 * pow(N1, -1, N0)
    e1 = N0 * pow(N0, -1, N1)
    return tuple((a * e0 + b * e1) % N for a, b in zip(x0, y))


def _U_rank(fG: GridFunction, p0, k0, N0, N1, m, mw) -> int:
    """Q(zeta)-rank of the rows U^(alpha)_{mw}(zeta^x0) (x) 1_y, wt(alpha) < m f_G(x)."""
    n = fG.n
    F = CyclotomicField(p0, k0)
    ncols_y = N1**n
    rows = []
    for x0 in exponent_grid(N0, n):
        for yi, y in enumerate(exponent_grid(N1, n)):
            mult = m * fG(_join(x0, y, N0, N1))
            for alpha in orders_below(n, mult):
                U = eval_row(mw, alpha, _zeta_point(p0, k0, x0), F)
                row = [F.zero()] * (len(U) * ncols_y)
                for c, x in enumerate(U):
                    row[c * ncols_y + yi] = x
                rows.append(row)
    return rref(F, rows).rank if rows else 0


def expected_rank_experiment(
    f: GridFunction,
    m: int,
    trials: int = 20,
    seed=0,
    exact: bool = False,
    check_quotient: bool = True,
    log_base="natural",
) -> ExpectedRankReport:
    """Average F_p0-rank of the decoded matrix M_G over random G in GL_n(Z/p0^k0), against its lower bound.

    p0 is the largest prime of N; G acts on the p0-part only.  With ``exact``
    every G is enumerated instead of sampled.
    """
    N, n = f.N, f.n
    fac = factorize(N).descending()
    p0, k0 = fac[0]
    N0 = p0**k0
    N1 = N // N0
    if N > MAX_N or n > 2 or m > 2:
        raise BudgetError(f"expected-rank experiment limited to N <= {MAX_N}, n <= 2, m <= 2")
    profile = maximal_profile(f)
    w = mweight(f, p0, profile) if profile.wstar > 0 else 0
    mw = m * w
    lhs_max = sum(comb(m * int(v) + n - 1, n) for v in f.values)
    if w == 0:
        zero = RatInterval.point(0)
        return ExpectedRankReport(N, n, m, p0, N0, N1, 0, trials, exact, [0] * max(trials, 1), [], zero, zero, [], 0, True, True)
    if (mw**n) * (N1**n) > MAX_COLUMNS:
        raise BudgetError(f"matrix width {(mw ** n) * (N1 ** n)} exceeds {MAX_COLUMNS}")
    # lines of f and their slice profiles
    lines = []
    dirs = profile.directions
    for d, u in enumerate(dirs):
        base = tuple(int(x) for x in np.unravel_index(int(profile.base_offsets[d]), (N,) * n))
        lines.append((base, u.coords))
    slices = []
    for base, u in lines:
        g = []
        for s in range(N1):
            tot = 0
            for j in range(N0):
                t = s + j * N1
                tot += f(tuple((b + t * c) % N for b, c in zip(base, u)))
            g.append(tot)
        slices.append(g)

    sb = split_basis(mw, n, mw, p0)
    sizes = sb.sizes
    stated = [rank_bound_formula(j, n, p0) - rank_bound_formula(j - 1, n, p0) for j in range(1, mw + 1)]
    C = constant_set(N1, n, log_base) if N1 > 1 else RatInterval.point(1)
    ach = Fraction(0)
    lit = Fraction(0)
    for g in slices:
        for j in range(1, mw + 1):
            i = -(-j // m)
            b = sum(1 for v in g if v >= i)
            ach += Fraction(b**n * sizes[j - 1])
            lit += Fraction(b**n * stated[j - 1])
    P = len(dirs)
    bound_achieved = C * RatInterval.point(ach / P)
    bound_literal = C * RatInterval.point(lit / P)

    if exact:
        Gs = enumerate_gl(n, p0, k0)
    else:
        rng = np.random.default_rng(seed)
        Gs = [random_gl(n, p0, k0, rng) for _ in range(trials)]
    ranks, rank_U = [], []
    quotient_ok = decode_ok = True
    for G in Gs:
        fG, M_rows, pre_rows, ok = _trial_rows(f, G, p0, k0, N0, N1, m, w, lines, check_quotient)
        decode_ok &= ok
        r = rank_fp(np.array(M_rows, dtype=np.int64), p0) if M_rows else 0
        ranks.append(r)
        if check_quotient:
            rep = quotient_rank_check(pre_rows, 1) if pre_rows else None
            ru = _U_rank(fG, p0, k0, N0, N1, m, mw)
            rank_U.append(ru)
            if rep is not None:
                quotient_ok &= rep.holds and rep.rank_fp == r and ru >= rep.rank_cyclo
            quotient_ok &= ru >= r and r <= lhs_max
    flags = []
    if bound_literal.hi > lhs_max:
        flags.append(f"stated-formula bound {float(bound_literal.hi):.4g} exceeds the rank ceiling {lhs_max}")
    if sb.flags:
        flags.extend(sb.flags)
    return ExpectedRankReport(
        N, n, m, p0, N0, N1, w, len(Gs), exact, ranks, rank_U, bound_achieved, bound_literal, sizes, lhs_max,
        quotient_ok, decode_ok, flags,
    )
