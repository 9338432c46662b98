"""Constants of the maximal Kakeya inequalities and checks of those inequalities.

Every constant that involves an unsubscripted logarithm is carried as a
:class:`RatInterval`; a check only reports ``holds`` when the exact left side
is at least the upper end of the right side.  Logarithms with an explicit base
p are ceiled, and those are computed exactly with integer arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .geometry import GridFunction, Line, MaximalProfile, is_m_eps_kakeya, line_points, maximal_profile, mweight
from .intervals import RatInterval, as_interval, log
from .projective import Direction, enumerate_projective, projective_size
from .ring import FactoredModulus, factorize


class StructuralError(ValueError):
    pass


# identifiers used by the report format and the CLI
REPORT_IDS = {
    "set-size": "1.2",
    "m-eps-kakeya": "1.4",
    "maximal-prime-power": "1.5",
    "maximal-field": "1.8",
    "maximal-general": "1.9",
    "dual-norm": "conj",
}


@dataclass
class BoundReport:
    theorem: str
    lhs: Fraction
    rhs: RatInterval
    constant: RatInterval
    holds: bool
    params: dict = field(default_factory=dict)
    flags: list = field(default_factory=list)

    @property
    def ratio(self) -> float:
        r = self.rhs.mid
        if r == 0:
            return math.inf if self.lhs > 0 else math.nan
        return float(Fraction(self.lhs) / r)

    def to_dict(self) -> dict:
        ratio = self.ratio
        return {
            "theorem": REPORT_IDS.get(self.theorem, self.theorem),
            "check": self.theorem,
            "lhs": _num(self.lhs),
            "rhs": float(self.rhs.mid),
            "rhs_interval": [float(self.rhs.lo), float(self.rhs.hi)],
            "constant": float(self.constant.mid),
            "holds": self.holds,
            "ratio": None if math.isnan(ratio) else (ratio if math.isfinite(ratio) else "inf"),
            "params": self.params,
            "flags": self.flags,
        }


def _num(x):
    x = Fraction(x)
    return int(x) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _report(theorem, lhs, rhs, constant, params, flags=()) -> BoundReport:
    rhs = as_interval(rhs)
    return BoundReport(theorem, Fraction(lhs), rhs, as_interval(constant), Fraction(lhs) >= rhs.hi, params, list(flags))


# --- integer logarithms -------------------------------------------------------------


def ceil_log(p: int, x) -> int:
    """Smallest integer e with p**e >= x, for rational x > 0 (may be negative)."""
    x = Fraction(x)
    if x <= 0:
        raise ValueError("ceil_log needs a positive argument")
    e = 0
    if x >= 1:
        while Fraction(p) ** e < x:
            e += 1
        return e
    while Fraction(p) ** (e - 1) >= x:
        e -= 1
    return e


def _descending(N) -> tuple[tuple[int, int], ...]:
    modulus = N if isinstance(N, FactoredModulus) else factorize(N)
    return modulus.descending()


def _positive_ceil(c: int) -> int:
    # ceil(log_p(w) + log_p(n)) is 0 only when w*n == 1; a zero factor would make the
    # constant infinite, so it is clamped to 1 (the inequality is trivial there).
    return max(c, 1)


# --- constants ----------------------------------------------------------------------


def constant_set(N, n: int, log_base="natural") -> RatInterval:
    """Constant of the set-size lower bound, primes taken largest first."""
    factors = _descending(N)
    c = RatInterval.point(1)
    for p, k in factors[:-1]:
        c = c / (k * log(p, log_base) + 1)
    for p, k in factors:
        c = c / (2 * (k + ceil_log(p, n)))
    return c**n


@dataclass(frozen=True)
class PrimePowerConstant:
    general: Fraction
    improved: Fraction | None
    selected: Fraction
    variant: str


def constant_pk(p: int, k: int, n: int, wstar: int) -> PrimePowerConstant:
    """Constant for N = p^k; the improved form applies when p > n."""
    if wstar < 1:
        raise ValueError("wstar must be >= 1 (a zero maximal function needs no constant)")
    general = Fraction(1, (2 * _positive_ceil(ceil_log(p, wstar * n))) ** n)
    improved = None
    if p > n:
        improved = Fraction(1, (ceil_log(p, wstar) + 1) ** n) / (1 + Fraction(n, p)) ** n
    if improved is not None:
        return PrimePowerConstant(general, improved, improved, "improved")
    return PrimePowerConstant(general, improved, general, "general")


def constant_general(N, n: int, mw: int, log_base="natural") -> RatInterval:
    """Constant for N with at least two prime factors; ``mw`` is the weight at the largest prime."""
    factors = _descending(N)
    if len(factors) < 2:
        raise StructuralError("constant_general needs at least two prime factors; use constant_pk")
    if mw < 1:
        raise ValueError("mw must be >= 1")
    p1, _ = factors[0]
    pr, kr = factors[-1]
    c = 1 / (2 * (log(mw, log_base) + 1) * _positive_ceil(ceil_log(p1, mw * n)))
    c = c / (2 * (kr + ceil_log(pr, n)))
    for p, k in factors[1:-1]:
        c = c / (2 * (k * log(p, log_base) + 1) * (k + ceil_log(p, n)))
    return c**n


def divisor_product(N, log_base="natural") -> RatInterval:
    """prod_i k_i log(p_i)."""
    out = RatInterval.point(1)
    for p, k in _descending(N):
        out = out * (k * log(p, log_base))
    return out


# --- inequality checks ----------------------------------------------------------------


def check_set_bound(S: GridFunction, profile: MaximalProfile | None = None, log_base="natural") -> BoundReport:
    if not S.is_indicator():
        raise ValueError("expected a 0/1 valued function")
    profile = maximal_profile(S) if profile is None else profile
    C = constant_set(S.N, S.n, log_base)
    mean = profile.power_mean(S.n)
    return _report("set-size", S.total(), C * mean, C, {"N": S.N, "n": S.n, "mean_fstar_n": _num(mean)})


def check_m_eps(S: GridFunction, m: int, eps, profile: MaximalProfile | None = None, log_base="natural") -> BoundReport:
    profile = maximal_profile(S) if profile is None else profile
    eps = Fraction(eps)
    C = constant_set(S.N, S.n, log_base)
    flags = [] if is_m_eps_kakeya(S, m, eps, profile) else ["vacuous: set is not (m, eps)-Kakeya"]
    return _report("m-eps-kakeya", S.total(), C * eps * m**S.n, C, {"N": S.N, "n": S.n, "m": m, "eps": _num(eps)}, flags)


def check_maximal(f: GridFunction, profile: MaximalProfile | None = None, log_base="natural") -> BoundReport:
    """Power-sum lower bound for f in terms of f*, dispatching on the number of prime factors."""
    profile = maximal_profile(f) if profile is None else profile
    n = f.n
    lhs = f.power_sum(n)
    mean = profile.power_mean(n)
    factors = _descending(f.N)
    params = {"N": f.N, "n": n, "mean_fstar_n": _num(mean)}
    if profile.wstar == 0:
        return _report("maximal-prime-power" if len(factors) == 1 else "maximal-general", lhs, 0, 0, params, ["degenerate: f* is identically zero"])
    if len(factors) == 1:
        p, k = factors[0]
        const = constant_pk(p, k, n, profile.wstar)
        params.update(wstar=profile.wstar, variant=const.variant, general_constant=_num(const.general))
        return _report("maximal-prime-power", lhs, const.selected * mean, const.selected, params)
    p1 = factors[0][0]
    mw = mweight(f, p1, profile)
    C = constant_general(f.N, n, mw, log_base)
    params.update(mweight=mw, p1=p1)
    return _report("maximal-general", lhs, C * mean, C, params)


# --- dual form of the maximal bound ---------------------------------------------------------


@dataclass
class ChainStep:
    name: str
    lhs: float
    rhs: float
    holds: bool


@dataclass
class DualNormReport:
    lhs_norm: float
    rhs_budget: float
    ratio: float
    final_bound: float
    chain: list
    maximal: BoundReport

    @property
    def holds(self) -> bool:
        return all(s.holds for s in self.chain) and self.maximal.holds

    def to_dict(self) -> dict:
        return {
            "theorem": REPORT_IDS["dual-norm"],
            "check": "dual-norm",
            "lhs": self.lhs_norm,
            "rhs": self.rhs_budget,
            "holds": self.holds,
            "ratio": self.ratio,
            "params": {"final_bound": self.final_bound},
            "chain": [s.__dict__ for s in self.chain],
        }


def _int_root_ceil(h: int, e: int) -> int:
    """Smallest integer c >= 0 with c**e >= h."""
    if h <= 0:
        return 0
    c = max(int(round(h ** (1.0 / e))) - 1, 0)
    while c**e < h:
        c += 1
    return c


def dual_norm_check(choice: dict, N: int, n: int, rtol: float = 1e-9, log_base="natural") -> DualNormReport:
    """Numerically replay the duality argument for one choice of line per direction."""
    if n < 2:
        raise ValueError("the dual inequality needs n >= 2")
    dirs = enumerate_projective(N, n)
    missing = [u for u in dirs if u not in choice]
    if missing:
        raise StructuralError(f"no line chosen for {len(missing)} direction(s), e.g. {missing[0]}")
    h = GridFunction.zeros(N, n)
    for u in dirs:
        for x in line_points(choice[u]):
            h.values[h.offset(x)] += 1
    hv = h.values.astype(float)
    e = n - 1
    gv = hv ** (1.0 / e)
    fv = np.array([_int_root_ceil(int(v), e) for v in h.values], dtype=np.int64)
    f = GridFunction(N, n, fv)
    P = len(dirs)

    def close_le(a, b):
        return a <= b * (1 + rtol) + rtol

    chain = []
    hnorm = float(np.sum(hv ** (n / e)) ** (e / n))
    gnorm = float(np.sum(gv**n) ** (1.0 / n))
    identity = float(np.dot(gv, hv)) / gnorm if gnorm else 0.0
    chain.append(ChainStep("norm identity", hnorm, identity, abs(hnorm - identity) <= rtol * max(hnorm, 1.0)))
    # g <= f <= 2g, checked exactly via integer powers
    sandwich = all(int(c) ** e >= int(v) and int(c) ** e <= 2**e * int(v) for c, v in zip(fv, h.values))
    chain.append(ChainStep("g <= ceil(g) <= 2g", 0.0, 0.0, sandwich))
    fnorm = float(np.sum(fv.astype(float) ** n) ** (1.0 / n))
    hf = float(np.dot(hv, fv))
    step1 = 2 * hf / fnorm if fnorm else 0.0
    chain.append(ChainStep("||h|| <= 2<h,f>/||f||", hnorm, step1, close_le(hnorm, step1)))

    profile = maximal_profile(f)
    fprime = np.array([sum(f(x) for x in line_points(choice[u])) for u in dirs], dtype=float)
    fstar = np.array([profile.value(u) for u in dirs], dtype=float)
    chain.append(ChainStep("f* >= f'", float(fprime.sum()), float(fstar.sum()), bool((fstar >= fprime).all())))
    maximal = check_maximal(f, profile, log_base)
    C_lo = float(maximal.constant.lo) if maximal.constant.lo > 0 else math.nan
    fp_norm = float(np.sum(fprime**n) ** (1.0 / n))
    if fp_norm and C_lo == C_lo:
        rhs2 = P ** (-1.0 / n) * C_lo ** (1.0 / n) * fp_norm
        chain.append(ChainStep("||f|| >= |P|^{-1/n} C^{1/n} ||f'||", fnorm, rhs2, close_le(rhs2, fnorm)))
        step3 = 2 * C_lo ** (-1.0 / n) * P ** (1.0 / n) * float(fprime.sum()) / fp_norm
        chain.append(ChainStep("||h|| <= 2C^{-1/n}|P|^{1/n} sum f'/||f'||", hnorm, step3, close_le(hnorm, step3)))
        final = 2 * C_lo ** (-1.0 / n) * P
        chain.append(ChainStep("Holder: ||h|| <= 2C^{-1/n}|P|", hnorm, final, close_le(hnorm, final)))
    else:
        final = math.inf
    budget = float((P * N) ** (e / n))
    return DualNormReport(hnorm, budget, hnorm / budget, final, chain, maximal)


def lines_through_origin(N: int, n: int) -> dict:
    return {u: Line((0,) * n, u) for u in enumerate_projective(N, n)}


def random_line_choice(N: int, n: int, seed) -> dict:
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    out = {}
    for u in enumerate_projective(N, n):
        out[u] = Line(tuple(int(c) for c in rng.integers(0, N, size=n)), u)
    return out


__all__ = [
    "BoundReport",
    "ChainStep",
    "DualNormReport",
    "PrimePowerConstant",
    "StructuralError",
    "ceil_log",
    "check_m_eps",
    "check_maximal",
    "check_set_bound",
    "constant_general",
    "constant_pk",
    "constant_set",
    "divisor_product",
    "dual_norm_check",
    "lines_through_origin",
    "random_line_choice",
    "projective_size",
    "Direction",
]
