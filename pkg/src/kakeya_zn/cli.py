"""Command-line front end: run checks and experiments, print JSON or CSV reports.

Exit status is 0 when every reported ``holds`` flag is true, 1 when some check fails,
2 for malformed input and 3 when a request exceeds the configured budget.
"""

from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import os
import sys
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import geometry
from .bounds import check_m_eps, check_maximal, check_set_bound, dual_norm_check, random_line_choice
from .decoding import RichLineWeights, decode_rich_line, expected_rank_experiment
from .ffmax import FieldFunction, directions, ffmax_check, field_maximal, ladder
from .geometry import BudgetError, GridFunction, Line, is_m_eps_kakeya, line_table, maximal_profile
from .matrices import (
    build_M,
    coeff_matrix,
    count_nonzero_diagonals,
    ldu_vandermonde,
    rank_bound_formula,
    rank_fp,
    split_basis,
)
from .polymethod import default_field, random_poly, schwartz_zippel_check
from .ring import factorize
from .projective import canonicalize, enumerate_projective, projective_size

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3

# CLI aliases for the inequality checks
THEOREMS = {
    "1.2": "set-size",
    "1.4": "m-eps-kakeya",
    "1.5": "maximal",
    "1.8": "maximal-field",
    "1.9": "maximal",
    "conj": "dual-norm",
}


class InputError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    seed: int = 0
    trials: int = 20
    fmt: str = "json"
    log_base: str = "natural"
    max_grid: int = 10**6
    max_dim: int = 4000


@dataclass
class Result:
    payload: dict
    holds: bool
    table: list | None = None


# --- helpers ------------------------------------------------------------------------------------


def _default_seed() -> int:
    env = os.environ.get("KAKEYA_SEED")
    if env is None:
        return 0
    try:
        return int(env, 0) % 2**64
    except ValueError:
        raise InputError(f"KAKEYA_SEED={env!r} is not an integer") from None


def _frac(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise InputError(f"{text!r} is not a rational number") from None


def _load_json(path: str) -> dict:
    try:
        with open(path) if path != "-" else sys.stdin as fh:
            data = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise InputError(f"{path} must hold a JSON object")
    return data


def _load_grid(path: str, cfg: RunConfig) -> GridFunction:
    data = _load_json(path)
    try:
        N, n = int(data["N"]), int(data["n"])
    except (KeyError, ValueError, TypeError):
        raise InputError("grid function JSON needs integer 'N' and 'n'") from None
    if N**n > cfg.max_grid:
        raise BudgetError(f"grid {N}^{n} exceeds --max-grid {cfg.max_grid}")
    try:
        return GridFunction.from_dict(data)
    except (ValueError, TypeError) as exc:
        if isinstance(exc, BudgetError):
            raise
        raise InputError(str(exc)) from None


def _load_field(path: str, cfg: RunConfig) -> FieldFunction:
    data = _load_json(path)
    try:
        q, n = int(data["q"]), int(data["n"])
    except (KeyError, ValueError, TypeError):
        raise InputError("field function JSON needs integer 'q' and 'n'") from None
    if q**n > cfg.max_grid:
        raise BudgetError(f"grid {q}^{n} exceeds --max-grid {cfg.max_grid}")
    try:
        return FieldFunction.from_dict(data)
    except (ValueError, TypeError) as exc:
        if isinstance(exc, BudgetError):
            raise
        raise InputError(str(exc)) from None


def _flatten(d, prefix="") -> list[tuple[str, object]]:
    out = []
    if isinstance(d, dict):
        for k, v in d.items():
            out.extend(_flatten(v, f"{prefix}.{k}" if prefix else str(k)))
    elif isinstance(d, list) and d and isinstance(d[0], (dict, list)):
        for i, v in enumerate(d):
            out.extend(_flatten(v, f"{prefix}[{i}]"))
    else:
        out.append((prefix, json.dumps(d) if isinstance(d, list) else d))
    return out


def render(result: Result, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(result.payload, indent=2)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    if result.table:
        keys = list(result.table[0].keys())
        writer.writerow(keys)
        for row in result.table:
            writer.writerow([json.dumps(row[k]) if isinstance(row[k], (list, dict)) else row[k] for k in keys])
    else:
        writer.writerow(["key", "value"])
        writer.writerows(_flatten(result.payload))
    return buf.getvalue().rstrip("\n")


# --- subcommands --------------------------------------------------------------------------------


def cmd_projective(args, cfg: RunConfig) -> Result:
    if args.N < 2 or args.n < 1:
        raise InputError("need N >= 2 and n >= 1")
    if args.N**args.n > cfg.max_grid:
        raise BudgetError(f"N^n = {args.N ** args.n} exceeds --max-grid {cfg.max_grid}")
    dirs = enumerate_projective(args.N, args.n)
    size = projective_size(args.N, args.n)
    payload = {"N": args.N, "n": args.n, "size": len(dirs), "formula": size, "holds": len(dirs) == size}
    payload["directions"] = [list(u.coords) for u in dirs]
    table = [{"index": i, "direction": list(u.coords)} for i, u in enumerate(dirs)]
    return Result(payload, payload["holds"], table)


def cmd_maxfn(args, cfg: RunConfig) -> Result:
    data = _load_json(args.input)
    if "q" in data:
        f = _load_field(args.input, cfg)
        fstar = field_maximal(f)
        dirs = [list(u) for u in directions(f.field, f.n)]
        rows = [{"u": u, "fstar": int(v)} for u, v in zip(dirs, fstar)]
        payload = {"q": f.q, "n": f.n, "wstar": int(fstar.max()), "directions": rows, "holds": True}
        return Result(payload, True, rows)
    f = _load_grid(args.input, cfg)
    prof = maximal_profile(f)
    payload = prof.to_dict()
    payload["wstar"] = prof.wstar
    payload["holds"] = True
    rows = [{"u": list(u.coords), "fstar": v, "base": list(L.base)} for u, v, L in prof.items()]
    return Result(payload, True, rows)


def _line_choice(data: dict, N: int, n: int, seed: int) -> dict:
    if "lines" not in data:
        return random_line_choice(N, n, seed)
    choice = {}
    try:
        for item in data["lines"]:
            u = canonicalize(item["direction"], N)
            choice[u] = Line(tuple(item["base"]), u)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed line choice: {exc}") from None
    return choice


def cmd_verify(args, cfg: RunConfig) -> Result:
    kind = THEOREMS[args.theorem]
    if kind == "maximal-field":
        f = _load_field(args.input, cfg)
        rep = ffmax_check(f)
        payload = rep.to_dict()
        ok = rep.holds
        if args.m is not None:
            prof = ladder(f, args.m)
            payload["ladder"] = prof.to_dict()
            ok = ok and prof.eq3_holds and prof.rearrangement_holds
        payload["holds"] = ok
        return Result(payload, ok)
    if kind == "dual-norm":
        data = _load_json(args.input)
        try:
            N, n = int(data["N"]), int(data["n"])
        except (KeyError, ValueError, TypeError):
            raise InputError("dual-norm input needs integer 'N' and 'n'") from None
        if N**n > cfg.max_grid:
            raise BudgetError(f"grid {N}^{n} exceeds --max-grid {cfg.max_grid}")
        try:
            rep = dual_norm_check(_line_choice(data, N, n, cfg.seed), N, n, log_base=cfg.log_base)
        except ValueError as exc:
            raise InputError(str(exc)) from None
        return Result(rep.to_dict(), rep.holds)
    f = _load_grid(args.input, cfg)
    try:
        if kind == "set-size":
            rep = check_set_bound(f, log_base=cfg.log_base)
        elif kind == "m-eps-kakeya":
            if args.m is None or args.eps is None:
                raise InputError("--m and --eps are required for this check")
            rep = check_m_eps(f, args.m, _frac(args.eps), log_base=cfg.log_base)
        else:
            rep = check_maximal(f, log_base=cfg.log_base)
    except InputError:
        raise
    except ValueError as exc:
        raise InputError(str(exc)) from None
    return Result(rep.to_dict(), rep.holds)


def _rank_row(p: int, ell: int, n: int, cfg: RunConfig) -> dict:
    m = ell
    if m**n > cfg.max_dim:
        raise BudgetError(f"matrix width {m ** n} exceeds --max-dim {cfg.max_dim}")
    cols = m**n
    rank = rank_fp(coeff_matrix(build_M(m, n, ell, p)).data, p)
    oracle = count_nonzero_diagonals(ell, m, n, p)
    formula = rank_bound_formula(ell, n, p)
    applicable = formula <= cols
    flags = []
    if not applicable:
        flags.append(f"formula {formula} exceeds the {cols} columns")
    elif oracle < formula:
        flags.append(f"oracle {oracle} is below formula {formula}")
    return {
        "p": p,
        "l": ell,
        "n": n,
        "m": m,
        "columns": cols,
        "formula": formula,
        "oracle": oracle,
        "rank": rank,
        "formula_applicable": applicable,
        "holds": rank >= oracle,
        "flags": flags,
    }


def cmd_rank_exp(args, cfg: RunConfig) -> Result:
    if args.input:
        f = _load_grid(args.input, cfg)
        try:
            rep = expected_rank_experiment(f, args.m, trials=cfg.trials, seed=cfg.seed, exact=args.exact, log_base=cfg.log_base)
        except ValueError as exc:
            if isinstance(exc, BudgetError):
                raise
            raise InputError(str(exc)) from None
        return Result(rep.to_dict(), rep.holds)
    if args.p is None or args.l is None:
        raise InputError("rank-exp needs --p and --l (or --input for the expected-rank experiment)")
    if args.p < 2 or factorize(args.p).factors != ((args.p, 1),):
        raise InputError(f"--p {args.p} is not prime")
    if args.l < 1 or args.n_vars < 1:
        raise InputError("need l >= 1 and n-vars >= 1")
    levels = range(1, args.l + 1) if args.sweep else [args.l]
    rows = [_rank_row(args.p, ell, args.n_vars, cfg) for ell in levels]
    payload = {"rows": rows, "holds": all(r["holds"] for r in rows)}
    if args.split:
        sb = split_basis(args.l, args.n_vars, args.l, args.p)
        payload["split_basis"] = sb.to_dict()
        payload["split_basis"]["verified"] = sb.verify()
        payload["holds"] = payload["holds"] and sb.verify() and sb.total >= sb.count_oracle
    return Result(payload, payload["holds"], rows)


def cmd_ldu(args, cfg: RunConfig) -> Result:
    if not 1 <= args.m <= 12:
        raise BudgetError("ldu is limited to 1 <= m <= 12")
    dec = ldu_vandermonde(args.m)
    exact = dec.verify()
    diag_ok = all(dec.D[j][j] == dec.diagonal_formula(j) for j in range(args.m))
    Linv = dec.L_inverse()
    payload = {
        "m": args.m,
        "reconstructs": exact,
        "diagonal_matches_product": diag_ok,
        "L": dec.L,
        "D": dec.D,
        "L_inverse": Linv,
        "holds": exact and diag_ok,
    }
    return Result(payload, payload["holds"])


def cmd_decode(args, cfg: RunConfig) -> Result:
    p, k, n, ell = args.p, args.k, args.n_vars, args.l
    q = p**k
    if n < 1 or k < 1 or ell < 1:
        raise InputError("need k, n-vars and l positive")
    if ell > q:
        raise InputError(f"need l <= p^k = {q}")
    if q > 9 or n > 2:
        raise BudgetError("decode is limited to p^k <= 9 and n-vars <= 2")
    if args.pi:
        pi = [int(x) for x in args.pi.split(",")]
    else:
        pi = [1] * q
    base = tuple(int(x) for x in args.base.split(",")) if args.base else (0,) * n
    if len(base) != n:
        raise InputError(f"--base needs {n} coordinates")
    dirs = [canonicalize(tuple(int(x) for x in args.direction.split(",")), q)] if args.direction else enumerate_projective(q, n)
    certs, rows = [], []
    for u in dirs:
        try:
            rw = RichLineWeights(p, k, base, u.coords, pi)
            cert = decode_rich_line(rw, ell, args.d)
        except ValueError as exc:
            raise InputError(str(exc)) from None
        rows.append({"u": list(u.coords), "a": list(base), "checks": cert.checks, "verified_degree": cert.verified_degree, "holds": True})
        certs.append(cert.to_dict())
    payload = {"p": p, "k": k, "n": n, "l": ell, "d": args.d, "certificates": certs, "holds": True}
    return Result(payload, True, rows)


def cmd_sz_test(args, cfg: RunConfig) -> Result:
    q, n = args.q, args.n_vars
    if q**n > cfg.max_grid or q > 16 or n > 3:
        raise BudgetError("sz-test is limited to q <= 16, n-vars <= 3")
    try:
        F = default_field(q)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    rng = np.random.default_rng(cfg.seed)
    deg = args.deg if args.deg is not None else q
    rows = []
    while len(rows) < cfg.trials:
        Q = random_poly(F, n, deg, rng)
        if Q.is_zero():
            continue
        rep = schwartz_zippel_check(Q, F.elements())
        rows.append({"trial": len(rows), "degree": Q.degree, "lhs": rep.lhs, "rhs": rep.rhs, "holds": rep.holds})
    ok = all(r["holds"] for r in rows)
    payload = {"q": q, "n": n, "trials": cfg.trials, "max_degree": deg, "seed": cfg.seed, "results": rows, "holds": ok}
    return Result(payload, ok, rows)


# --- search for small (m, eps)-Kakeya sets ----------------------------------------------------

EXHAUSTIVE_CHECKS = 20000


def _greedy_kakeya(N: int, n: int, m: int, eps: Fraction, rng) -> GridFunction:
    table = line_table(N, n)
    D = table.members.shape[0]
    need = -((-eps.numerator * D) // eps.denominator)
    S = GridFunction.zeros(N, n)
    while True:
        sums = S.values[table.members].sum(axis=-1)  # (D, lines)
        best = sums.max(axis=1)
        done = int((best >= m).sum())
        if done >= need:
            break
        open_dirs = np.flatnonzero(best < m)
        deficit = m - best[open_dirs]
        pick = open_dirs[deficit == deficit.min()]
        d = int(pick[rng.integers(len(pick))])
        line = int(np.flatnonzero(sums[d] == best[d])[0])
        pts = [o for o in table.members[d, line] if S.values[o] == 0]
        S.values[pts[: m - best[d]]] = 1
    # prune points that are not needed
    for o in np.flatnonzero(S.values):
        S.values[o] = 0
        if not is_m_eps_kakeya(S, m, eps):
            S.values[o] = 1
    return S


def cmd_search(args, cfg: RunConfig) -> Result:
    N, n, m = args.N, args.n, args.m
    eps = _frac(args.eps)
    if N < 2 or n < 1 or not 0 < eps <= 1 or not 1 <= m <= N:
        raise InputError("need N >= 2, n >= 1, 1 <= m <= N and 0 < eps <= 1")
    if N**n > 5000:
        raise BudgetError(f"search-kakeya is limited to N^n <= 5000 (got {N ** n})")
    rng = np.random.default_rng(cfg.seed)
    S = _greedy_kakeya(N, n, m, eps, rng)
    method = "greedy"
    status = "skipped"
    size = S.total()
    checks = 0
    for s in range(m, size):
        # sizes are tried in order, so the first hit is a minimum
        hit = None
        for combo in itertools.combinations(range(N**n), s):
            checks += 1
            if checks > EXHAUSTIVE_CHECKS:
                break
            T = GridFunction.zeros(N, n)
            T.values[list(combo)] = 1
            if is_m_eps_kakeya(T, m, eps):
                hit = T
                break
        if hit is not None:
            S, method, status = hit, "exhaustive", "complete"
            break
        if checks > EXHAUSTIVE_CHECKS:
            status = "partial"
            break
    else:
        status = "complete"
    rep = check_m_eps(S, m, eps, log_base=cfg.log_base)
    payload = {
        "N": N,
        "n": n,
        "m": m,
        "eps": str(eps),
        "size": S.total(),
        "found_by": method,
        "exhaustive": status,
        "exhaustive_checks": min(checks, EXHAUSTIVE_CHECKS),
        "points": [list(x) for x in S.support()],
        "bound": rep.to_dict(),
        "holds": rep.holds,
    }
    return Result(payload, rep.holds)


# --- argument parsing ---------------------------------------------------------------------------


def _common() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None, help="64-bit seed (default: $KAKEYA_SEED or 0)")
    common.add_argument("--trials", type=int, default=20)
    common.add_argument("--format", dest="fmt", choices=["json", "csv"], default="json")
    common.add_argument("--log-base", choices=["natural", "2"], default="natural", help="base of unsubscripted logarithms")
    common.add_argument("--max-grid", type=int, default=10**6, help="cap on N^n")
    common.add_argument("--max-dim", type=int, default=4000, help="cap on matrix dimensions")
    common.add_argument("--output", help="write the report to this file instead of stdout")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="kakeya-zn", description="Exact checks of maximal Kakeya bounds over Z/NZ and F_q.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("projective", parents=[common], help="enumerate P(Z/NZ)^(n-1)")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_projective)

    p = sub.add_parser("maxfn", parents=[common], help="maximal function of a grid function")
    p.add_argument("--input", required=True)
    p.set_defaults(func=cmd_maxfn)

    p = sub.add_parser("verify", parents=[common], help="check one of the inequalities")
    p.add_argument("--theorem", choices=list(THEOREMS), required=True)
    p.add_argument("--input", required=True)
    p.add_argument("--m", type=int)
    p.add_argument("--eps")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("rank-exp", parents=[common], help="rank of Coeff(M^l) against the diagonal count and closed form")
    p.add_argument("--p", type=int)
    p.add_argument("--l", type=int)
    p.add_argument("--n-vars", type=int, default=1)
    p.add_argument("--sweep", action="store_true", help="report every l' <= l")
    p.add_argument("--split", action="store_true", help="also build the split basis")
    p.add_argument("--input", help="grid function for the expected-rank experiment")
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--exact", action="store_true", help="enumerate GL instead of sampling")
    p.set_defaults(func=cmd_rank_exp)

    p = sub.add_parser("ldu", parents=[common], help="LDU factorisation of the Vandermonde matrix over Z[z]")
    p.add_argument("--m", type=int, required=True)
    p.set_defaults(func=cmd_ldu)

    p = sub.add_parser("decode", parents=[common], help="decoding certificates for rich lines")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--n-vars", type=int, required=True)
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--d", type=int, default=3, help="verify monomials with exponents below d")
    p.add_argument("--direction", help="comma separated; default: every direction")
    p.add_argument("--base", help="comma separated base point (default 0)")
    p.add_argument("--pi", help="comma separated weights per lambda (default all 1)")
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("sz-test", parents=[common], help="Schwartz-Zippel with multiplicities on random polynomials")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--n-vars", type=int, required=True)
    p.add_argument("--deg", type=int)
    p.set_defaults(func=cmd_sz_test)

    p = sub.add_parser("search-kakeya", parents=[common], help="small (m, eps)-Kakeya sets against the lower bound")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--eps", required=True)
    p.set_defaults(func=cmd_search)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        seed = args.seed if args.seed is not None else _default_seed()
        cfg = RunConfig(args.command, seed % 2**64, args.trials, args.fmt, args.log_base, args.max_grid, args.max_dim)
        if cfg.trials < 1:
            raise InputError("--trials must be positive")
        result = args.func(args, cfg)
    except BudgetError as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (InputError, geometry.InvalidPrimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    text = render(result, cfg.fmt)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return EXIT_OK if result.holds else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
