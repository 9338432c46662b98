from __future__ import annotations

import math
from fractions import Fraction

import mpmath
import pytest

from kakeya_zn.bounds import (
    REPORT_IDS,
    StructuralError,
    ceil_log,
    check_m_eps,
    check_maximal,
    check_set_bound,
    constant_general,
    constant_pk,
    constant_set,
    divisor_product,
    dual_norm_check,
    lines_through_origin,
    random_line_choice,
)
from kakeya_zn.geometry import GridFunction, random_grid_function

THREE = [(0, 0), (1, 0), (0, 1)]


def test_ceil_log():
    assert ceil_log(2, 1) == 0
    assert ceil_log(2, 2) == 1
    assert ceil_log(2, 5) == 3
    assert ceil_log(3, 9) == 2
    assert ceil_log(2, Fraction(1, 2)) == -1
    with pytest.raises(ValueError):
        ceil_log(2, 0)


def test_constant_set_examples():
    assert constant_set(2, 2).is_exact and constant_set(2, 2).lo == Fraction(1, 16)
    assert constant_set(4, 2).lo == Fraction(1, 36)
    c6 = constant_set(6, 2)
    mpmath.mp.dps = 60
    ref = (1 / (mpmath.log(3) + 1) / 16) ** 2
    assert mpmath.mpf(c6.lo.numerator) / c6.lo.denominator <= ref <= mpmath.mpf(c6.hi.numerator) / c6.hi.denominator
    assert float(c6.hi - c6.lo) < 1e-20
    assert abs(float(c6.mid) - 8.87e-4) < 1e-6


def test_constant_set_base2_flag():
    c = constant_set(6, 2, log_base="2")
    ref = (1 / (math.log2(3) + 1) / 16) ** 2
    assert abs(float(c.mid) - ref) < 1e-15


def test_constant_pk_examples():
    assert constant_pk(2, 1, 2, 2).selected == Fraction(1, 16)
    c = constant_pk(5, 1, 2, 5)
    assert c.variant == "improved" and c.selected == Fraction(25, 196)
    assert constant_pk(2, 2, 2, 4).selected == Fraction(1, 36)
    with pytest.raises(ValueError):
        constant_pk(2, 1, 2, 0)


def test_constant_general_examples():
    c = constant_general(6, 2, 3)
    ref = (1 / (2 * (math.log(3) + 1) * 2)) ** 2 * (1 / (2 * (1 + 1))) ** 2
    assert abs(float(c.mid) - ref) < 1e-15
    # mw = 1: the log(1) term vanishes and only ceil(log_3 2) = 1 remains
    c1 = constant_general(6, 2, 1)
    assert abs(float(c1.mid) - (1 / (2 * 1 * 1)) ** 2 * (1 / 4) ** 2) < 1e-15
    vals = [float(constant_general(6, 2, mw).mid) for mw in range(1, 10)]
    assert all(a >= b for a, b in zip(vals, vals[1:]))
    with pytest.raises(StructuralError):
        constant_general(8, 2, 2)


def test_check_set_bound_three_points():
    rep = check_set_bound(GridFunction.from_points(2, 2, THREE))
    # f* = 2 in all three directions, so the mean of f*^2 is 4
    assert rep.lhs == 3 and rep.rhs.lo == Fraction(1, 4) and rep.holds
    assert rep.ratio == 12.0
    assert rep.to_dict()["theorem"] == REPORT_IDS["set-size"]


def test_check_set_bound_trivial_cases():
    rep = check_set_bound(GridFunction.zeros(2, 2))
    assert rep.lhs == 0 and rep.rhs.hi == 0 and rep.holds
    rep = check_set_bound(GridFunction.constant(2, 2, 1))
    assert rep.lhs == 4 and rep.rhs.lo == Fraction(1, 4) and rep.holds


def test_check_m_eps_examples():
    S = GridFunction.from_points(2, 2, THREE)
    rep = check_m_eps(S, 2, 1)
    assert rep.rhs.lo == Fraction(1, 4) and rep.holds and not rep.flags
    assert check_m_eps(S, 0, 1).rhs.hi == 0
    rep = check_m_eps(GridFunction.constant(4, 2, 1), 4, 1)
    assert rep.rhs.lo == Fraction(4, 9) and rep.holds
    assert check_m_eps(S, 2, 1).to_dict()["theorem"] == "1.4"


def test_check_m_eps_vacuous_is_flagged():
    S = GridFunction.from_points(2, 2, [(0, 0)])
    rep = check_m_eps(S, 2, 1)
    assert rep.flags


def test_check_maximal_examples():
    rep = check_maximal(GridFunction.constant(2, 2, 1))
    assert rep.lhs == 4 and rep.rhs.lo == Fraction(1, 4) and rep.holds
    rep = check_maximal(GridFunction.zeros(3, 2))
    assert rep.lhs == 0 and rep.holds
    rep = check_maximal(GridFunction.constant(6, 2, 1))
    assert rep.lhs == 36 and rep.holds
    # the largest prime 3 carries slices of three points
    assert rep.params["mweight"] == 3
    assert rep.to_dict()["theorem"] == "1.9"


def test_set_and_maximal_agree_when_constants_coincide(rng):
    # N = 2, n = 2 and f* reaching N make both constants 1/16
    for _ in range(30):
        S = random_grid_function(2, 2, rng, max_value=1, density=0.7)
        a, b = check_set_bound(S), check_maximal(S)
        if b.params.get("wstar") == 2:
            assert a.rhs == b.rhs


def test_holds_is_conservative(rng):
    for N in (6, 12):
        for _ in range(30):
            f = random_grid_function(N, 2, rng)
            rep = check_maximal(f)
            assert rep.rhs.lo <= rep.rhs.hi
            if rep.holds:
                assert rep.lhs >= rep.rhs.hi


def test_divisor_product_examples():
    assert abs(float(divisor_product(2).mid) - math.log(2)) < 1e-15
    assert abs(float(divisor_product(12).mid) - 2 * math.log(2) * math.log(3)) < 1e-15
    assert abs(float(divisor_product(7).mid) - math.log(7)) < 1e-15


def test_dual_norm_three_lines_through_origin():
    rep = dual_norm_check(lines_through_origin(2, 2), 2, 2)
    assert abs(rep.lhs_norm - math.sqrt(12)) < 1e-12
    assert abs(rep.rhs_budget - math.sqrt(6)) < 1e-12
    assert abs(rep.ratio - math.sqrt(2)) < 1e-12
    assert rep.holds


def test_dual_norm_random_choice():
    rep = dual_norm_check(random_line_choice(3, 2, 0), 3, 2)
    assert rep.chain[0].holds  # norm identity
    assert rep.holds


def test_dual_norm_missing_direction():
    choice = lines_through_origin(3, 2)
    choice.pop(next(iter(choice)))
    with pytest.raises(StructuralError):
        dual_norm_check(choice, 3, 2)
