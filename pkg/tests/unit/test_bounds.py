#!/usr/bin/env python3

"""
Unit test bounds.py
"""

__author__ = "Michael Teresi, Scott Teresi"

import logging
from fractions import Fraction
from math import comb, factorial, floor

import pytest

from multiperm import NonDivisible, ParamInvalid, SizeLimit
from multiperm.bounds import CapacityParams, bounds_report, bounds_table, capacity
from multiperm.bounds import ceil_bound, classical_uppers, clt_upper, design_code_size
from multiperm.bounds import egf_upper, exhaustive_ball_size, exhaustive_optimum
from multiperm.bounds import gv_hamming_lower, gv_ulam_ball_lower, gv_ulam_lower
from multiperm.bounds import interleaved_lower, layered_lower, layered_odd_lower
from multiperm.bounds import permutation_storage_bits
from multiperm.bounds import resolvable_design_lower, s_count, singleton_upper
from multiperm.bounds import storage_bits, table1, ulam_ball_upper
from multiperm.metrics import Metric
from multiperm.permutation import count_multipermutations

HUCZYNSKA_9_3 = [120960, 120960, 60480, 20160, 5040, 1008, 168, 24, 3]
SINGLETON_9_3 = [19683, 6561, 2187, 729, 243, 81, 27, 9, 3]
EGF_9_3 = [1680, 1680, 1050, 510, 210, 78, 27, 9, 3]
CLT_9_3 = [12077, 4560, 1700, 624, 224, 79, 27, 9, 3]
LUO_9_3 = ["-", "-", "-", "-", "-", "-", "7", "4", "3"]


@pytest.mark.parametrize(
    "n, r, expected",
    [(4, 2, 6), (20, 10, 184756), (5, 1, 120), (9, 3, 1680)],
)
def test_count_multipermutations(n, r, expected):
    """Is the count n! / (r!)^(n/r)?"""

    assert count_multipermutations(n, r) == expected


def test_count_multipermutations_non_divisible():
    """Does the count raise when r does not divide n?"""

    with pytest.raises(NonDivisible):
        count_multipermutations(5, 2)


def test_storage_bits():
    """Does one 10-regular multipermutation of 20 cells store about 17.5 bits?"""

    assert 17.49 <= storage_bits(20, 10) <= 17.50
    assert permutation_storage_bits(10, 2) == pytest.approx(2 * 21.791, abs=1e-3)


@pytest.mark.parametrize(
    "l, m, r, expected",
    [(9, 3, 3, 1680), (5, 3, 3, 210), (3, 2, 0, 0), (0, 2, 0, 1)],
)
def test_s_count(l, m, r, expected):
    """Are bounded multiplicity sequences counted exactly?"""

    assert s_count(l, m, r) == expected


@pytest.mark.parametrize("l, m", [(3, 2), (4, 3), (5, 5), (2, 7)])
def test_s_count_closed_forms(l, m):
    """Do the unrestricted and distinct symbol cases match closed forms?"""

    assert s_count(l, m, l) == m**l
    if l <= m:
        assert s_count(l, m, 1) == factorial(m) // factorial(m - l)


@pytest.mark.parametrize("d, expected", [(1, 19683), (5, 243), (9, 3)])
def test_singleton_upper(d, expected):
    """Is the deleted-coordinate bound (n/r)^(n-d+1)?"""

    assert singleton_upper(9, 3, d) == expected


@pytest.mark.parametrize("args", [(9, 3, 0), (9, 3, 10)])
def test_singleton_invalid(args):
    """Does a distance outside 1..n raise?"""

    with pytest.raises(ParamInvalid):
        singleton_upper(*args)


@pytest.mark.parametrize(
    "d, luo, huczynska",
    [(8, Fraction(4), 24), (5, None, 5040), (7, Fraction(7), 168)],
)
def test_classical_uppers(d, luo, huczynska):
    """Are the two classical bounds exact, with luo only when r + d > n?"""

    bounds = classical_uppers(9, 3, d)
    assert bounds.luo == luo
    assert bounds.huczynska == huczynska


def test_table1():
    """Does the (9, 3) table reproduce every printed row?"""

    table = table1()
    assert list(table.index) == ["luo", "huczynska", "singleton", "clt", "egf"]
    assert list(table.columns) == list(range(1, 10))
    assert list(table.loc["luo"]) == LUO_9_3
    assert [int(v) for v in table.loc["huczynska"]] == HUCZYNSKA_9_3
    assert [int(v) for v in table.loc["singleton"]] == SINGLETON_9_3
    assert [int(v) for v in table.loc["egf"]] == EGF_9_3
    for got, printed in zip(table.loc["clt"], CLT_9_3):
        assert abs(int(got) - printed) <= 1


@pytest.mark.parametrize("d", range(1, 10))
def test_clt_upper(d):
    """Is the normal approximation within one of the printed value after floor?"""

    bound = clt_upper(9, 3, d)
    assert abs(floor(bound.value) - CLT_9_3[d - 1]) <= 1
    assert not bound.valid


def test_clt_validity_flag():
    """Is the bound flagged valid once (n-d+1)/(n/r) exceeds 10?"""

    assert clt_upper(60, 20, 1).valid
    assert not clt_upper(60, 20, 40).valid


def test_clt_phi_exponent():
    """Does the n/r exponent only shrink the single factor value?"""

    single = clt_upper(9, 3, 4).value
    full = clt_upper(9, 3, 4, phi_exponent=None).value
    assert full < single


def test_egf_upper():
    """Is the sharper deleted-coordinate bound s_count(n-d+1, n/r, r)?"""

    assert [egf_upper(9, 3, d) for d in range(1, 10)] == EGF_9_3


@pytest.mark.parametrize(
    "n, r, d, expected",
    [(4, 2, 1, Fraction(6)), (4, 2, 2, Fraction(3, 4)), (9, 3, 2, Fraction(1680, 27))],
)
def test_gv_hamming_lower(n, r, d, expected):
    """Is the Hamming Gilbert-Varshamov bound exact?"""

    assert gv_hamming_lower(n, r, d) == expected


@pytest.mark.parametrize(
    "n, r, d, expected",
    [(4, 2, 1, Fraction(3, 2)), (6, 2, 2, Fraction(5, 16)), (6, 1, 3, Fraction(24, 15))],
)
def test_gv_ulam_lower(n, r, d, expected):
    """Is the Ulam Gilbert-Varshamov bound exact?"""

    assert gv_ulam_lower(n, r, d) == expected


@pytest.mark.parametrize("m, d", [(5, 2), (7, 3), (6, 6)])
def test_gv_ulam_lower_r1(m, d):
    """Does r=1 give (m-d+1)! / C(m, d-1)?"""

    assert gv_ulam_lower(m, 1, d) == Fraction(factorial(m - d + 1), comb(m, d - 1))


def test_ceil_bound():
    """Is a rational bound rounded up?"""

    assert ceil_bound(Fraction(3, 4)) == 1
    assert ceil_bound(Fraction(6)) == 6


@pytest.mark.parametrize("n, r", [(4, 2), (6, 3), (6, 2), (9, 3), (12, 4)])
def test_upper_ordering(n, r):
    """Is the multiplicity-aware bound below the plain deleted-coordinate bound?"""

    for d in range(1, n + 1):
        assert egf_upper(n, r, d) <= singleton_upper(n, r, d)


@pytest.mark.parametrize("n, r", [(6, 2), (9, 3), (12, 4), (12, 3)])
def test_monotone_in_d(n, r):
    """Are the upper bounds non-increasing over d, and the lower ones up to n/2?"""

    for d in range(1, n):
        assert singleton_upper(n, r, d) >= singleton_upper(n, r, d + 1)
        assert egf_upper(n, r, d) >= egf_upper(n, r, d + 1)
        assert classical_uppers(n, r, d).huczynska >= classical_uppers(n, r, d + 1).huczynska
    for d in range(1, n // 2):
        assert gv_hamming_lower(n, r, d) >= gv_hamming_lower(n, r, d + 1)
        assert gv_ulam_lower(n, r, d) >= gv_ulam_lower(n, r, d + 1)


def test_ulam_ball_upper_examples():
    """Do the ball bounds match the hand evaluations?"""

    assert ulam_ball_upper(4, 2, 0) == 16
    assert exhaustive_ball_size(4, 2, 0) == 4
    assert ulam_ball_upper(4, 2, 4) >= 24
    assert exhaustive_ball_size(4, 2, 4) == 24


@pytest.mark.parametrize("n, r", [(4, 2), (6, 2), (6, 3)])
def test_ulam_ball_upper_dominates(n, r):
    """Is the ball bound above the exhaustive ball size at every radius?"""

    for u in range(n + 1):
        assert ulam_ball_upper(n, r, u) >= exhaustive_ball_size(n, r, u)


def test_ulam_ball_upper_limit():
    """Does the exact summation refuse lengths past its cap?"""

    with pytest.raises(SizeLimit):
        ulam_ball_upper(40, 2, 3)
    with pytest.raises(ParamInvalid):
        ulam_ball_upper(4, 2, 5)


def test_gv_ulam_ball_lower():
    """Is the sharper Gilbert bound n! / ball(d-1) a valid lower bound?"""

    assert gv_ulam_ball_lower(4, 2, 1) == Fraction(24, 16)
    for d in range(1, 5):
        assert gv_ulam_ball_lower(4, 2, d) <= exhaustive_optimum(4, 2, d, Metric.ULAM_R)


@pytest.mark.parametrize(
    "rho, delta, expected",
    [
        (0.0, 0.3, (0.7, 0.7, 0.7)),
        (0.5, 0.0, (0.5, 0.0, 0.5)),
        (1.0, 0.0, (0.0, 0.0, 0.0)),
    ],
)
def test_capacity(rho, delta, expected):
    """Are the capacity formulas evaluated and clamped to [0, 1]?"""

    report = capacity(CapacityParams(rho, delta))
    assert report[:3] == pytest.approx(expected)
    assert report.clamped == (rho == 1.0)


def test_capacity_params_invalid():
    """Do parameters outside [0, 1] raise?"""

    with pytest.raises(ParamInvalid):
        CapacityParams(1.5, 0.0)


@pytest.mark.parametrize(
    "n, r, d, metric, expected",
    [
        (4, 2, 1, Metric.HAMMING_R, 6),
        (4, 2, 2, Metric.HAMMING_R, 6),
        (4, 2, 4, Metric.HAMMING_R, 2),
    ],
)
def test_exhaustive_optimum(n, r, d, metric, expected):
    """Is the maximum clique the largest code?"""

    assert exhaustive_optimum(n, r, d, metric) == expected


def test_exhaustive_optimum_ulam_sandwich():
    """Is A_o(4, 2, 2) between its Gilbert and Singleton bounds?"""

    value = exhaustive_optimum(4, 2, 2, Metric.ULAM_R)
    assert gv_ulam_lower(4, 2, 2) <= value <= singleton_upper(4, 2, 2)


def test_exhaustive_optimum_cap():
    """Does the clique search refuse too many classes?"""

    with pytest.raises(SizeLimit):
        exhaustive_optimum(8, 2, 3, Metric.HAMMING_R)


@pytest.mark.parametrize("n, r", [(4, 2), (6, 3)])
def test_bound_sandwich(n, r):
    """Do the exact optima sit between the lower and upper bounds for every d?"""

    for d in range(1, n + 1):
        a_h = exhaustive_optimum(n, r, d, Metric.HAMMING_R)
        a_u = exhaustive_optimum(n, r, d, Metric.ULAM_R)
        upper = min(
            classical_uppers(n, r, d).huczynska,
            singleton_upper(n, r, d),
            egf_upper(n, r, d),
        )
        assert gv_hamming_lower(n, r, d) <= a_h <= upper
        assert gv_ulam_lower(n, r, d) <= a_u <= singleton_upper(n, r, d)
        assert a_u <= a_h


def test_interleaved_lower():
    """Is the interleaving bound the r-th power of the component bound?"""

    assert interleaved_lower(6, 2, 2) == (Fraction(2, 3)) ** 2
    assert interleaved_lower(9, 3, 1) == Fraction(6) ** 3
    with pytest.raises(ParamInvalid):
        interleaved_lower(6, 2, 4)


def test_layered_lower():
    """Is the layered size the product of the Hamming optima per level?"""

    assert layered_lower(8, 2, 4, 1) == 2
    with pytest.raises(ParamInvalid):
        layered_lower(8, 2, 3, 3)


def test_layered_odd_lower():
    """With n/r odd is the size the Hamming optimum over (n + r) / 2 labels?"""

    assert layered_odd_lower(6, 2, 2) == 6
    assert layered_odd_lower(6, 2, 2) <= singleton_upper(6, 2, 2)
    assert layered_odd_lower(9, 3, 3) == exhaustive_optimum(6, 3, 3, Metric.HAMMING_R)
    with pytest.raises(ParamInvalid):
        layered_odd_lower(8, 2, 2)
    with pytest.raises(ParamInvalid):
        layered_odd_lower(9, 3, 4)


def test_design_sizes():
    """Are the design code sizes (r+1) r! for the diagonal designs?"""

    assert design_code_size(9, 3, 2) == 24 == resolvable_design_lower(3)
    assert design_code_size(25, 5, 2) == 720 == resolvable_design_lower(5)
    with pytest.raises(ParamInvalid):
        design_code_size(12, 3, 2)


def test_bounds_report_clt_warning(caplog):
    """Is a CLT value outside its regime reported as a warning?"""

    with caplog.at_level(logging.WARNING):
        report = bounds_report(9, 3, 1)
    assert not report.clt.valid
    assert any(
        rec.levelno == logging.WARNING and "clt" in rec.getMessage()
        for rec in caplog.records
    )


def test_bounds_report_consistent():
    """Are the lower bounds below the upper bounds at every d?"""

    for d in range(1, 10):
        report = bounds_report(9, 3, d)
        assert report.consistent
        assert report.singleton == SINGLETON_9_3[d - 1]


def test_bounds_table():
    """Is there one row per d with exact values kept as text?"""

    frame = bounds_table(9, 3)
    assert list(frame["d"]) == list(range(1, 10))
    assert list(frame["egf"]) == [str(v) for v in EGF_9_3]
    assert frame.loc[1, "gv_hamming"] == "560/9"
    partial = bounds_table(6, 2, ds=[2, 3])
    assert list(partial["d"]) == [2, 3]


def test_bounds_table_optional_columns():
    """Are the ball and exact columns filled only within their limits?"""

    small = bounds_table(4, 2, exhaustive_classes=100)
    assert list(small["exact_hamming"]) == ["6", "6", "2", "2"]
    assert small.loc[0, "gv_ulam_ball"] == "3/2"
    blank = bounds_table(9, 3, ds=[2], ball_max_n=5)
    assert blank.loc[0, "gv_ulam_ball"] == ""
    assert blank.loc[0, "exact_ulam"] == ""


if __name__ == "__main__":
    pytest.main(["-s", __file__])  # for convenience
