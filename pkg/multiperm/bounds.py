#!/usr/bin/env python3

"""
Cardinality bounds for multipermutation codes.

A_H(n, r, d) and A_o(n, r, d) are the largest codes (counted in classes)
with minimum r-regular Hamming and Ulam distance d.
Exact bounds use Python integers and Fractions throughout;
only the normal-approximation bound is a float.
"""

__author__ = "Michael Teresi, Scott Teresi"

import logging
from collections import namedtuple
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from math import ceil, comb, factorial, floor, log2, sqrt

import pandas as pd
from scipy.special import erfc

from multiperm import DEFAULT_BALL_SUMMATION_N, DEFAULT_ENUMERATION_CAP
from multiperm import DEFAULT_EXHAUSTIVE_CLASSES
from multiperm import ParamInvalid, SizeLimit
from multiperm import check_divides, check_size, raise_with
from multiperm.metrics import Metric, hamming_r, ulam_r
from multiperm.permutation import Permutation, class_size, count_multipermutations
from multiperm.permutation import enumerate_rank_vectors, partition_of

ClassicalUppers = namedtuple("ClassicalUppers", ["luo", "huczynska"])
CltBound = namedtuple("CltBound", ["value", "valid"])
CapacityReport = namedtuple(
    "CapacityReport", ["hamming", "ulam_lower", "ulam_upper", "clamped"]
)

CLT_VALIDITY_RATIO = 10  # MAGIC (n - d + 1) / (n / r) must exceed this
TABLE_ROWS = ("luo", "huczynska", "singleton", "clt", "egf")


def _check_params(n, r, d):
    check_divides(n, r)
    if not 1 <= d <= n:
        raise_with(ParamInvalid, "d=%s outside 1..n=%i" % (d, n))


def s_count(l, m, r):
    """Number of length-l sequences over m symbols using each at most r times.

    Equals l! [z^l] (sum_{i<=r} z^i / i!)^m.  Symbols are added one at a time;
        a new symbol fills x of the j slots in C(j, x) ways.
    """

    if min(l, m, r) < 0:
        raise_with(ParamInvalid, "s_count needs l, m, r >= 0, got %s" % ((l, m, r),))
    ways = [1] + [0] * l
    for _ in range(m):
        ways = [
            sum(comb(j, x) * ways[j - x] for x in range(min(r, j) + 1))
            for j in range(l + 1)
        ]
    return ways[l]


def singleton_upper(n, r, d):
    """(n/r)^(n-d+1), from deleting the last d-1 coordinates."""

    _check_params(n, r, d)
    return (n // r) ** (n - d + 1)


def egf_upper(n, r, d):
    """S(n-d+1, n/r, r), the deleted-coordinate bound respecting multiplicities."""

    _check_params(n, r, d)
    return s_count(n - d + 1, n // r, r)


def classical_uppers(n, r, d):
    """The Luo bound (only when r + d > n) and the Huczynska-Mullen bound."""

    _check_params(n, r, d)
    luo = Fraction(d, r + d - n) if r + d > n else None
    # NB r | n and d - 1 < n so the division is exact
    huczynska = factorial(n) // (r * factorial(d - 1))
    return ClassicalUppers(luo, huczynska)


def clt_upper(n, r, d, phi_exponent=1):
    """Normal approximation to the deleted-coordinate bound.

    (n/r)^(n-d+1) * Phi(x)^e with x = (n + 2(d-1)r) / (2 sqrt(n(n-d+1)r)).

    Args:
        n(int): length
        r(int): regularity
        d(int): minimum distance
        phi_exponent(int): power e of Phi, None for n/r
    Returns:
        CltBound: the value and whether (n-d+1)/(n/r) exceeds the validity ratio
    """

    _check_params(n, r, d)
    q = n // r
    arg = (n + 2 * (d - 1) * r) / (2 * sqrt(n * (n - d + 1) * r))
    phi = 0.5 * float(erfc(-arg / sqrt(2)))
    power = q if phi_exponent is None else phi_exponent
    value = float(q) ** (n - d + 1) * phi**power
    return CltBound(value, (n - d + 1) / q > CLT_VALIDITY_RATIO)


def gv_hamming_lower(n, r, d):
    """Gilbert-Varshamov lower bound on A_H(n, r, d), exact."""

    _check_params(n, r, d)
    q = n // r
    return Fraction(factorial(n), class_size(n, r) * comb(n, d - 1) * q ** (d - 1))


def gv_ulam_lower(n, r, d):
    """Gilbert-Varshamov lower bound on A_o(n, r, d), exact."""

    _check_params(n, r, d)
    return Fraction(factorial(n - d + 1), comb(n, d - 1) * class_size(n, r) ** 2)


def ceil_bound(value):
    """Smallest code size guaranteed by a rational lower bound."""

    return ceil(value)


def ulam_ball_upper(n, r, u, max_n=DEFAULT_BALL_SUMMATION_N):
    """Upper bound A * B * (r!)^(n/r) on the ulam-r ball of radius u.

    With l = n - u and x_i elements of a common subsequence taken from part i:
        A = sum prod C(r, x_i) x_i!, the ordinary coefficient of z^l in
            (sum_x C(r, x) x! z^x)^(n/r);
        B = sum multinomial(n - l; r - x_1, ...), which is S(n - l, n/r, r).

    Args:
        n(int): length
        r(int): regularity
        u(int): radius
        max_n(int): largest n summed exactly
    """

    check_divides(n, r)
    if not 0 <= u <= n:
        raise_with(ParamInvalid, "radius %s outside 0..n=%i" % (u, n))
    if max_n is not None and n > max_n:
        raise_with(SizeLimit, "ball summation for n=%i > %i" % (n, max_n))
    q, l = n // r, n - u
    factor = [comb(r, x) * factorial(x) for x in range(r + 1)]
    poly = [1]
    for _ in range(q):
        grown = [0] * min(len(poly) + r, l + 1)
        for i, a in enumerate(poly):
            for x, b in enumerate(factor):
                if i + x < len(grown):
                    grown[i + x] += a * b
        poly = grown
    a_sum = poly[l] if l < len(poly) else 0
    b_sum = s_count(n - l, q, r)
    return a_sum * b_sum * class_size(n, r)


def exhaustive_ball_size(n, r, u, cap=DEFAULT_ENUMERATION_CAP):
    """Exact count of permutations within ulam-r distance u of the identity."""

    check_divides(n, r)
    check_size(factorial(n), cap, "permutations of %i" % n)
    identity = Permutation.identity(n)
    return sum(
        1
        for elements in permutations(range(1, n + 1))
        if ulam_r(Permutation(elements), identity, r) <= u
    )


def gv_ulam_ball_lower(n, r, d, max_n=DEFAULT_BALL_SUMMATION_N):
    """Gilbert lower bound n! / ball(d - 1) using the A * B ball bound."""

    _check_params(n, r, d)
    return Fraction(factorial(n), ulam_ball_upper(n, r, d - 1, max_n=max_n))


def interleaved_lower(n, r, d):
    """Lower bound ((n/r - d + 1)! / C(n/r, d - 1))^r from r interleaved components."""

    _check_params(n, r, d)
    q = n // r
    if d > q:
        raise_with(ParamInvalid, "component length %i < d=%i" % (q, d))
    return Fraction(factorial(q - d + 1), comb(q, d - 1)) ** r


def layered_lower(n, r, d, k, max_classes=DEFAULT_EXHAUSTIVE_CLASSES):
    """Product of the exact A_H(n / 2^i, r, d), i = 1..k, for the layered code."""

    _check_params(n, r, d)
    if k < 1 or d > n >> k:
        raise_with(ParamInvalid, "layered codes need k >= 1, d=%i <= n/2^k" % d)
    size = 1
    for level in range(1, k + 1):
        length = n >> level
        if length % r or length << level != n:
            raise_with(ParamInvalid, "n/2^%i is not a multiple of r=%i" % (level, r))
        size *= exhaustive_optimum(length, r, d, Metric.HAMMING_R, max_classes)
    return size


def layered_odd_lower(n, r, d, max_classes=DEFAULT_EXHAUSTIVE_CLASSES):
    """Exact A_H((n + r) / 2, r, d) for the one-stage layered code with n/r odd.

    The Hamming code fills the (n/r + 1) / 2 odd ranks; the even ranks hold one
        fixed class.
    """

    _check_params(n, r, d)
    q = n // r
    if q % 2 == 0 or q < 3:
        raise_with(ParamInvalid, "need an odd n/r >= 3, got %i" % q)
    if d > r:
        raise_with(ParamInvalid, "one-stage layered codes need d=%i <= r=%i" % (d, r))
    return exhaustive_optimum((n + r) // 2, r, d, Metric.HAMMING_R, max_classes)


def design_code_size(n, r, k):
    """C(n-1, k-1) / C(r-1, k-1) classes times (n/r)! orderings."""

    check_divides(n, r)
    if not 1 <= k <= r:
        raise_with(ParamInvalid, "k=%s outside 1..r=%i" % (k, r))
    classes = Fraction(comb(n - 1, k - 1), comb(r - 1, k - 1))
    if classes.denominator != 1:
        raise_with(ParamInvalid, "no resolvable S(%i,%i,%i) exists" % (k, r, n))
    return classes.numerator * factorial(n // r)


def resolvable_design_lower(r):
    """(r + 1) r!, the size of the design code from the diagonal S(2, r, r^2)."""

    return (r + 1) * factorial(r)


def storage_bits(n, r):
    """Bits stored by one r-regular multipermutation of n cells."""

    return log2(count_multipermutations(n, r))


def permutation_storage_bits(m, r):
    """Bits stored by r separate permutations of m cells each."""

    return r * log2(factorial(m))


@dataclass(frozen=True)
class CapacityParams:
    """Asymptotic regime: r ~ n^rho and d ~ delta n.

    Args:
        rho(float): lim ln r / ln n, in [0, 1]
        delta(float): lim d / n, in [0, 1]
    """

    rho: float
    delta: float

    def __post_init__(self):
        for name in ("rho", "delta"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise_with(ParamInvalid, "%s=%s outside [0, 1]" % (name, value))


def capacity(params, logger=None):
    """Capacity formulas, clamped into [0, 1].

    Returns:
        CapacityReport: hamming, ulam lower and upper, and whether any clamped
    """

    logger = logger or logging.getLogger(__name__)
    rho, delta = params.rho, params.delta
    raw = ((1 - rho) * (1 - delta), (1 - delta) * (1 - 2 * rho), (1 - delta) * (1 - rho))
    values = tuple(min(1.0, max(0.0, v)) for v in raw)
    clamped = values != raw
    if clamped:
        logger.warning("capacity clamped to [0, 1]: %s -> %s" % (raw, values))
    return CapacityReport(*values, clamped)


def exhaustive_optimum(
    n, r, d, metric, max_classes=DEFAULT_EXHAUSTIVE_CLASSES, logger=None
):
    """Exact A_H or A_o by maximum clique over all classes of M(n, r).

    Args:
        n(int): length
        r(int): regularity
        d(int): minimum distance
        metric(Metric | str): hamming-r or ulam-r
        max_classes(int): largest class count searched
        logger(logging.Logger): logger to use, None to create
    """

    logger = logger or logging.getLogger(__name__)
    _check_params(n, r, d)
    check_size(count_multipermutations(n, r), max_classes, "clique vertices", logger)
    distance = {Metric.HAMMING_R: hamming_r, Metric.ULAM_R: ulam_r}[Metric(metric)]
    vertices = [partition_of(m) for m in enumerate_rank_vectors(n, r)]
    adjacency = [0] * len(vertices)
    for i, a in enumerate(vertices):
        for j in range(i + 1, len(vertices)):
            if distance(a, vertices[j]) >= d:
                adjacency[i] |= 1 << j
                adjacency[j] |= 1 << i
    best = _max_clique_size(adjacency)
    logger.debug("optimum (%i,%i,%i) %s: %i" % (n, r, d, Metric(metric).value, best))
    return best


def _popcount(mask):
    return bin(mask).count("1")


def _bits(mask):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _max_clique_size(adjacency):
    """Size of a maximum clique, Bron-Kerbosch with pivoting over bitsets."""

    best = 0

    def _expand(size, candidates, excluded):
        nonlocal best
        if not candidates:
            if not excluded:
                best = max(best, size)
            return
        if size + _popcount(candidates) <= best:
            return
        pivot = max(
            _bits(candidates | excluded),
            key=lambda u: _popcount(candidates & adjacency[u]),
        )
        for v in list(_bits(candidates & ~adjacency[pivot])):
            _expand(size + 1, candidates & adjacency[v], excluded & adjacency[v])
            candidates &= ~(1 << v)
            excluded |= 1 << v

    _expand(0, (1 << len(adjacency)) - 1, 0)
    return best


@dataclass(frozen=True)
class BoundsReport:
    """Every bound at one (n, r, d)."""

    n: int
    r: int
    d: int
    luo: Fraction
    huczynska: int
    singleton: int
    egf: int
    clt: CltBound
    gv_hamming: Fraction
    gv_ulam: Fraction

    @property
    def consistent(self):
        """True if both lower bounds sit below every exact upper bound."""

        uppers = [self.huczynska, self.singleton, self.egf]
        if self.luo is not None:
            uppers.append(self.luo)
        return max(self.gv_hamming, self.gv_ulam) <= min(uppers)


def bounds_report(n, r, d, logger=None):
    """Evaluate all bounds at (n, r, d), warning on any inconsistency."""

    logger = logger or logging.getLogger(__name__)
    classical = classical_uppers(n, r, d)
    report = BoundsReport(
        n=n,
        r=r,
        d=d,
        luo=classical.luo,
        huczynska=classical.huczynska,
        singleton=singleton_upper(n, r, d),
        egf=egf_upper(n, r, d),
        clt=clt_upper(n, r, d),
        gv_hamming=gv_hamming_lower(n, r, d),
        gv_ulam=gv_ulam_lower(n, r, d),
    )
    if not report.consistent:
        logger.warning("lower bound above an upper bound at %s" % ((n, r, d),))
    if not report.clt.valid:
        logger.warning("clt bound outside its regime at %s" % ((n, r, d),))
    return report


def bounds_table(
    n, r, ds=None, ball_max_n=DEFAULT_BALL_SUMMATION_N, exhaustive_classes=None
):
    """One row per d, one column per bound; exact values kept as text.

    The ball-based Gilbert column is blank past `ball_max_n`; the exact optima
        are only searched when M(n, r) has at most `exhaustive_classes` classes.

    Returns:
        pandas.DataFrame
    """

    ds = range(1, n + 1) if ds is None else ds
    with_ball = n <= ball_max_n
    with_exact = (
        exhaustive_classes is not None
        and count_multipermutations(n, r) <= exhaustive_classes
    )
    rows = []
    for d in ds:
        rep = bounds_report(n, r, d)
        row = {
            "d": d,
            "luo": "" if rep.luo is None else str(rep.luo),
            "huczynska": str(rep.huczynska),
            "singleton": str(rep.singleton),
            "egf": str(rep.egf),
            "clt": "%.3f" % rep.clt.value,
            "clt_valid": rep.clt.valid,
            "gv_hamming": str(rep.gv_hamming),
            "gv_hamming_ceil": str(ceil_bound(rep.gv_hamming)),
            "gv_ulam": str(rep.gv_ulam),
            "gv_ulam_ceil": str(ceil_bound(rep.gv_ulam)),
            "gv_ulam_ball": "",
            "exact_hamming": "",
            "exact_ulam": "",
        }
        if with_ball:
            row["gv_ulam_ball"] = str(gv_ulam_ball_lower(n, r, d, ball_max_n))
        if with_exact:
            exact = (("exact_hamming", Metric.HAMMING_R), ("exact_ulam", Metric.ULAM_R))
            for column, metric in exact:
                value = exhaustive_optimum(n, r, d, metric, exhaustive_classes)
                row[column] = str(value)
        rows.append(row)
    return pd.DataFrame(rows)


def table1(n=9, r=3):
    """Upper bounds on A_H(n, r, d) laid out one row per bound, one column per d.

    The luo row is '-' where it does not apply; the clt row is floored.

    Returns:
        pandas.DataFrame: index TABLE_ROWS, columns 1..n
    """

    grid = {}
    for d in range(1, n + 1):
        classical = classical_uppers(n, r, d)
        grid[d] = [
            "-" if classical.luo is None else str(classical.luo),
            str(classical.huczynska),
            str(singleton_upper(n, r, d)),
            str(floor(clt_upper(n, r, d).value)),
            str(egf_upper(n, r, d)),
        ]
    return pd.DataFrame(grid, index=list(TABLE_ROWS))
