#!/usr/bin/env python3

"""
Codebook constructions.

Ulam-metric codes built from almost disjoint ordered set partitions:
    grouping, semi-Latin squares, resolvable Steiner systems.
Ulam-metric codes built from smaller codes:
    element-wise interleaving of permutation codes,
    layered block interleaving of Hamming-metric multipermutation codes.
Greedy maximal codes supply the smaller codes at desk scale.
"""

__author__ = "Michael Teresi, Scott Teresi"

import logging
from collections import namedtuple
from dataclasses import dataclass
from functools import partial
from itertools import combinations, permutations, product
from math import factorial, prod

import numpy as np

from multiperm import DEFAULT_ENUMERATION_CAP, DEFAULT_MATERIALIZE_CAP
from multiperm import ComponentDistanceUnverified, DistanceInvalid
from multiperm import InvalidSquare, NotSteiner, ParamInvalid
from multiperm import check_divides, check_size, raise_with
from multiperm.codebook import Codebook, DesignCodebook
from multiperm.designs import validate_semi_latin, verify_design
from multiperm.metrics import Metric, code_min_distance, ulam
from multiperm.permutation import OrderedSetPartition, Permutation
from multiperm.permutation import canonical_perm, count_multipermutations
from multiperm.permutation import enumerate_rank_vectors, interleave_blocks, partition_of

AlmostDisjointReport = namedtuple("AlmostDisjointReport", ["valid", "message", "violation"])


@dataclass(frozen=True)
class GroupingParams:
    """Groups of 2t+1 labels that always share a part.

    Args:
        n(int): length
        r(int): regularity, a multiple of 2t+1
        t(int): translocation errors to correct
        groups(tuple(frozenset)): partition of [n] into sets of size 2t+1
    """

    n: int
    r: int
    t: int
    groups: tuple

    def __post_init__(self):
        groups = tuple(frozenset(int(e) for e in g) for g in self.groups)
        object.__setattr__(self, "groups", groups)
        check_divides(self.n, self.r)
        if self.t < 0:
            raise_with(ParamInvalid, "t=%s < 0" % self.t)
        size = self.group_size
        if self.r % size:
            raise_with(ParamInvalid, "2t+1=%i does not divide r=%i" % (size, self.r))
        if any(len(g) != size for g in groups):
            raise_with(ParamInvalid, "every group needs %i labels" % size)
        covered = frozenset().union(*groups)
        if len(covered) != self.n or covered != frozenset(range(1, self.n + 1)):
            raise_with(ParamInvalid, "groups do not partition [%i]" % self.n)

    @classmethod
    def consecutive(cls, n, r, t):
        """Groups {(j-1)(2t+1)+1, ..., j(2t+1)}."""

        size = 2 * t + 1
        groups = tuple(range(start, start + size) for start in range(1, n + 1, size))
        return cls(n, r, t, groups)

    @property
    def group_size(self):
        return 2 * self.t + 1

    def to_dict(self):
        return {
            "n": self.n,
            "r": self.r,
            "t": self.t,
            "groups": [sorted(g) for g in self.groups],
        }

    @classmethod
    def from_dict(cls, params):
        return cls(int(params["n"]), int(params["r"]), int(params["t"]), params["groups"])


def check_almost_disjoint(codebook, t, logger=None):
    """Check that parts at the same rank are equal or meet in < r - 2t labels.

    A passing codebook corrects t translocations, i.e. has ulam-r distance >= 2t+1.

    Returns:
        AlmostDisjointReport: violation is (rank, part, part, overlap) on failure
    """

    r = codebook.r
    if 2 * t >= r:
        raise_with(ParamInvalid, "need 2t < r, got t=%s r=%i" % (t, r), logger)
    threshold = r - 2 * t
    for rank in range(1, codebook.q + 1):
        for a, b in combinations(codebook.candidate_parts(rank), 2):
            overlap = len(a & b)
            if overlap >= threshold:
                msg = "rank %i: parts %s and %s share %i >= %i" % (
                    rank,
                    sorted(a),
                    sorted(b),
                    overlap,
                    threshold,
                )
                return AlmostDisjointReport(False, msg, (rank, a, b, overlap))
    return AlmostDisjointReport(True, "certified for %i translocation(s)" % t, None)


def grouping_code(params, cap=DEFAULT_ENUMERATION_CAP):
    """All ordered partitions into parts of size r that keep every group intact.

    There are (n/g)! / ((r/g)!)^(n/r) words for groups of size g = 2t+1.
    """

    g = params.group_size
    n_groups, per_part = params.n // g, params.r // g
    check_size(count_multipermutations(n_groups, per_part), cap, "grouping code words")
    words = []
    for assignment in enumerate_rank_vectors(n_groups, per_part, cap=cap):
        parts = [set() for _ in range(assignment.q)]
        for group, rank in zip(params.groups, assignment.ranks):
            parts[rank - 1].update(group)
        words.append(OrderedSetPartition(tuple(parts)))
    return Codebook(
        params.n,
        params.r,
        g,
        Metric.ULAM_R,
        tuple(words),
        {"name": "grouping", "params": params.to_dict()},
    )


def semilatin_code(square, logger=None):
    """One codeword per row of a semi-Latin square.

    Rows share no label at any rank, so the distance is at least r; the
        claimed distance is the exact minimum found over all pairs.
    """

    logger = logger or logging.getLogger(__name__)
    report = validate_semi_latin(square)
    if not report.valid:
        raise_with(InvalidSquare, report.message, logger)
    words = tuple(square.rows())
    construction = {"name": "semilatin", "params": square.to_dict()}
    code = Codebook(square.n, square.r, square.r, Metric.ULAM_R, words, construction)
    if code.size < 2:
        return code
    found = code_min_distance(code, Metric.ULAM_R, logger=logger)
    if found < square.r:
        msg = "rows at ulam-r distance %i < r=%i" % (found, square.r)
        raise_with(DistanceInvalid, msg, logger)
    logger.debug("semi-Latin code of %i words at distance %i" % (code.size, found))
    return Codebook(square.n, square.r, found, Metric.ULAM_R, words, construction)


def design_code(
    design, k, target_d, materialize_cap=DEFAULT_MATERIALIZE_CAP, logger=None
):
    """Every ordering of every class of a resolvable Steiner system S(k, r, n).

    Args:
        design(ResolvableDesign): the design
        k(int): its strength
        target_d(int): odd distance, at most r - k + 1
        materialize_cap(int): largest code returned as an explicit Codebook
        logger(logging.Logger): logger to use, None to create
    Returns:
        Codebook | DesignCodebook: implicit above the materialization cap
    """

    logger = logger or logging.getLogger(__name__)
    if target_d < 1 or target_d % 2 == 0 or target_d > design.r - k + 1:
        msg = "target d=%s must be odd and in 1..r-k+1=%i" % (target_d, design.r - k + 1)
        raise_with(DistanceInvalid, msg, logger)
    report = verify_design(design, k, 1)
    if not report.valid:
        raise_with(NotSteiner, report.message, logger)
    code = DesignCodebook(design, k, target_d)
    if code.size <= materialize_cap:
        return code.materialize(materialize_cap)
    logger.info("design code of %i words kept implicit" % code.size)
    return code


@dataclass(frozen=True)
class ComponentSpec:
    """Permutation codes over the parts of a partition of [n] into r sets.

    Args:
        parts(tuple(frozenset)): P_1..P_r, each of size n/r
        component_codes(tuple(tuple(Permutation))): code i permutes P_i
        d(int): minimum plain Ulam distance of every component code
    """

    parts: tuple
    component_codes: tuple
    d: int

    def __post_init__(self):
        parts = tuple(frozenset(int(e) for e in p) for p in self.parts)
        codes = tuple(
            tuple(w if isinstance(w, Permutation) else Permutation(w) for w in code)
            for code in self.component_codes
        )
        object.__setattr__(self, "parts", parts)
        object.__setattr__(self, "component_codes", codes)
        if not parts or len(codes) != len(parts):
            raise_with(ParamInvalid, "need one component code per part")
        size = len(parts[0])
        if any(len(p) != size for p in parts):
            raise_with(ParamInvalid, "parts must be of equal size")
        union = frozenset().union(*parts)
        if len(union) != size * len(parts) or union != frozenset(range(1, len(union) + 1)):
            raise_with(ParamInvalid, "parts do not partition [n]")
        for i, (part, code) in enumerate(zip(parts, codes), 1):
            if not code:
                raise_with(ParamInvalid, "component %i is empty" % i)
            if any(w.labels != part for w in code):
                raise_with(ParamInvalid, "component %i words must permute P_%i" % (i, i))
            if len(set(code)) != len(code):
                raise_with(ParamInvalid, "component %i repeats a word" % i)

    @property
    def r(self):
        return len(self.parts)

    @property
    def n(self):
        return len(self.parts) * len(self.parts[0])

    def to_dict(self):
        return {
            "parts": [sorted(p) for p in self.parts],
            "component_codes": [[str(w) for w in code] for code in self.component_codes],
            "d": self.d,
        }

    @classmethod
    def from_dict(cls, params):
        codes = tuple(
            tuple(Permutation.parse(w) for w in code) for code in params["component_codes"]
        )
        return cls(tuple(params["parts"]), codes, int(params["d"]))

    def verify(self, logger=None):
        """Raise unless every component code has minimum Ulam distance >= d."""

        if not 1 <= self.d <= len(self.parts[0]):
            msg = "d=%s outside 1..n/r=%i" % (self.d, len(self.parts[0]))
            raise_with(ParamInvalid, msg, logger)
        for i, code in enumerate(self.component_codes, 1):
            for a, b in combinations(code, 2):
                if ulam(a, b) < self.d:
                    msg = "component %i: ulam(%s, %s) < %i" % (i, a, b, self.d)
                    raise_with(ComponentDistanceUnverified, msg, logger)


def interleaved_code(spec, cap=DEFAULT_ENUMERATION_CAP, logger=None):
    """Classes of c_1 o c_2 o ... o c_r for every choice of component words."""

    spec.verify(logger)
    check_size(prod(len(c) for c in spec.component_codes), cap, "interleaved words")
    words = tuple(
        OrderedSetPartition.from_permutation(
            Permutation(interleave_blocks([c.elements for c in combo], 1)), spec.r
        )
        for combo in product(*spec.component_codes)
    )
    return Codebook(
        spec.n,
        spec.r,
        spec.d,
        Metric.ULAM_R,
        words,
        {"name": "interleaved", "params": spec.to_dict()},
    )


def interleaved_greedy_spec(n, r, d, cap=DEFAULT_ENUMERATION_CAP):
    """Component spec with greedy codes on consecutive parts of size n/r."""

    check_divides(n, r)
    m = n // r
    base = greedy_perm_ulam_code(m, d, cap=cap)
    parts, codes = [], []
    for i in range(r):
        offset = i * m
        parts.append(range(offset + 1, offset + m + 1))
        codes.append(tuple(Permutation(tuple(e + offset for e in w)) for w in base))
    return ComponentSpec(tuple(parts), tuple(codes), d)


def _shift(codebook, offset):
    """Words of `codebook` with every label increased by `offset`."""

    return [
        OrderedSetPartition(tuple(frozenset(e + offset for e in p) for p in w.parts))
        for w in codebook
    ]


def layered_hamming_code(
    n, r, d, k, hamming_supplier=None, cap=DEFAULT_ENUMERATION_CAP, logger=None
):
    """Ulam-metric code from k levels of Hamming-metric codes.

    Level i holds an MPC_H(n/2^i, r, d) on labels (n/2^i, n/2^(i-1)],
        block interleaved (blocks of r) after everything built from levels > i.
    The innermost code is the single class of (1, ..., n/2^k).

    Args:
        n(int): length
        r(int): regularity
        d(int): minimum distance, at most the innermost length n/2^k
        k(int): number of levels, n/2^k a multiple of r
        hamming_supplier(callable): (length, r, d) -> Codebook over [length],
            None for `greedy_mpc_hamming`
        cap(int): enumeration limit
        logger(logging.Logger): logger to use, None to create
    """

    logger = logger or logging.getLogger(__name__)
    check_divides(n, r)
    if k < 1:
        raise_with(ParamInvalid, "need k >= 1 levels, got %s" % k, logger)
    if not 1 <= d <= n >> k:
        msg = "layered codes need 1 <= d=%s <= n/2^k=%i" % (d, n >> k)
        raise_with(ParamInvalid, msg, logger)
    for level in range(1, k + 1):
        if n % (1 << level) or (n >> level) % r:
            msg = "n/2^%i is not a multiple of r=%i" % (level, r)
            raise_with(ParamInvalid, msg, logger)
    supplier = hamming_supplier or partial(greedy_mpc_hamming, cap=cap)

    inner = n >> k
    words = [OrderedSetPartition.from_permutation(Permutation.identity(inner), r)]
    sizes = []
    for level in range(k, 0, -1):
        length = n >> level
        level_code = supplier(length, r, d)
        if level_code.n != length or level_code.r != r:
            raise_with(ParamInvalid, "level %i code is not over [%i]" % (level, length))
        if level_code.size > 1 and code_min_distance(level_code, Metric.HAMMING_R) < d:
            raise_with(ParamInvalid, "level %i code has distance < %i" % (level, d))
        sizes.append(level_code.size)
        level_words = _shift(level_code, length)
        check_size(len(words) * len(level_words), cap, "layered code words")
        words = [
            OrderedSetPartition.from_permutation(
                Permutation(
                    interleave_blocks([canonical_perm(a), canonical_perm(b)], r)
                ),
                r,
            )
            for a in words
            for b in level_words
        ]
    params = {"n": n, "r": r, "d": d, "k": k, "level_sizes": sizes[::-1]}
    logger.debug("layered code sizes per level %s" % params["level_sizes"])
    return Codebook(
        n, r, d, Metric.ULAM_R, tuple(words), {"name": "layered", "params": params}
    )


def greedy_perm_ulam_code(
    m, d, cap=DEFAULT_ENUMERATION_CAP, seed=None, budget=None, logger=None
):
    """Maximal permutation code with plain Ulam distance >= d.

    Without a seed, S_m is scanned lexicographically, keeping the first fit.
    With a seed, `budget` uniformly random permutations are scanned instead.

    Returns:
        tuple(Permutation)
    """

    logger = logger or logging.getLogger(__name__)
    if m < 1 or d < 1:
        raise_with(ParamInvalid, "need m, d >= 1, got m=%s d=%s" % (m, d), logger)
    if d > m - 1:
        logger.warning("ulam distance %i unreachable for length %i: 1 word" % (d, m))
    if seed is None:
        check_size(factorial(m), cap, "permutations of %i" % m, logger)
        scan = (Permutation(p) for p in permutations(range(1, m + 1)))
    else:
        budget = min(factorial(m), cap) if budget is None else budget
        rng = np.random.default_rng(seed)
        scan = (Permutation(tuple(rng.permutation(m) + 1)) for _ in range(budget))
    kept = []
    for perm in scan:
        if all(ulam(perm, other) >= d for other in kept):
            kept.append(perm)
    return tuple(kept)


def greedy_mpc_hamming(n, r, d, cap=DEFAULT_ENUMERATION_CAP, logger=None):
    """Maximal MPC_H(n, r, d) by a lexicographic scan over M(n, r)."""

    logger = logger or logging.getLogger(__name__)
    check_divides(n, r)
    if d < 1:
        raise_with(ParamInvalid, "d=%s < 1" % d, logger)
    if d > n:
        logger.warning("hamming distance %i unreachable for length %i: 1 word" % (d, n))
    kept = []
    kept_ranks = np.zeros((0, n), dtype=np.int64)
    for mperm in enumerate_rank_vectors(n, r, cap=cap):
        ranks = np.asarray(mperm.ranks, dtype=np.int64)
        if len(kept) and (kept_ranks != ranks).sum(axis=1).min() < d:
            continue
        kept.append(partition_of(mperm))
        kept_ranks = np.vstack([kept_ranks, ranks])
    return Codebook(
        n,
        r,
        d,
        Metric.HAMMING_R,
        tuple(kept),
        {"name": "greedy-hamming", "params": {"n": n, "r": r, "d": d}},
    )
