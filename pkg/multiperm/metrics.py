#!/usr/bin/env python3

"""
Distances between permutations and between equivalence classes.

The r-regular Ulam distance of two classes is the smallest plain Ulam distance
between any two of their members.  It is computed without enumeration:
    a sequence of distinct labels is a common subsequence of some member of
    R_r(pi) and some member of R_r(sigma) iff its pi-ranks and its sigma-ranks
    are both non-decreasing along it.
So the longest such sequence is the heaviest monotone chain through the
(n/r) x (n/r) matrix c(i, j) = |o_pi(i) & o_sigma(j)|.
The brute force oracle exists to check that claim.
"""

__author__ = "Michael Teresi, Scott Teresi"

import logging
from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from enum import Enum
from functools import partial
from itertools import chain, product
from math import prod
from multiprocessing import Pool

import numpy as np
from tqdm import tqdm

from multiperm import DEFAULT_ENUMERATION_CAP
from multiperm import ParamMismatch, SingletonCode
from multiperm import check_size, raise_with
from multiperm.permutation import OrderedSetPartition, Permutation
from multiperm.permutation import class_size, iter_class
from multiperm.permutation import multiset_ordering_count, multiset_orderings


class Metric(Enum):
    """Distance used to certify or decode a codebook."""

    HAMMING_R = "hamming-r"
    ULAM_R = "ulam-r"
    ULAM = "ulam"


@dataclass(frozen=True)
class DistanceWitness:
    """A pair of class members achieving the r-regular Ulam distance.

    Args:
        value(int): the distance
        alpha(Permutation): member of the first class
        beta(Permutation): member of the second class
    """

    value: int
    alpha: Permutation
    beta: Permutation


def as_partition(item, r=None):
    """Ordered set partition for a permutation or partition.

    Args:
        item(Permutation | OrderedSetPartition): the operand
        r(int): regularity, None to accept the partition's own
    """

    if isinstance(item, OrderedSetPartition):
        if r is not None and item.r != r:
            raise_with(ParamMismatch, "partition has r=%i, expected %i" % (item.r, r))
        return item
    if r is None:
        raise_with(ParamMismatch, "regularity required for permutation %s" % item)
    return OrderedSetPartition.from_permutation(item, r)


def _check_same_ground(a, b):
    if a.ground_set != b.ground_set:
        raise_with(ParamMismatch, "ground sets differ: %s vs %s" % (a, b))
    if a.r != b.r:
        raise_with(ParamMismatch, "regularity differs: %i vs %i" % (a.r, b.r))


def hamming(a, b):
    """Plain positional Hamming distance between two permutations."""

    if a.labels != b.labels:
        raise_with(ParamMismatch, "label sets differ: %s vs %s" % (a, b))
    return sum(1 for x, y in zip(a.elements, b.elements) if x != y)


def hamming_r(a, b, r=None):
    """r-regular Hamming distance.

    The number of labels whose rank differs, i.e. sum_i |o_a(i) - o_b(i)|.

    Args:
        a(Permutation | OrderedSetPartition): first operand
        b(Permutation | OrderedSetPartition): second operand
        r(int): regularity, required for permutations
    """

    oa, ob = as_partition(a, r), as_partition(b, r)
    _check_same_ground(oa, ob)
    return sum(len(pa - pb) for pa, pb in zip(oa.parts, ob.parts))


def lcs_quadratic(x, y):
    """Length of the longest common subsequence by the O(|x||y|) table."""

    x, y = tuple(x), tuple(y)
    prev = [0] * (len(y) + 1)
    for xi in x:
        curr = [0] * (len(y) + 1)
        for j, yj in enumerate(y, 1):
            if xi == yj:
                curr[j] = prev[j - 1] + 1
            else:
                curr[j] = max(prev[j], curr[j - 1])
        prev = curr
    return prev[-1]


def _longest_increasing(values):
    """Length of the longest strictly increasing subsequence."""

    tails = []
    for v in values:
        k = bisect_left(tails, v)
        if k == len(tails):
            tails.append(v)
        else:
            tails[k] = v
    return len(tails)


def longest_nondecreasing(values):
    """Indices of one longest non-decreasing subsequence of `values`."""

    tails = []
    tails_at = []
    prev = [-1] * len(values)
    for i, v in enumerate(values):
        k = bisect_right(tails, v)
        if k == len(tails):
            tails.append(v)
            tails_at.append(i)
        else:
            tails[k] = v
            tails_at[k] = i
        prev[i] = tails_at[k - 1] if k else -1
    path = []
    i = tails_at[-1] if tails_at else -1
    while i >= 0:
        path.append(i)
        i = prev[i]
    return path[::-1]


def lcs(x, y):
    """Length of the longest common subsequence of two sequences.

    Sequences of distinct labels reduce to a longest increasing subsequence,
        O(n log n); anything else falls back to the quadratic table.
    """

    x, y = tuple(x), tuple(y)
    if len(set(x)) != len(x) or len(set(y)) != len(y):
        return lcs_quadratic(x, y)
    where = {label: i for i, label in enumerate(y)}
    return _longest_increasing([where[label] for label in x if label in where])


def ulam(a, b):
    """Ulam distance n - LCS of two permutations of the same labels."""

    if a.labels != b.labels:
        raise_with(ParamMismatch, "label sets differ: %s vs %s" % (a, b))
    return a.n - lcs(a.elements, b.elements)


def count_matrix(a, b):
    """Matrix c(i, j) = |o_a(i) & o_b(j)| as an (n/r, n/r) integer array."""

    _check_same_ground(a, b)
    labels = sorted(a.ground_set)
    q = a.q
    ranks_a = _rank_array(a, labels)
    ranks_b = _rank_array(b, labels)
    return np.bincount(ranks_a * q + ranks_b, minlength=q * q).reshape(q, q)


def max_chain_weight(counts):
    """Heaviest path through a non-negative matrix moving only down or right.

    Each row is resolved at once:
        f_i = S_i + cummax(f_{i-1} - S_i + c_i), S_i the running row sum.

    Args:
        counts(numpy.ndarray): shape (..., q, q), leading axes batched
    Returns:
        numpy.ndarray | int: chain weight per batch entry
    """

    counts = np.asarray(counts, dtype=np.int64)
    best = np.zeros(counts.shape[:-2] + counts.shape[-1:], dtype=np.int64)
    for i in range(counts.shape[-2]):
        row = counts[..., i, :]
        running = np.cumsum(row, axis=-1)
        best = running + np.maximum.accumulate(best - running + row, axis=-1)
    weight = best[..., -1]
    return int(weight) if np.ndim(weight) == 0 else weight


def ulam_r(a, b, r=None):
    """r-regular Ulam distance between the classes of `a` and `b`.

    Args:
        a(Permutation | OrderedSetPartition): first operand
        b(Permutation | OrderedSetPartition): second operand
        r(int): regularity, required for permutations
    Returns:
        int: n minus the heaviest monotone chain of the count matrix
    """

    oa, ob = as_partition(a, r), as_partition(b, r)
    return oa.n - max_chain_weight(count_matrix(oa, ob))


def ulam_to_class(received, partition):
    """Ulam distance from a permutation to the closest member of a class.

    The members of the class keep every subsequence of `received` whose ranks
        under `partition` are non-decreasing, and no other.
    """

    if received.labels != partition.ground_set:
        raise_with(ParamMismatch, "labels of %s differ from %s" % (received, partition))
    rank_of = partition.rank_of
    ranks = [rank_of[label] for label in received.elements]
    return received.n - len(longest_nondecreasing(ranks))


def closest_class_member(received, partition):
    """Member of the class of `partition` nearest to `received` in Ulam distance."""

    rank_of = partition.rank_of
    ranks = [rank_of[label] for label in received.elements]
    kept = [received.elements[i] for i in longest_nondecreasing(ranks)]
    kept_set = frozenset(kept)
    elements = []
    for i, part in enumerate(partition.parts, 1):
        elements.extend(label for label in kept if rank_of[label] == i)
        elements.extend(sorted(part - kept_set))
    return Permutation(tuple(elements))


def ulam_r_oracle(a, b, r=None, cap=DEFAULT_ENUMERATION_CAP, exhaustive=False):
    """r-regular Ulam distance by enumeration, with a witness pair.

    The default scan visits every member alpha of the first class, up to the
        order of labels sharing a rank of the second, and takes the nearest
        member of the second class directly.
    With `exhaustive`, both classes are enumerated pair by pair.

    Args:
        a(Permutation | OrderedSetPartition): first operand
        b(Permutation | OrderedSetPartition): second operand
        r(int): regularity, required for permutations
        cap(int): enumeration limit
        exhaustive(bool): enumerate R(a) x R(b) label by label
    Returns:
        DistanceWitness: the minimum and the first pair found achieving it
    """

    oa, ob = as_partition(a, r), as_partition(b, r)
    _check_same_ground(oa, ob)
    if exhaustive:
        size = class_size(oa.n, oa.r)
        check_size(size * size, cap, "oracle pairs")
        members_b = list(iter_class(ob))
        best = None
        for alpha in iter_class(oa):
            for beta in members_b:
                value = ulam(alpha, beta)
                if best is None or value < best.value:
                    best = DistanceWitness(value, alpha, beta)
            if best.value == 0:
                break
        return best

    rank_of = ob.rank_of
    part_ranks = [[rank_of[x] for x in sorted(part)] for part in oa.parts]
    count = prod(multiset_ordering_count(ranks) for ranks in part_ranks)
    check_size(count, cap, "oracle rank orderings")
    # NB members of R(a) that agree on every sigma-rank are equally far from R(b)
    orderings = [list(multiset_orderings(ranks)) for ranks in part_ranks]
    best_combo, best_value = None, None
    for combo in product(*orderings):
        value = oa.n - len(longest_nondecreasing(tuple(chain.from_iterable(combo))))
        if best_value is None or value < best_value:
            best_combo, best_value = combo, value
            if value == 0:
                break
    alpha = _member_with_ranks(oa, rank_of, best_combo)
    beta = closest_class_member(alpha, ob)
    return DistanceWitness(ulam(alpha, beta), alpha, beta)


def _member_with_ranks(partition, rank_of, combo):
    """Member of the class of `partition` whose labels carry the ranks `combo`."""

    elements = []
    for part, ranks in zip(partition.parts, combo):
        by_rank = {}
        for label in sorted(part):
            by_rank.setdefault(rank_of[label], []).append(label)
        pending = {rank: iter(labels) for rank, labels in by_rank.items()}
        elements.extend(next(pending[rank]) for rank in ranks)
    return Permutation(tuple(elements))


def _rank_array(partition, labels):
    """0-indexed ranks of `labels` as an integer array."""

    rank_of = partition.rank_of
    return np.fromiter((rank_of[x] - 1 for x in labels), dtype=np.int64, count=len(labels))


def _row_min_distance(rank_matrix, q, metric, row):
    """Smallest distance between word `row` and every later word."""

    first = rank_matrix[row]
    others = rank_matrix[row + 1 :]
    if not len(others):
        return None
    if metric is Metric.HAMMING_R:
        return int((first != others).sum(axis=1).min())
    n_others, n = others.shape
    offsets = (np.arange(n_others, dtype=np.int64) * q * q)[:, None]
    flat = (first * q + others + offsets).ravel()
    counts = np.bincount(flat, minlength=n_others * q * q).reshape(n_others, q, q)
    return int(n - max_chain_weight(counts).max())


def _oracle_row_min_distance(words, r, cap, row):
    first = words[row]
    values = [ulam_r_oracle(first, w, r, cap=cap).value for w in words[row + 1 :]]
    return min(values) if values else None


def code_min_distance(
    codebook,
    metric,
    use_oracle=False,
    cap=DEFAULT_ENUMERATION_CAP,
    n_workers=None,
    progress=False,
    logger=None,
):
    """Minimum distance over all unordered pairs of distinct codewords.

    Args:
        codebook(Codebook | DesignCodebook): the words
        metric(Metric | str): hamming-r or ulam-r
        use_oracle(bool): use the enumeration oracle for ulam-r
        cap(int): enumeration limit, for the oracle and for streaming
        n_workers(int): processes for the pair sweep, None for in process
        progress(bool): show a progress bar over rows of the pair sweep
        logger(logging.Logger): logger to use, None to create
    Returns:
        int: the minimum distance
    """

    logger = logger or logging.getLogger(__name__)
    metric = Metric(metric)
    if metric is Metric.ULAM:
        raise_with(ParamMismatch, "codebooks are measured in hamming-r or ulam-r")
    check_size(codebook.size, cap, "codebook words")
    words = list(codebook)
    if len(words) < 2:
        raise_with(SingletonCode, "need two words, have %i" % len(words), logger)

    if use_oracle and metric is Metric.ULAM_R:
        job = partial(_oracle_row_min_distance, words, codebook.r, cap)
    else:
        labels = sorted(words[0].ground_set)
        rank_matrix = np.stack([_rank_array(w, labels) for w in words])
        job = partial(_row_min_distance, rank_matrix, words[0].q, metric)

    rows = range(len(words) - 1)
    logger.debug("min distance over %i words, %s" % (len(words), metric.value))
    if n_workers is not None and n_workers > 1:
        # MAGIC arbitrary, a few chunks per worker to balance the triangle
        chunksize = max(1, len(rows) // (4 * n_workers))
        with Pool(processes=n_workers) as pool:
            results = pool.imap(job, rows, chunksize=chunksize)
            results = list(_progress(results, len(rows), progress))
    else:
        results = list(_progress(map(job, rows), len(rows), progress))
    return min(v for v in results if v is not None)


def _progress(iterable, total, show):
    if not show:
        return iterable
    # MAGIC 79 columns to match the other progress bars
    return tqdm(iterable, total=total, desc="pairs".ljust(12, " "), ncols=79)
