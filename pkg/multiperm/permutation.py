#!/usr/bin/env python3

"""
Permutations, r-regular multipermutations, and ordered set partitions.

A permutation is the raw cell ordering read from memory.
Grouping its positions into consecutive blocks of r gives the ranks:
    the labels in positions (i-1)r+1 .. ir all carry rank i.
The rank vector (multipermutation) and the ordered set partition are two views
of the same equivalence class R_r(pi), the set of (r!)^(n/r) permutations that
only differ by reordering elements within a block.
"""

__author__ = "Michael Teresi, Scott Teresi"

from dataclasses import dataclass
from functools import cached_property
from itertools import chain, permutations, product
from math import factorial, prod

from multiperm import DEFAULT_ENUMERATION_CAP
from multiperm import LengthMismatch, NonCanonicalLabels, ParamInvalid, UnknownLabel
from multiperm import check_divides, check_size, raise_with

_PERM_SEP = ","  # MAGIC text form of a permutation, e.g. 3,2,4,1
_PART_SEP = "|"  # MAGIC text form of a partition, e.g. 2,3|1,4


@dataclass(frozen=True)
class Permutation:
    """One-line arrangement of distinct positive labels.

    Args:
        elements(tuple(int)): labels in position order, position 1 first
    """

    elements: tuple

    def __post_init__(self):
        elements = tuple(int(e) for e in self.elements)
        object.__setattr__(self, "elements", elements)
        if not elements:
            raise_with(ParamInvalid, "permutation must have length >= 1")
        if min(elements) < 1:
            raise_with(ParamInvalid, "labels must be positive: %s" % (elements,))
        if len(set(elements)) != len(elements):
            raise_with(ParamInvalid, "repeated label in %s" % (elements,))

    @classmethod
    def parse(cls, text):
        """Permutation from its text form, e.g. '3,2,4,1'."""

        try:
            elements = tuple(int(tok) for tok in text.strip().split(_PERM_SEP))
        except ValueError:
            raise_with(ParamInvalid, "not a permutation: '%s'" % text)
        return cls(elements)

    @classmethod
    def identity(cls, n):
        return cls(tuple(range(1, n + 1)))

    @property
    def n(self):
        return len(self.elements)

    @property
    def labels(self):
        return frozenset(self.elements)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __getitem__(self, index):
        return self.elements[index]

    def __str__(self):
        return _PERM_SEP.join(str(e) for e in self.elements)


@dataclass(frozen=True)
class Multipermutation:
    """Rank vector: entry j is the rank of label j, each rank used r times.

    Args:
        ranks(tuple(int)): length n vector over 1..n/r
        r(int): regularity
    """

    ranks: tuple
    r: int

    def __post_init__(self):
        ranks = tuple(int(x) for x in self.ranks)
        object.__setattr__(self, "ranks", ranks)
        check_divides(len(ranks), self.r)
        q = len(ranks) // self.r
        counts = [0] * (q + 1)
        for rank in ranks:
            if not 1 <= rank <= q:
                raise_with(ParamInvalid, "rank %i outside 1..%i" % (rank, q))
            counts[rank] += 1
        if any(c != self.r for c in counts[1:]):
            raise_with(ParamInvalid, "ranks of %s not %i-regular" % (ranks, self.r))

    @property
    def n(self):
        return len(self.ranks)

    @property
    def q(self):
        """Number of distinct ranks."""

        return len(self.ranks) // self.r

    def __str__(self):
        return _PERM_SEP.join(str(x) for x in self.ranks)


@dataclass(frozen=True)
class OrderedSetPartition:
    """The n/r rank classes of a multipermutation, listed in rank order.

    Ground sets other than 1..n are allowed; ranks then follow position.

    Args:
        parts(tuple(frozenset)): part i holds the labels of rank i
        ground_set(frozenset): the labels, None for the union of the parts
    """

    parts: tuple
    ground_set: frozenset = None

    def __post_init__(self):
        parts = tuple(frozenset(int(e) for e in p) for p in self.parts)
        object.__setattr__(self, "parts", parts)
        if not parts:
            raise_with(ParamInvalid, "partition must have at least one part")
        union = frozenset().union(*parts)
        ground = union if self.ground_set is None else frozenset(self.ground_set)
        object.__setattr__(self, "ground_set", ground)
        size = len(parts[0])
        if size < 1 or any(len(p) != size for p in parts):
            raise_with(ParamInvalid, "parts must share a size >= 1: %s" % str(self))
        if sum(len(p) for p in parts) != len(union):
            raise_with(ParamInvalid, "parts are not disjoint: %s" % str(self))
        if union != ground:
            raise_with(ParamInvalid, "parts do not cover the ground set: %s" % self)

    @classmethod
    def parse(cls, text):
        """Partition from its text form, e.g. '2,3|1,4'."""

        try:
            parts = [
                [int(tok) for tok in chunk.split(_PERM_SEP)]
                for chunk in text.strip().split(_PART_SEP)
            ]
        except ValueError:
            raise_with(ParamInvalid, "not a partition: '%s'" % text)
        return cls(tuple(parts))

    @classmethod
    def from_permutation(cls, perm, r):
        """Partition of the positions of `perm` into consecutive blocks of r."""

        check_divides(perm.n, r)
        elements = perm.elements
        parts = tuple(elements[i : i + r] for i in range(0, len(elements), r))
        return cls(parts, frozenset(elements))

    @property
    def r(self):
        return len(self.parts[0])

    @property
    def n(self):
        return len(self.ground_set)

    @property
    def q(self):
        """Number of parts."""

        return len(self.parts)

    @cached_property
    def rank_of(self):
        """Map from label to its 1-indexed rank."""

        return {label: i for i, part in enumerate(self.parts, 1) for label in part}

    def is_canonical(self):
        """True if the ground set is exactly 1..n."""

        return self.ground_set == frozenset(range(1, self.n + 1))

    def canonical_perm(self):
        return canonical_perm(self)

    def multipermutation(self):
        if not self.is_canonical():
            raise_with(NonCanonicalLabels, "ground set of %s is not 1..n" % self)
        rank_of = self.rank_of
        return Multipermutation(tuple(rank_of[j] for j in range(1, self.n + 1)), self.r)

    def __str__(self):
        return _PART_SEP.join(
            _PERM_SEP.join(str(e) for e in sorted(part)) for part in self.parts
        )


def rank_vector(perm, r):
    """Multipermutation of `perm` with regularity r.

    Args:
        perm(Permutation): labels must be exactly 1..n
        r(int): regularity, must divide n
    Returns:
        Multipermutation: m(j) = ceil(position(j) / r)
    """

    check_divides(perm.n, r)
    if perm.labels != frozenset(range(1, perm.n + 1)):
        raise_with(NonCanonicalLabels, "labels of %s are not 1..%i" % (perm, perm.n))
    ranks = [0] * perm.n
    for pos, label in enumerate(perm.elements):
        ranks[label - 1] = pos // r + 1
    return Multipermutation(tuple(ranks), r)


def partition_of(mperm):
    """Ordered set partition of a multipermutation, part i = {j : m(j) = i}."""

    parts = [[] for _ in range(mperm.q)]
    for label, rank in enumerate(mperm.ranks, 1):
        parts[rank - 1].append(label)
    return OrderedSetPartition(tuple(parts))


def partition_of_permutation(perm, r):
    """Ordered set partition of `perm`, any label set."""

    return OrderedSetPartition.from_permutation(perm, r)


def canonical_perm(partition):
    """Class representative: each part's labels ascending, parts in rank order."""

    return Permutation(tuple(chain.from_iterable(sorted(p) for p in partition.parts)))


def class_size(n, r):
    """Size (r!)^(n/r) of every equivalence class."""

    check_divides(n, r)
    return factorial(r) ** (n // r)


def count_multipermutations(n, r):
    """Number n! / (r!)^(n/r) of r-regular multipermutations of length n."""

    return factorial(n) // class_size(n, r)


def equivalence_class(perm, r, cap=DEFAULT_ENUMERATION_CAP):
    """All permutations sharing the rank vector of `perm`.

    Args:
        perm(Permutation): class representative
        r(int): regularity
        cap(int): enumeration limit
    Returns:
        set(Permutation): the (r!)^(n/r) class members
    """

    check_size(class_size(perm.n, r), cap, "equivalence class")
    partition = OrderedSetPartition.from_permutation(perm, r)
    blocks = [permutations(sorted(part)) for part in partition.parts]
    return {Permutation(tuple(chain.from_iterable(c))) for c in product(*blocks)}


def iter_class(partition):
    """Stream the members of the class of `partition` without a size check."""

    blocks = [permutations(sorted(part)) for part in partition.parts]
    for combo in product(*blocks):
        yield Permutation(tuple(chain.from_iterable(combo)))


def random_class_member(partition, rng):
    """Uniform member of the class of `partition`.

    Args:
        partition(OrderedSetPartition): the class
        rng(numpy.random.Generator): source of randomness
    """

    elements = []
    for part in partition.parts:
        elements.extend(int(e) for e in rng.permutation(sorted(part)))
    return Permutation(tuple(elements))


def interleave_blocks(seqs, r):
    """Take r elements from each sequence in turn until all are exhausted.

    Args:
        seqs(list(sequence)): equal length sequences, lengths multiple of r
        r(int): block size, 1 for element-wise interleaving
    Returns:
        tuple: the interleaved sequence
    """

    seqs = [tuple(s) for s in seqs]
    if not seqs:
        raise_with(LengthMismatch, "nothing to interleave")
    length = len(seqs[0])
    if any(len(s) != length for s in seqs):
        raise_with(LengthMismatch, "lengths differ: %s" % [len(s) for s in seqs])
    if r < 1 or length % r:
        raise_with(LengthMismatch, "length %i not a multiple of r=%i" % (length, r))
    out = []
    for start in range(0, length, r):
        for seq in seqs:
            out.extend(seq[start : start + r])
    return tuple(out)


def project(seq, labels):
    """Subsequence of `seq` retaining exactly `labels`, in original order."""

    labels = frozenset(labels)
    missing = labels.difference(seq)
    if missing:
        raise_with(UnknownLabel, "labels %s not in sequence" % sorted(missing))
    return tuple(x for x in seq if x in labels)


def enumerate_rank_vectors(n, r, cap=DEFAULT_ENUMERATION_CAP):
    """Yield every multipermutation of M(n, r) once, lexicographically.

    Args:
        n(int): length
        r(int): regularity
        cap(int): enumeration limit
    Yields:
        Multipermutation
    """

    check_divides(n, r)
    check_size(count_multipermutations(n, r), cap, "rank vectors of M(%i,%i)" % (n, r))
    for ranks in _multiset_permutations([r] * (n // r), n):
        yield Multipermutation(ranks, r)


def multiset_orderings(items):
    """Distinct orderings of the multiset `items`, lexicographic."""

    items = list(items)
    values = sorted(set(items))
    counts = [items.count(v) for v in values]
    for seq in _multiset_permutations(counts, len(items)):
        yield tuple(values[s - 1] for s in seq)


def multiset_ordering_count(items):
    """Number of distinct orderings of the multiset `items`."""

    items = list(items)
    return factorial(len(items)) // prod(factorial(items.count(v)) for v in set(items))


def _multiset_permutations(counts, length):
    """Lexicographic sequences using symbol v+1 exactly counts[v] times."""

    seq = [0] * length

    def _fill(pos):
        if pos == length:
            yield tuple(seq)
            return
        for symbol, remaining in enumerate(counts):
            if remaining:
                counts[symbol] -= 1
                seq[pos] = symbol + 1
                yield from _fill(pos + 1)
                counts[symbol] += 1

    yield from _fill(0)
