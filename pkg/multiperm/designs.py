#!/usr/bin/env python3

"""
Combinatorial scaffolds for Ulam-metric codes.

Semi-Latin squares: q x q grids of r-subsets of [n], q = n / r,
    with every symbol once per row and once per column.
Resolvable designs: blocks of size r grouped into classes that each partition [n].
    The diagonal construction for prime r yields a resolvable Steiner system
    S(2, r, r^2) with r + 1 classes.
"""

__author__ = "Michael Teresi, Scott Teresi"

import json
import logging
from collections import Counter, namedtuple
from dataclasses import dataclass
from itertools import combinations

from multiperm import NotOdd, NotPrime, ParamInvalid
from multiperm import check_divides, raise_if_no_file, raise_with
from multiperm.permutation import OrderedSetPartition

DESIGN_SCHEMA = "multiperm.design/1"
SQUARE_SCHEMA = "multiperm.semilatin/1"

ValidityReport = namedtuple("ValidityReport", ["valid", "message", "location"])
DesignReport = namedtuple(
    "DesignReport",
    ["valid", "message", "max_cross_intersection", "max_within_intersection"],
)


@dataclass(frozen=True)
class SemiLatinSquare:
    """A q x q grid of r-subsets of [n].

    Validity is not enforced on construction, see `validate_semi_latin`.

    Args:
        cells(tuple(tuple(frozenset))): cells[i][j] is row i, column j
    """

    cells: tuple

    def __post_init__(self):
        cells = tuple(
            tuple(frozenset(int(e) for e in c) for c in row) for row in self.cells
        )
        object.__setattr__(self, "cells", cells)
        if not cells or not cells[0] or not cells[0][0]:
            raise_with(ParamInvalid, "semi-Latin square needs a non-empty cell")

    @property
    def q(self):
        return len(self.cells)

    @property
    def r(self):
        return len(self.cells[0][0])

    @property
    def n(self):
        return self.q * self.r

    def rows(self):
        """Each row as an ordered set partition."""

        return [OrderedSetPartition(row) for row in self.cells]

    def to_dict(self):
        return {
            "schema": SQUARE_SCHEMA,
            "cells": [[sorted(c) for c in row] for row in self.cells],
        }

    @classmethod
    def from_dict(cls, document):
        return cls(tuple(tuple(c for c in row) for row in document["cells"]))


@dataclass(frozen=True)
class ResolvableDesign:
    """Blocks of size r over [n] grouped into classes.

    Args:
        n(int): number of points
        r(int): block size
        classes(tuple(tuple(frozenset))): each class lists its blocks
    """

    n: int
    r: int
    classes: tuple

    def __post_init__(self):
        classes = tuple(
            tuple(frozenset(int(e) for e in b) for b in c) for c in self.classes
        )
        object.__setattr__(self, "classes", classes)
        check_divides(self.n, self.r)
        if not classes:
            raise_with(ParamInvalid, "design needs at least one class")
        for block in self.blocks:
            if len(block) != self.r:
                msg = "block %s is not of size %i" % (sorted(block), self.r)
                raise_with(ParamInvalid, msg)

    @property
    def blocks(self):
        return [block for cls in self.classes for block in cls]

    @property
    def points(self):
        return frozenset(range(1, self.n + 1))

    def to_dict(self):
        return {
            "schema": DESIGN_SCHEMA,
            "n": self.n,
            "r": self.r,
            "classes": [[sorted(b) for b in cls] for cls in self.classes],
        }

    @classmethod
    def from_dict(cls, document):
        return cls(int(document["n"]), int(document["r"]), document["classes"])

    def write(self, filepath):
        """Write the design document to a file."""

        with open(filepath, "w") as file:
            json.dump(self.to_dict(), file, indent=1)
        return filepath

    @classmethod
    def read(cls, filepath, logger=None):
        """Read a design document from a file."""

        raise_if_no_file(filepath, logger=logger)
        with open(filepath) as file:
            return cls.from_dict(json.load(file))


def make_semi_latin(n, r):
    """Semi-Latin square from r cyclic Latin squares on disjoint symbol ranges.

    Layer k (0-indexed) uses symbols k*q+1 .. (k+1)*q at (i + j + k) mod q.
    """

    check_divides(n, r)
    q = n // r
    cells = tuple(
        tuple(
            frozenset(k * q + (i + j + k) % q + 1 for k in range(r)) for j in range(q)
        )
        for i in range(q)
    )
    return SemiLatinSquare(cells)


def validate_semi_latin(square):
    """Report whether every symbol appears once per row and once per column.

    Returns:
        ValidityReport: location is ('row' | 'column' | 'cell', 1-indexed) on failure
    """

    q, r = square.q, square.r
    symbols = frozenset(range(1, q * r + 1))
    for i, row in enumerate(square.cells, 1):
        if len(row) != q:
            msg = "row %i has %i cells, expected %i" % (i, len(row), q)
            return ValidityReport(False, msg, ("row", i))
        for j, cell in enumerate(row, 1):
            if len(cell) != r:
                msg = "cell (%i, %i) has %i symbols, expected %i" % (i, j, len(cell), r)
                return ValidityReport(False, msg, ("cell", (i, j)))
    lines = [("row", i, row) for i, row in enumerate(square.cells, 1)]
    lines += [("column", j, col) for j, col in enumerate(zip(*square.cells), 1)]
    for kind, index, cells in lines:
        counts = Counter(s for cell in cells for s in cell)
        repeated = sorted(s for s, c in counts.items() if c > 1)
        if repeated:
            msg = "%s %i repeats symbol %i" % (kind, index, repeated[0])
            return ValidityReport(False, msg, (kind, index))
        if frozenset(counts) != symbols:
            missing = sorted(symbols - frozenset(counts))
            extra = sorted(frozenset(counts) - symbols)
            msg = "%s %i is missing %s, has extra %s" % (kind, index, missing, extra)
            return ValidityReport(False, msg, (kind, index))
    return ValidityReport(True, "valid %ix%i semi-Latin square" % (q, q), None)


def is_prime(value):
    """Deterministic primality by trial division."""

    if value < 2:
        return False
    divisor = 2
    while divisor * divisor <= value:
        if value % divisor == 0:
            return False
        divisor += 1
    return True


def khare_rbibd(r, logger=None):
    """Resolvable S(2, r, r^2) by cyclically continued diagonals.

    Class 1 lists 1..r^2 row-wise in an r x r array, class 2 is its transpose.
    Each further class takes diagonals of the previous array (rows sorted):
        row t holds A[k][(k - t) mod r] for k = 0..r-1.

    Args:
        r(int): an odd prime
        logger(logging.Logger): logger to use, None to create
    """

    logger = logger or logging.getLogger(__name__)
    if not is_prime(r):
        raise_with(NotPrime, "block size %s is not prime" % r, logger)
    if r % 2 == 0:
        raise_with(NotOdd, "block size %i is not odd" % r, logger)

    array = [list(range(i * r + 1, (i + 1) * r + 1)) for i in range(r)]
    arrays = [array, [list(col) for col in zip(*array)]]
    for _ in range(r - 1):
        prev = arrays[-1]
        arrays.append(
            [sorted(prev[k][(k - t) % r] for k in range(r)) for t in range(r)]
        )
    logger.debug("diagonal design r=%i: %i classes" % (r, len(arrays)))
    return ResolvableDesign(r * r, r, tuple(tuple(rows) for rows in arrays))


def verify_design(design, k, lam):
    """Check resolvability, k-subset coverage, and report block intersections.

    Args:
        design(ResolvableDesign): the design
        k(int): subset size
        lam(int): required number of blocks containing each k-subset
    Returns:
        DesignReport: first failure in the message when invalid
    """

    blocks = design.blocks
    cross = 0
    within = 0
    for ci, cj in combinations(range(len(design.classes)), 2):
        for a in design.classes[ci]:
            for b in design.classes[cj]:
                cross = max(cross, len(a & b))
    for cls in design.classes:
        for a, b in combinations(cls, 2):
            within = max(within, len(a & b))

    def _report(valid, msg):
        return DesignReport(valid, msg, cross, within)

    if not 1 <= k <= design.r:
        return _report(False, "k=%i outside 1..r=%i" % (k, design.r))
    points = design.points
    for index, cls in enumerate(design.classes, 1):
        covered = Counter(p for block in cls for p in block)
        if frozenset(covered) != points or any(c != 1 for c in covered.values()):
            return _report(False, "class %i does not partition [%i]" % (index, design.n))

    coverage = Counter(s for block in blocks for s in combinations(sorted(block), k))
    for subset in combinations(range(1, design.n + 1), k):
        if coverage[subset] != lam:
            msg = "%i-subset %s is in %i blocks, expected %i" % (
                k,
                subset,
                coverage[subset],
                lam,
            )
            return _report(False, msg)
    msg = "valid resolvable %i-(%i,%i,%i) design" % (k, design.n, design.r, lam)
    return _report(True, msg)
