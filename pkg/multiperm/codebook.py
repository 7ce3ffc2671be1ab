#!/usr/bin/env python3

"""
Codebooks of ordered set partitions, explicit or implicit.

A codeword stands for its whole equivalence class, so a codebook stores one
ordered set partition per class.
Decoders and verifiers only rely on:
    `size`, membership, iteration, `candidate_parts(i)`, and `sample(rng)`.
"""

__author__ = "Michael Teresi, Scott Teresi"

import json
import logging
from dataclasses import dataclass, field
from functools import cached_property
from itertools import permutations
from math import factorial

from multiperm import DEFAULT_MATERIALIZE_CAP
from multiperm import ParamInvalid, ParamMismatch
from multiperm import check_size, raise_if_no_file, raise_with
from multiperm.designs import ResolvableDesign
from multiperm.metrics import Metric
from multiperm.permutation import OrderedSetPartition

CODEBOOK_SCHEMA = "multiperm.codebook/1"


def _unique_in_order(items):
    seen = set()
    out = []
    for item in items:
        if item not in seen:
            seen.add(item)
            out.append(item)
    return out


@dataclass(frozen=True)
class Codebook:
    """Explicit list of codewords.

    Args:
        n(int): length
        r(int): regularity
        claimed_distance(int): minimum distance the construction guarantees
        metric(Metric): hamming-r or ulam-r
        words(tuple(OrderedSetPartition)): one word per class
        construction(dict): name and parameters of the construction
    """

    n: int
    r: int
    claimed_distance: int
    metric: Metric
    words: tuple
    construction: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        metric = Metric(self.metric)
        object.__setattr__(self, "metric", metric)
        if metric is Metric.ULAM:
            raise_with(ParamInvalid, "codebook metric must be hamming-r or ulam-r")
        words = tuple(
            w if isinstance(w, OrderedSetPartition) else OrderedSetPartition(w)
            for w in self.words
        )
        object.__setattr__(self, "words", words)
        if self.claimed_distance < 1:
            raise_with(ParamInvalid, "claimed distance %s < 1" % self.claimed_distance)
        if not words:
            raise_with(ParamInvalid, "codebook has no words")
        ground = words[0].ground_set
        for word in words:
            if word.n != self.n or word.r != self.r or word.ground_set != ground:
                msg = "word %s does not match n=%i r=%i" % (word, self.n, self.r)
                raise_with(ParamMismatch, msg)
        if len(set(words)) != len(words):
            raise_with(ParamInvalid, "codebook repeats a word")

    @property
    def size(self):
        return len(self.words)

    @property
    def q(self):
        return self.n // self.r

    @property
    def ground_set(self):
        return self.words[0].ground_set

    @cached_property
    def _members(self):
        return frozenset(self.words)

    @cached_property
    def _candidates(self):
        return [
            _unique_in_order(w.parts[i] for w in self.words) for i in range(self.q)
        ]

    def __len__(self):
        return len(self.words)

    def __iter__(self):
        return iter(self.words)

    def __contains__(self, word):
        return word in self._members

    def candidate_parts(self, rank):
        """Distinct parts found at the 1-indexed rank across all words."""

        return self._candidates[rank - 1]

    def sample(self, rng):
        """Uniform codeword."""

        return self.words[int(rng.integers(len(self.words)))]

    def to_dict(self):
        return {
            "schema": CODEBOOK_SCHEMA,
            "implicit": False,
            "n": self.n,
            "r": self.r,
            "claimed_distance": self.claimed_distance,
            "metric": self.metric.value,
            "construction": self.construction,
            "words": [str(w) for w in self.words],
        }

    @classmethod
    def from_dict(cls, document):
        return cls(
            n=int(document["n"]),
            r=int(document["r"]),
            claimed_distance=int(document["claimed_distance"]),
            metric=Metric(document["metric"]),
            words=tuple(OrderedSetPartition.parse(w) for w in document["words"]),
            construction=document.get("construction", {}),
        )

    def write(self, filepath):
        """Write the codebook document to a file."""

        return write_codebook(self, filepath)


class DesignCodebook:
    """Every ordering of every class of a resolvable design, not materialized.

    There are m (n/r)! words for m classes.
    """

    def __init__(self, design, k, claimed_distance, logger=None):
        """Initialize.

        Args:
            design(ResolvableDesign): verified resolvable Steiner system
            k(int): strength of the Steiner system
            claimed_distance(int): minimum ulam-r distance guaranteed
            logger(logging.Logger): logger to use, None to create
        """

        self._logger = logger or logging.getLogger(self.__class__.__name__)
        self.design = design
        self.k = int(k)
        self.claimed_distance = int(claimed_distance)
        self.metric = Metric.ULAM_R
        self.n = design.n
        self.r = design.r
        self._class_of = {frozenset(cls): i for i, cls in enumerate(design.classes)}

    @property
    def q(self):
        return self.n // self.r

    @property
    def size(self):
        return len(self.design.classes) * factorial(self.q)

    @property
    def ground_set(self):
        return self.design.points

    @property
    def construction(self):
        return {
            "name": "design",
            "params": {"k": self.k, "design": self.design.to_dict()},
        }

    def __len__(self):
        return self.size

    def __iter__(self):
        for cls in self.design.classes:
            for order in permutations(cls):
                yield OrderedSetPartition(order)

    def __contains__(self, word):
        if word.ground_set != self.ground_set or word.q != self.q:
            return False
        return frozenset(word.parts) in self._class_of

    def candidate_parts(self, rank):
        """Every block may appear at every rank."""

        return self.design.blocks

    def sample(self, rng):
        """Uniform codeword: uniform class, then uniform ordering."""

        cls = self.design.classes[int(rng.integers(len(self.design.classes)))]
        order = rng.permutation(len(cls))
        return OrderedSetPartition(tuple(cls[int(i)] for i in order))

    def materialize(self, cap=DEFAULT_MATERIALIZE_CAP):
        """Explicit Codebook of all words."""

        check_size(self.size, cap, "design codebook words", self._logger)
        return Codebook(
            self.n,
            self.r,
            self.claimed_distance,
            self.metric,
            tuple(self),
            self.construction,
        )

    def to_dict(self):
        return {
            "schema": CODEBOOK_SCHEMA,
            "implicit": True,
            "n": self.n,
            "r": self.r,
            "claimed_distance": self.claimed_distance,
            "metric": self.metric.value,
            "construction": self.construction,
        }

    @classmethod
    def from_dict(cls, document):
        params = document["construction"]["params"]
        design = ResolvableDesign.from_dict(params["design"])
        return cls(design, params["k"], int(document["claimed_distance"]))

    def write(self, filepath):
        """Write the construction parameters to a file."""

        return write_codebook(self, filepath)


def write_codebook(codebook, filepath):
    """Write an explicit or implicit codebook document."""

    with open(filepath, "w") as file:
        json.dump(codebook.to_dict(), file, indent=1)
    return filepath


def read_codebook(filepath, logger=None):
    """Read a codebook document written by `write_codebook`.

    Returns:
        Codebook | DesignCodebook
    """

    logger = logger or logging.getLogger(__name__)
    raise_if_no_file(filepath, logger=logger)
    with open(filepath) as file:
        document = json.load(file)
    if document.get("schema") != CODEBOOK_SCHEMA:
        raise_with(ParamInvalid, "unknown codebook schema in %s" % filepath, logger)
    if document.get("implicit"):
        return DesignCodebook.from_dict(document)
    return Codebook.from_dict(document)
