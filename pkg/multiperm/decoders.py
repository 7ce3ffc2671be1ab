#!/usr/bin/env python3

"""
Decoders from a received permutation to a codeword.

Every decoder reports DETECTED_FAILURE instead of guessing:
    no candidate, two candidates, or an assembled partition outside the code.
"""

__author__ = "Michael Teresi, Scott Teresi"

import logging
from dataclasses import dataclass
from enum import Enum
from functools import partial

from multiperm import DEFAULT_ENUMERATION_CAP
from multiperm import ParamInvalid, ParamMismatch
from multiperm import check_size, raise_with
from multiperm.constructions import ComponentSpec, GroupingParams
from multiperm.metrics import Metric, hamming_r, ulam, ulam_to_class
from multiperm.permutation import OrderedSetPartition, Permutation
from multiperm.permutation import interleave_blocks, project


class Outcome(Enum):
    DECODED = "decoded"
    DETECTED_FAILURE = "detected-failure"


@dataclass(frozen=True)
class DecodeResult:
    """Decoder output.

    Args:
        outcome(Outcome): decoded or detected failure
        word(OrderedSetPartition): the codeword, only when decoded
        diagnostics(tuple(int)): per rank (or per component) candidate counts
        reason(str): why decoding failed
    """

    outcome: Outcome
    word: OrderedSetPartition = None
    diagnostics: tuple = ()
    reason: str = ""

    def __post_init__(self):
        if (self.outcome is Outcome.DECODED) != (self.word is not None):
            raise_with(ParamInvalid, "a word is present iff decoding succeeded")

    @classmethod
    def decoded_as(cls, word, diagnostics=()):
        return cls(Outcome.DECODED, word, tuple(diagnostics))

    @classmethod
    def failure(cls, reason, diagnostics=()):
        return cls(Outcome.DETECTED_FAILURE, None, tuple(diagnostics), reason)

    @property
    def decoded(self):
        return self.outcome is Outcome.DECODED


def _received_partition(received, r, ground_set):
    if received.labels != ground_set:
        raise_with(ParamMismatch, "received %s is not over the code's labels" % received)
    return OrderedSetPartition.from_permutation(received, r)


def decode_intersection(codebook, received, t, logger=None):
    """Pick, at every rank, the unique candidate part sharing >= r - t labels.

    Correct whenever the codebook passes `check_almost_disjoint(t)` and
        `received` is within t translocations of a codeword's class.

    Args:
        codebook(Codebook | DesignCodebook): almost disjoint code
        received(Permutation): the read permutation
        t(int): translocations to correct
        logger(logging.Logger): logger to use, None to create
    """

    logger = logger or logging.getLogger(__name__)
    r = codebook.r
    if t < 0 or 2 * t >= r:
        raise_with(ParamInvalid, "need 0 <= 2t < r, got t=%s r=%i" % (t, r), logger)
    observed = _received_partition(received, r, codebook.ground_set)
    threshold = r - t
    chosen, counts = [], []
    for rank, part in enumerate(observed.parts, 1):
        hits = [p for p in codebook.candidate_parts(rank) if len(p & part) >= threshold]
        counts.append(len(hits))
        chosen.append(hits[0] if len(hits) == 1 else None)
    if any(c != 1 for c in counts):
        return DecodeResult.failure("not one candidate at every rank", counts)
    if len(frozenset().union(*chosen)) != codebook.n:
        return DecodeResult.failure("chosen parts overlap", counts)
    word = OrderedSetPartition(tuple(chosen))
    if word not in codebook:
        return DecodeResult.failure("assembled partition is not a codeword", counts)
    return DecodeResult.decoded_as(word, counts)


def decode_grouping(params, received):
    """Send each group to the rank holding at least t+1 of its labels.

    Args:
        params(GroupingParams): the grouping code
        received(Permutation): the read permutation
    Returns:
        DecodeResult: diagnostics count the groups sent to each rank
    """

    r, t = params.r, params.t
    observed = _received_partition(received, r, frozenset(range(1, params.n + 1)))
    parts = [set() for _ in range(observed.q)]
    counts = [0] * observed.q
    for group in params.groups:
        overlaps = [len(group & part) for part in observed.parts]
        best = max(overlaps)
        ranks = [i for i, v in enumerate(overlaps) if v == best and v >= t + 1]
        if len(ranks) != 1:
            msg = "group %s has no unique rank" % sorted(group)
            return DecodeResult.failure(msg, counts)
        parts[ranks[0]].update(group)
        counts[ranks[0]] += 1
    per_part = r // params.group_size
    if any(c != per_part for c in counts):
        return DecodeResult.failure("a rank received the wrong number of groups", counts)
    return DecodeResult.decoded_as(OrderedSetPartition(tuple(parts)), counts)


def decode_permutation_code(code, received, t):
    """Unique word of a permutation code within plain Ulam distance t, else None."""

    distances = [ulam(word, received) for word in code]
    best = min(distances)
    if best > t or distances.count(best) > 1:
        return None
    return code[distances.index(best)]


def decode_interleaved(spec, received, component_decoder=None):
    """Decode each projection onto P_i independently, then interleave.

    Args:
        spec(ComponentSpec): the interleaved code
        received(Permutation): the read permutation
        component_decoder(callable): (code, received, t) -> Permutation | None,
            None for minimum distance decoding with radius (d - 1) // 2
    Returns:
        DecodeResult: diagnostics hold 1 per decoded component, 0 otherwise
    """

    decoder = component_decoder or decode_permutation_code
    _received_partition(received, spec.r, frozenset(range(1, spec.n + 1)))
    t = (spec.d - 1) // 2
    components, counts = [], []
    for part, code in zip(spec.parts, spec.component_codes):
        projected = Permutation(project(received.elements, part))
        word = decoder(code, projected, t)
        counts.append(0 if word is None else 1)
        components.append(word)
    if any(w is None for w in components):
        return DecodeResult.failure("a component did not decode", counts)
    merged = Permutation(interleave_blocks([w.elements for w in components], 1))
    word = OrderedSetPartition.from_permutation(merged, spec.r)
    return DecodeResult.decoded_as(word, counts)


def decode_min_distance(
    codebook, received, metric, t, budget=DEFAULT_ENUMERATION_CAP, logger=None
):
    """Nearest codeword, accepted only if unique and within distance t.

    Ulam distance is measured from `received` itself to the nearest member
        of each codeword's class.

    Args:
        codebook(Codebook | DesignCodebook): any codebook
        received(Permutation): the read permutation
        metric(Metric | str): hamming-r or ulam-r
        t(int): decoding radius
        budget(int): most words streamed from the codebook
        logger(logging.Logger): logger to use, None to create
    Returns:
        DecodeResult: diagnostics are (smallest distance, words at that distance)
    """

    metric = Metric(metric)
    check_size(codebook.size, budget, "decoder codebook scan", logger)
    r = codebook.r
    _received_partition(received, r, codebook.ground_set)
    if metric is Metric.HAMMING_R:
        distance = lambda word: hamming_r(received, word, r)
    elif metric is Metric.ULAM_R:
        distance = lambda word: ulam_to_class(received, word)
    else:
        raise_with(ParamInvalid, "codebooks decode in hamming-r or ulam-r", logger)

    best, best_word, ties = None, None, 0
    for word in codebook:
        value = distance(word)
        if best is None or value < best:
            best, best_word, ties = value, word, 1
        elif value == best:
            ties += 1
    diagnostics = (best, ties)
    if best > t:
        msg = "nearest word at distance %i > %i" % (best, t)
        return DecodeResult.failure(msg, diagnostics)
    if ties > 1:
        msg = "%i words tie at distance %i" % (ties, best)
        return DecodeResult.failure(msg, diagnostics)
    return DecodeResult.decoded_as(best_word, diagnostics)


DECODER_NAMES = ("intersection", "grouping", "interleaved", "min-distance")


def make_decoder(name, codebook, t, metric=None, logger=None):
    """Picklable callable Permutation -> DecodeResult for a named decoder.

    The grouping and interleaved decoders rebuild their parameters from the
        codebook's construction record.
    """

    construction = getattr(codebook, "construction", {}) or {}
    built_by = construction.get("name")
    if name == "intersection":
        return partial(decode_intersection, codebook, t=t)
    if name == "min-distance":
        return partial(decode_min_distance, codebook, metric=metric or codebook.metric, t=t)
    if name == "grouping" and built_by == "grouping":
        return partial(decode_grouping, GroupingParams.from_dict(construction["params"]))
    if name == "interleaved" and built_by == "interleaved":
        return partial(decode_interleaved, ComponentSpec.from_dict(construction["params"]))
    msg = "decoder '%s' does not apply to a '%s' codebook, choose from %s" % (
        name,
        built_by,
        ", ".join(DECODER_NAMES),
    )
    raise_with(ParamInvalid, msg, logger)
