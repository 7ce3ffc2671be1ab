#!/usr/bin/env python3

"""
Unit test decoders.py
"""

__author__ = "Michael Teresi, Scott Teresi"

from itertools import permutations

import pytest

from multiperm import ParamInvalid, ParamMismatch, SizeLimit
from multiperm.channel import Translocation, apply_translocation, random_translocations
from multiperm.codebook import Codebook
from multiperm.constructions import GroupingParams, design_code, grouping_code
from multiperm.constructions import interleaved_code, interleaved_greedy_spec
from multiperm.constructions import layered_hamming_code
from multiperm.decoders import DecodeResult, Outcome, decode_grouping
from multiperm.decoders import decode_interleaved, decode_intersection
from multiperm.decoders import decode_min_distance, decode_permutation_code
from multiperm.decoders import make_decoder
from multiperm.designs import khare_rbibd
from multiperm.metrics import Metric
from multiperm.permutation import OrderedSetPartition, canonical_perm
from multiperm.permutation import iter_class, random_class_member
from multiperm.test_utils import perm as P
from multiperm.test_utils import rng


def W(text):
    return OrderedSetPartition.parse(text)


def all_translocations(n):
    return [Translocation(i, j) for i, j in permutations(range(1, n + 1), 2)]


@pytest.fixture
def grouping_params():
    """n=12, r=6, t=1 with consecutive triples."""

    return GroupingParams.consecutive(12, 6, 1)


@pytest.fixture
def grouping(grouping_params):
    """The six word grouping code."""

    return grouping_code(grouping_params)


@pytest.fixture
def layered():
    """Two class layered code over [8] at ulam-r distance 4."""

    return layered_hamming_code(8, 2, 4, 1)


@pytest.fixture
def two_word_code():
    """Two words over [4] at ulam-r distance 1."""

    return Codebook(4, 2, 1, Metric.ULAM_R, (W("2,3|1,4"), W("1,3|2,4")))


def test_intersection_example(grouping):
    """Is 7,1,2,...,6,8,...,12 decoded to the first word?"""

    received = P(7, 1, 2, 3, 4, 5, 6, 8, 9, 10, 11, 12)
    result = decode_intersection(grouping, received, 1)
    assert result.outcome is Outcome.DECODED
    assert str(result.word) == "1,2,3,4,5,6|7,8,9,10,11,12"
    assert result.diagnostics == (1, 1)


def test_grouping_example(grouping_params):
    """Is the third group sent to rank 2 with two of its labels there?"""

    received = P(7, 1, 2, 3, 4, 5, 6, 8, 9, 10, 11, 12)
    result = decode_grouping(grouping_params, received)
    assert result.decoded
    assert str(result.word) == "1,2,3,4,5,6|7,8,9,10,11,12"
    assert result.diagnostics == (2, 2)


def test_zero_errors(grouping, grouping_params):
    """Does every decoder return the word for its own canonical permutation?"""

    for word in grouping:
        received = canonical_perm(word)
        assert decode_intersection(grouping, received, 1).word == word
        assert decode_grouping(grouping_params, received).word == word
        assert decode_min_distance(grouping, received, Metric.ULAM_R, 1).word == word


def test_grouping_exhaustive(grouping, grouping_params, rng):
    """Is every single translocation of several class members corrected?"""

    for word in grouping:
        members = [canonical_perm(word)] + [random_class_member(word, rng) for _ in range(4)]
        for member in members:
            for phi in all_translocations(12):
                received = apply_translocation(member, phi)
                assert decode_intersection(grouping, received, 1).word == word
                assert decode_grouping(grouping_params, received).word == word


def test_grouping_decoders_agree(grouping, grouping_params, rng):
    """Do both decoders give identical answers on 1000 random trials?"""

    for _ in range(1000):
        word = grouping.sample(rng)
        received, _ = random_translocations(random_class_member(word, rng), 1, rng)
        a = decode_intersection(grouping, received, 1)
        b = decode_grouping(grouping_params, received)
        assert (a.outcome, a.word) == (b.outcome, b.word)
        assert a.word == word


def test_grouping_too_many_errors(grouping, grouping_params):
    """Does a rank with three groups fail rather than guess?"""

    received = P(1, 2, 4, 5, 7, 8, 3, 6, 9, 10, 11, 12)
    result = decode_grouping(grouping_params, received)
    assert result.outcome is Outcome.DETECTED_FAILURE
    assert result.diagnostics == (3, 1)
    assert not decode_intersection(grouping, received, 1).decoded


def test_intersection_preconditions(grouping):
    """Do 2t >= r or foreign labels raise?"""

    with pytest.raises(ParamInvalid):
        decode_intersection(grouping, canonical_perm(grouping.words[0]), 3)
    with pytest.raises(ParamMismatch):
        decode_intersection(grouping, P(*range(1, 13), 13), 1)


def test_design_intersection(rng):
    """Are random single translocations corrected over the implicit r=5 code?"""

    code = design_code(khare_rbibd(5), 2, 3, materialize_cap=100)
    for _ in range(200):
        word = code.sample(rng)
        received, _ = random_translocations(random_class_member(word, rng), 1, rng)
        result = decode_intersection(code, received, 1)
        assert result.decoded
        assert result.word == word


def test_interleaved_example():
    """Is 4,1,2,5,3,6 decoded to the class of 1,4,2,5,3,6?"""

    spec = interleaved_greedy_spec(6, 2, 2)
    result = decode_interleaved(spec, P(4, 1, 2, 5, 3, 6))
    assert result.decoded
    assert result.word == OrderedSetPartition.from_permutation(P(1, 4, 2, 5, 3, 6), 2)
    assert result.diagnostics == (1, 1)


def test_interleaved_radius_zero():
    """With d=2 components is a translocation never miscorrected?"""

    spec = interleaved_greedy_spec(6, 2, 2)
    code = interleaved_code(spec)
    for word in code:
        stored = canonical_perm(word)
        for phi in all_translocations(6):
            result = decode_interleaved(spec, apply_translocation(stored, phi))
            assert not result.decoded or result.word == word


def test_interleaved_corrects_one():
    """With d=3 components is every single translocation corrected?"""

    spec = interleaved_greedy_spec(8, 2, 3)
    code = interleaved_code(spec)
    assert code.size == 4
    for word in code:
        for member in list(iter_class(word))[:4]:
            for phi in all_translocations(8):
                result = decode_interleaved(spec, apply_translocation(member, phi))
                assert result.word == word


def test_interleaved_component_failure():
    """Does a component outside its radius fail the whole decode?"""

    spec = interleaved_greedy_spec(6, 2, 2)
    result = decode_interleaved(spec, P(2, 4, 1, 5, 3, 6))
    assert result.outcome is Outcome.DETECTED_FAILURE
    assert result.diagnostics == (0, 1)


def test_decode_permutation_code():
    """Is the unique word within the radius returned, None otherwise?"""

    code = (P(1, 2, 3, 4), P(4, 3, 2, 1))
    assert decode_permutation_code(code, P(2, 1, 3, 4), 1) == P(1, 2, 3, 4)
    assert decode_permutation_code(code, P(2, 1, 4, 3), 1) is None


def test_min_distance_example(layered):
    """Is one translocation of 1,2,5,6,3,4,7,8 decoded back?"""

    received = apply_translocation(P(1, 2, 5, 6, 3, 4, 7, 8), Translocation(3, 6))
    assert received == P(1, 2, 6, 3, 4, 5, 7, 8)
    result = decode_min_distance(layered, received, Metric.ULAM_R, 1)
    assert result.decoded
    assert result.word == OrderedSetPartition.from_permutation(P(1, 2, 5, 6, 3, 4, 7, 8), 2)
    assert result.diagnostics == (1, 1)


def test_min_distance_exhaustive(layered):
    """Is every single translocation of every class member corrected?"""

    for word in layered:
        for member in iter_class(word):
            for phi in all_translocations(8):
                received = apply_translocation(member, phi)
                result = decode_min_distance(layered, received, "ulam-r", 1)
                assert result.word == word


def test_min_distance_exact(layered):
    """Is a codeword decoded to itself at distance 0?"""

    word = layered.words[1]
    result = decode_min_distance(layered, canonical_perm(word), Metric.ULAM_R, 1)
    assert result.word == word
    assert result.diagnostics == (0, 1)


@pytest.mark.parametrize("metric", [Metric.ULAM_R, Metric.HAMMING_R])
def test_min_distance_tie(two_word_code, metric):
    """Does a received word between two codewords fail?"""

    result = decode_min_distance(two_word_code, P(2, 1, 3, 4), metric, 1)
    assert result.outcome is Outcome.DETECTED_FAILURE
    if metric is Metric.ULAM_R:
        assert result.diagnostics == (1, 2)


def test_min_distance_budget():
    """Does an implicit codebook past the streaming budget raise?"""

    code = design_code(khare_rbibd(5), 2, 3, materialize_cap=100)
    with pytest.raises(SizeLimit):
        decode_min_distance(code, P(*range(1, 26)), Metric.ULAM_R, 1, budget=100)


def test_decode_result_invariant():
    """Is a decoded result without a word rejected?"""

    with pytest.raises(ParamInvalid):
        DecodeResult(Outcome.DECODED)
    with pytest.raises(ParamInvalid):
        DecodeResult(Outcome.DETECTED_FAILURE, W("1,2|3,4"))


def test_make_decoder(grouping):
    """Are named decoders built from the codebook's construction record?"""

    received = P(7, 1, 2, 3, 4, 5, 6, 8, 9, 10, 11, 12)
    for name in ("intersection", "grouping", "min-distance"):
        assert make_decoder(name, grouping, 1)(received).word == grouping.words[0]


def test_make_decoder_interleaved():
    """Is the interleaved decoder rebuilt from its parameters?"""

    code = interleaved_code(interleaved_greedy_spec(6, 2, 2))
    decoder = make_decoder("interleaved", code, 0)
    assert decoder(P(4, 1, 2, 5, 3, 6)).word in code


@pytest.mark.parametrize("name", ["grouping", "interleaved", "nearest"])
def test_make_decoder_mismatch(layered, name):
    """Does a decoder that does not fit the construction raise?"""

    with pytest.raises(ParamInvalid):
        make_decoder(name, layered, 1)


if __name__ == "__main__":
    pytest.main(["-s", __file__])  # for convenience
