#!/usr/bin/env python3

"""
Unit test codebook.py
"""

__author__ = "Michael Teresi, Scott Teresi"

import json
import os

import pytest

from multiperm import ParamInvalid, ParamMismatch, SizeLimit
from multiperm.codebook import Codebook, DesignCodebook, read_codebook, write_codebook
from multiperm.designs import khare_rbibd
from multiperm.metrics import Metric
from multiperm.permutation import OrderedSetPartition
from multiperm.test_utils import rng, temp_dir, temp_json_file


def W(text):
    return OrderedSetPartition.parse(text)


@pytest.fixture
def two_word_code():
    """Two word code over [4] with r=2."""

    construction = {"name": "listed", "params": {}}
    return Codebook(4, 2, 1, Metric.ULAM_R, (W("2,3|1,4"), W("1,3|2,4")), construction)


@pytest.fixture
def design_code():
    """Implicit code over the r=3 diagonal design."""

    return DesignCodebook(khare_rbibd(3), 2, 2)


def test_codebook_basics(two_word_code):
    """Are size, membership and candidate parts read from the words?"""

    assert two_word_code.size == len(two_word_code) == 2
    assert two_word_code.q == 2
    assert W("1,3|2,4") in two_word_code
    assert W("1,2|3,4") not in two_word_code
    assert two_word_code.candidate_parts(1) == [frozenset({2, 3}), frozenset({1, 3})]
    assert two_word_code.candidate_parts(2) == [frozenset({1, 4}), frozenset({2, 4})]
    assert two_word_code.ground_set == frozenset(range(1, 5))


def test_codebook_metric_coerced():
    """Is a metric name accepted and the plain Ulam metric refused?"""

    code = Codebook(4, 2, 1, "hamming-r", (W("1,2|3,4"),))
    assert code.metric is Metric.HAMMING_R
    with pytest.raises(ParamInvalid):
        Codebook(4, 2, 1, "ulam", (W("1,2|3,4"),))


@pytest.mark.parametrize(
    "kwargs, error",
    [
        ({"words": ()}, ParamInvalid),
        ({"words": (W("1,2|3,4"), W("1,2|3,4"))}, ParamInvalid),
        ({"words": (W("1,2,3|4,5,6"),)}, ParamMismatch),
        ({"claimed_distance": 0}, ParamInvalid),
    ],
)
def test_codebook_invalid(kwargs, error):
    """Do empty, repeated, mismatched or zero distance codebooks raise?"""

    args = {
        "n": 4,
        "r": 2,
        "claimed_distance": 1,
        "metric": Metric.ULAM_R,
        "words": (W("1,2|3,4"),),
    }
    args.update(kwargs)
    with pytest.raises(error):
        Codebook(**args)


def test_codebook_sample(two_word_code, rng):
    """Are both words drawn over many samples?"""

    drawn = {two_word_code.sample(rng) for _ in range(100)}
    assert drawn == set(two_word_code.words)


def test_codebook_file_round_trip(two_word_code, temp_json_file):
    """Does a written codebook read back with its construction record?"""

    path = write_codebook(two_word_code, temp_json_file)
    loaded = read_codebook(path)
    assert loaded == two_word_code
    assert loaded.construction == two_word_code.construction
    with open(path) as file:
        assert json.load(file)["words"] == ["2,3|1,4", "1,3|2,4"]


def test_read_unknown_schema(temp_dir):
    """Does an unknown document raise?"""

    path = os.path.join(temp_dir, "other.json")
    with open(path, "w") as file:
        json.dump({"schema": "something/else"}, file)
    with pytest.raises(ParamInvalid):
        read_codebook(path)


def test_read_missing(temp_dir):
    """Does a missing file raise?"""

    with pytest.raises(FileNotFoundError):
        read_codebook(os.path.join(temp_dir, "missing.json"))


def test_design_codebook_size(design_code):
    """Are there (r + 1) r! words, each listed once?"""

    words = list(design_code)
    assert design_code.size == len(design_code) == 24
    assert len(set(words)) == 24
    assert all(w in design_code for w in words)


def test_design_codebook_membership(design_code):
    """Is membership any ordering of a whole parallel class?"""

    assert W("7,8,9|1,2,3|4,5,6") in design_code
    assert W("2,6,7|1,5,9|3,4,8") in design_code
    assert W("1,2,4|3,5,6|7,8,9") not in design_code
    assert W("1,2|3,4") not in design_code


def test_design_codebook_candidates(design_code):
    """May every block appear at every rank?"""

    assert len(design_code.candidate_parts(1)) == 12
    assert design_code.candidate_parts(2) == design_code.candidate_parts(3)


def test_design_codebook_sample(design_code, rng):
    """Is every sample a codeword?"""

    for _ in range(50):
        assert design_code.sample(rng) in design_code


def test_design_codebook_materialize(design_code):
    """Is the explicit codebook the same words, refused past the cap?"""

    explicit = design_code.materialize()
    assert explicit.size == 24
    assert set(explicit.words) == set(design_code)
    assert explicit.construction["name"] == "design"
    with pytest.raises(SizeLimit):
        design_code.materialize(cap=10)


def test_design_codebook_round_trip(design_code, temp_dir):
    """Is an implicit codebook stored as its design and read back?"""

    path = design_code.write(os.path.join(temp_dir, "design_code.json"))
    loaded = read_codebook(path)
    assert isinstance(loaded, DesignCodebook)
    assert loaded.design == design_code.design
    assert loaded.claimed_distance == 2
    with open(path) as file:
        assert "words" not in json.load(file)


if __name__ == "__main__":
    pytest.main(["-s", __file__])  # for convenience
