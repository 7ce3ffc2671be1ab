#!/usr/bin/env python3

"""
Error processes and Monte Carlo decoding campaigns.

A translocation phi(i, j) moves the element at position i to position j,
shifting the elements in between by one.  The stored permutation pi becomes
pi o phi with (pi o phi)(k) = pi(phi(k)).
"""

__author__ = "Michael Teresi, Scott Teresi"

import logging
from collections import namedtuple
from dataclasses import dataclass
from enum import Enum
from multiprocessing import Pool

import numpy as np
from tqdm import tqdm

from multiperm import ParamInvalid, PositionOutOfRange
from multiperm import raise_with
from multiperm.permutation import OrderedSetPartition, Permutation
from multiperm.permutation import random_class_member

RNG_NAME = "numpy-PCG64-SeedSequence"
RNG_VERSION = 1  # NOTE bump when the per-trial stream derivation changes


def make_rng(seed, trial=None):
    """Random generator for a seed, or for one trial's substream of a seed.

    Args:
        seed(int | numpy.random.Generator): a generator is returned as is
        trial(int): substream key, None for the root stream
    """

    if isinstance(seed, np.random.Generator):
        return seed
    key = () if trial is None else (int(trial),)
    sequence = np.random.SeedSequence(int(seed), spawn_key=key)
    return np.random.Generator(np.random.PCG64(sequence))


class ErrorModel(Enum):
    TRANSLOCATION = "translocation"
    RANK_DISPLACEMENT = "rank-displacement"


@dataclass(frozen=True)
class Translocation:
    """Move the element at position i to position j; i == j is the identity.

    Args:
        i(int): 1-indexed source position
        j(int): 1-indexed target position
    """

    i: int
    j: int

    def __post_init__(self):
        if self.i < 1 or self.j < 1:
            raise_with(PositionOutOfRange, "positions must be >= 1: %s" % (self,))


def apply_translocation(perm, phi):
    """pi o phi(i, j) for a Permutation pi."""

    n = perm.n
    if phi.i > n or phi.j > n:
        raise_with(PositionOutOfRange, "%s outside 1..%i" % (phi, n))
    elements = list(perm.elements)
    elements.insert(phi.j - 1, elements.pop(phi.i - 1))
    return Permutation(tuple(elements))


def random_translocations(perm, t, seed):
    """Apply t translocations, each uniform over ordered pairs i != j.

    Returns:
        (Permutation, list(Translocation)): received permutation and the errors
    """

    if t < 0:
        raise_with(ParamInvalid, "t=%s < 0" % t)
    rng = make_rng(seed)
    n = perm.n
    applied = []
    if n < 2:
        return perm, applied
    for _ in range(t):
        i = int(rng.integers(1, n + 1))
        j = int(rng.integers(1, n))
        if j >= i:
            j += 1
        phi = Translocation(i, j)
        perm = apply_translocation(perm, phi)
        applied.append(phi)
    return perm, applied


def rank_displacement_errors(partition, t, seed):
    """Displace at most t labels out of every part.

    Up to t labels are drawn from each part; the drawn labels are shuffled
        over the vacated slots, so part sizes are kept and
        |o(i) & out(i)| >= r - t for every rank i.
    """

    if not 0 <= t <= partition.r:
        raise_with(ParamInvalid, "need 0 <= t <= r=%i, got %s" % (partition.r, t))
    rng = make_rng(seed)
    kept, drawn, slots = [], [], []
    for index, part in enumerate(partition.parts):
        labels = sorted(part)
        n_drawn = int(rng.integers(0, t + 1))
        picked = [int(x) for x in rng.choice(labels, size=n_drawn, replace=False)]
        kept.append(set(part).difference(picked))
        drawn.extend(picked)
        slots.extend([index] * n_drawn)
    for slot, at in zip(slots, rng.permutation(len(drawn))):
        kept[slot].add(drawn[int(at)])
    return OrderedSetPartition(tuple(kept), partition.ground_set)


@dataclass(frozen=True)
class TrialStats:
    """Tally of a decoding campaign.

    Args:
        trials(int): number of trials
        decoded_correct(int): decoded to the stored word
        detected_failures(int): decoder reported failure
        miscorrections(int): decoded to a different word
        seed(int): campaign seed
    """

    trials: int
    decoded_correct: int
    detected_failures: int
    miscorrections: int
    seed: int

    def __post_init__(self):
        total = self.decoded_correct + self.detected_failures + self.miscorrections
        if total != self.trials:
            msg = "outcomes sum to %i, not %i trials" % (total, self.trials)
            raise_with(ParamInvalid, msg)

    def __add__(self, other):
        return TrialStats(
            self.trials + other.trials,
            self.decoded_correct + other.decoded_correct,
            self.detected_failures + other.detected_failures,
            self.miscorrections + other.miscorrections,
            self.seed,
        )

    @property
    def rate(self):
        """Fraction decoded correctly."""

        return self.decoded_correct / self.trials if self.trials else 0.0

    def to_row(self):
        return {
            "trials": self.trials,
            "correct": self.decoded_correct,
            "detected": self.detected_failures,
            "miscorrected": self.miscorrections,
            "rate": self.rate,
        }


_TrialJob = namedtuple(
    "_TrialJob", ["codebook", "decoder", "error_model", "t", "seed", "start", "stop"]
)


def _corrupt(word, error_model, t, rng):
    """Received permutation for a stored word."""

    if error_model is ErrorModel.TRANSLOCATION:
        stored = random_class_member(word, rng)
        received, _ = random_translocations(stored, t, rng)
        return received
    return random_class_member(rank_displacement_errors(word, t, rng), rng)


def _run_trials(job):
    """TrialStats for trials start..stop-1 of a campaign."""

    correct = failures = wrong = 0
    for trial in range(job.start, job.stop):
        rng = make_rng(job.seed, trial)
        word = job.codebook.sample(rng)
        result = job.decoder(_corrupt(word, job.error_model, job.t, rng))
        if not result.decoded:
            failures += 1
        elif result.word == word:
            correct += 1
        else:
            wrong += 1
    return TrialStats(job.stop - job.start, correct, failures, wrong, job.seed)


def simulate(
    codebook,
    decoder,
    error_model,
    t,
    trials,
    seed=0,
    n_workers=None,
    progress=False,
    logger=None,
):
    """Store uniform codewords, corrupt them, decode, and tally.

    Trial k draws all of its randomness from the substream (seed, k),
        so results do not depend on the number of workers.

    Args:
        codebook(Codebook | DesignCodebook): the code
        decoder(callable): Permutation -> DecodeResult, picklable for workers
        error_model(ErrorModel | str): translocation or rank-displacement
        t(int): errors per trial
        trials(int): number of trials
        seed(int): campaign seed
        n_workers(int): processes, None to run in process
        progress(bool): show a progress bar
        logger(logging.Logger): logger to use, None to create
    Returns:
        TrialStats
    """

    logger = logger or logging.getLogger(__name__)
    error_model = ErrorModel(error_model)
    if trials < 0 or t < 0:
        raise_with(ParamInvalid, "need trials, t >= 0", logger)
    # MAGIC arbitrary, enough chunks for a smooth progress bar
    n_chunks = max(1, min(trials, 20 * (n_workers or 1)))
    bounds = np.linspace(0, trials, n_chunks + 1).astype(int)
    jobs = [
        _TrialJob(codebook, decoder, error_model, t, seed, int(a), int(b))
        for a, b in zip(bounds[:-1], bounds[1:])
    ]
    logger.debug(
        "simulate %i trials in %i chunks, rng %s v%i"
        % (trials, len(jobs), RNG_NAME, RNG_VERSION)
    )
    bar = tqdm(
        total=len(jobs),
        desc="trials".ljust(12, " "),
        ncols=79,
        disable=not progress,
    )
    stats = TrialStats(0, 0, 0, 0, seed)
    with bar:
        if n_workers is not None and n_workers > 1:
            with Pool(processes=n_workers) as pool:
                for part in pool.imap_unordered(_run_trials, jobs):
                    stats += part
                    bar.update()
        else:
            for job in jobs:
                stats += _run_trials(job)
                bar.update()
    logger.info("%i/%i decoded correctly" % (stats.decoded_correct, stats.trials))
    return stats
