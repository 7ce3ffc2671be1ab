"""
Sundry helper functions, default limits, and the error hierarchy.
"""

__author__ = "Michael Teresi, Scott Teresi"

import errno
import logging
import os
from functools import partial
from os import strerror

FILE_DNE = partial(FileNotFoundError, errno.ENOENT, strerror(errno.ENOENT))

DEFAULT_ENUMERATION_CAP = 10**7  # MAGIC largest exhaustive enumeration
DEFAULT_MATERIALIZE_CAP = 10**5  # MAGIC largest implicit codebook to expand
DEFAULT_EXHAUSTIVE_CLASSES = 100  # MAGIC vertex limit for the clique search
DEFAULT_BALL_SUMMATION_N = 30  # MAGIC largest n for exact ball summation


class MultipermError(ValueError):
    """Base class for invalid parameters and inputs."""


class NonDivisible(MultipermError):
    """The regularity does not divide the length."""


class NonCanonicalLabels(MultipermError):
    """The labels are not exactly 1..n."""


class SizeLimit(MultipermError):
    """An enumeration would exceed its configured cap."""


class LengthMismatch(MultipermError):
    """Sequences that must agree in length do not."""


class UnknownLabel(MultipermError):
    """A label is not present in the sequence."""


class ParamMismatch(MultipermError):
    """Operands disagree on n, r, or the ground set."""


class ParamInvalid(MultipermError):
    """A parameter is outside its valid domain."""


class SingletonCode(MultipermError):
    """A minimum distance was requested for fewer than two words."""


class NotPrime(MultipermError):
    """The block size is not prime."""


class NotOdd(MultipermError):
    """The block size is not odd."""


class InvalidSquare(MultipermError):
    """The semi-Latin square failed validation."""


class DistanceInvalid(MultipermError):
    """The target distance is even or too large for the design."""


class NotSteiner(MultipermError):
    """The design is not a Steiner system with the requested parameters."""


class ComponentDistanceUnverified(MultipermError):
    """A component code is below the requested minimum distance."""


class PositionOutOfRange(MultipermError):
    """A position is outside 1..n."""


def raise_if_no_file(filepath, logger=None, msg_fmt=None):
    """Raise FileNotFoundError if file does not exist."""

    logger = logger or logging.getLogger(__name__)
    msg_fmt = msg_fmt or "not a file:  %s"
    if not os.path.isfile(filepath):
        logger.critical(msg_fmt % filepath)
        raise FILE_DNE(filepath)


def raise_with(error, msg, logger=None):
    """Log critical and raise the error type with the message."""

    logger = logger or logging.getLogger(__name__)
    logger.critical(msg)
    raise error(msg)


def check_size(count, cap, what, logger=None):
    """Raise SizeLimit if an enumeration of `count` items exceeds `cap`.

    Args:
        count(int): number of items the caller is about to enumerate
        cap(int): configured limit, None for unlimited
        what(str): description for the message
        logger(logging.Logger): logger to use, None to create
    """

    if cap is not None and count > cap:
        raise_with(SizeLimit, "%s: %i items > cap %i" % (what, count, cap), logger)


def check_divides(n, r, logger=None):
    """Raise NonDivisible unless r is a positive divisor of n."""

    if r < 1 or n < 1:
        raise_with(ParamInvalid, "need n, r >= 1, got n=%s r=%s" % (n, r), logger)
    if n % r:
        raise_with(NonDivisible, "r=%i does not divide n=%i" % (r, n), logger)
