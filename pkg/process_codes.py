#!/usr/bin/env python

"""
Bounds, constructions, distances and decoding for multipermutation codes.
"""

__author__ = "Scott Teresi, Michael Teresi"

import sys

from multiperm.cli import main


if __name__ == "__main__":
    """Command line interface for multipermutation codes."""

    sys.exit(main())
