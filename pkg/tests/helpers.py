"""Shared test data."""

import itertools

from patwilf import Permutation, contains


def avoiders_312(n):
    return [Permutation(p) for p in itertools.permutations(range(1, n + 1))
            if not contains(Permutation(p), "312")]


def pattern_sample():
    """Fixed sample of 33 distinct 312-avoiding patterns of length <= 5."""
    out = []
    for n in range(1, 5):
        out += avoiders_312(n)
    out += avoiders_312(5)[::4]
    return out
