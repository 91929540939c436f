"""
Exhaustive ground truth: enumerate ``S_n(patterns)`` and sum ``q**st``.

Nothing here knows about block decompositions; it is the independent check
for :mod:`patwilf.recursion`.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from typing import Iterable, Sequence, Union

from .errors import BudgetError
from .perm import Permutation, PermLike, as_perm, contains
from .qpoly import QPoly
from .statistics import StatisticDescriptor, resolve

__all__ = ["DEFAULT_CAP", "avoiders", "st_poly_brute", "AvoiderTable"]

DEFAULT_CAP = 11

StatLike = Union[StatisticDescriptor, str]


def _patterns(patterns: Iterable[PermLike]) -> tuple[Permutation, ...]:
    return tuple(sorted({as_perm(p) for p in patterns}, key=Permutation.sort_key))


def _avoids_all(sigma: Permutation, patterns: Sequence[Permutation]) -> bool:
    return not any(contains(sigma, p) for p in patterns)


def _filter_chunk(n: int, first: int, patterns: tuple[Permutation, ...]) -> list[Permutation]:
    rest = [v for v in range(1, n + 1) if v != first]
    out = []
    for tail in itertools.permutations(rest):
        sigma = Permutation._trusted((first,) + tail)
        if _avoids_all(sigma, patterns):
            out.append(sigma)
    return out


def _by_filter(n: int, patterns: tuple[Permutation, ...], workers: int) -> list[Permutation]:
    if n == 0:
        return [Permutation._trusted(())] if _avoids_all(Permutation._trusted(()), patterns) else []
    firsts = range(1, n + 1)
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunks = pool.map(_filter_chunk, [n] * n, firsts, [patterns] * n)
            return [s for chunk in chunks for s in chunk]
    return [s for first in firsts for s in _filter_chunk(n, first, patterns)]


def _by_extension(n: int, patterns: tuple[Permutation, ...]) -> list[Permutation]:
    # deleting the largest entry of an avoider leaves an avoider, so every
    # member of S_n(P) comes from inserting n into a member of S_{n-1}(P)
    level = [Permutation._trusted(())] if _avoids_all(Permutation._trusted(()), patterns) else []
    for size in range(1, n + 1):
        nxt = []
        for tau in level:
            for pos in range(size):
                sigma = Permutation._trusted(tau[:pos] + (size,) + tau[pos:])
                if _avoids_all(sigma, patterns):
                    nxt.append(sigma)
        level = nxt
    return sorted(level)


def avoiders(
    n: int,
    patterns: Iterable[PermLike],
    *,
    method: str = "filter",
    cap: int = DEFAULT_CAP,
    workers: int = 1,
) -> list[Permutation]:
    """All of ``S_n`` avoiding every pattern, in lexicographic order.

    ``method="filter"`` walks all of ``S_n`` and is the reference;
    ``method="extend"`` grows avoiders one size at a time.

    >>> [str(s) for s in avoiders(3, ["312"])]
    ['123', '132', '213', '231', '321']
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n > cap:
        raise BudgetError(f"n={n} exceeds the enumeration cap {cap}")
    pats = _patterns(patterns)
    if method == "filter":
        return _by_filter(n, pats, workers)
    if method == "extend":
        return _by_extension(n, pats)
    raise ValueError(f"unknown enumeration method {method!r}")


def _poly_from_values(values: Iterable[int]) -> QPoly:
    counts: dict[int, int] = {}
    for v in values:
        counts[v] = counts.get(v, 0) + 1
    if not counts:
        return QPoly()
    return QPoly(counts.get(e, 0) for e in range(max(counts) + 1))


def st_poly_brute(
    n: int,
    patterns: Iterable[PermLike],
    stat: StatLike,
    *,
    method: str = "filter",
    cap: int = DEFAULT_CAP,
    workers: int = 1,
) -> QPoly:
    """``sum(q**stat(s) for s in S_n(patterns))`` by enumeration."""
    stat = resolve(stat)
    found = avoiders(n, patterns, method=method, cap=cap, workers=workers)
    return _poly_from_values(stat.evaluate(s) for s in found)


class AvoiderTable:
    """Batch oracle over many pattern sets sharing a common base.

    Enumerates ``S_n(base)`` once for each ``n <= n_max`` and records, per
    permutation, a bitmask of which candidate patterns it contains. The
    polynomial for ``base ∪ T`` is then a masked sum. Used where thousands
    of pattern sets need checking against the same enumeration.
    """

    def __init__(
        self,
        n_max: int,
        candidates: Iterable[PermLike],
        base: Iterable[PermLike] = ("312",),
        cap: int = DEFAULT_CAP,
    ):
        if n_max > cap:
            raise BudgetError(f"n_max={n_max} exceeds the enumeration cap {cap}")
        self.base = _patterns(base)
        self.candidates = _patterns(candidates)
        self.index = {p: i for i, p in enumerate(self.candidates)}
        self.n_max = n_max
        self._levels: list[list[tuple[Permutation, int]]] = []
        for n in range(n_max + 1):
            level = []
            for sigma in _by_extension(n, self.base):
                mask = 0
                for i, p in enumerate(self.candidates):
                    if contains(sigma, p):
                        mask |= 1 << i
                level.append((sigma, mask))
            self._levels.append(level)
        self._stat_cache: dict[tuple[str, int], list[int]] = {}

    def _mask(self, extra: Iterable[PermLike]) -> int:
        mask = 0
        for p in extra:
            p = as_perm(p)
            if p in self.base:
                continue
            try:
                mask |= 1 << self.index[p]
            except KeyError:
                raise KeyError(f"pattern {p} is not a candidate of this table") from None
        return mask

    def avoiders(self, n: int, extra: Iterable[PermLike]) -> list[Permutation]:
        mask = self._mask(extra)
        return [s for s, m in self._levels[n] if not m & mask]

    def st_poly(self, n: int, extra: Iterable[PermLike], stat: StatLike) -> QPoly:
        stat = resolve(stat)
        mask = self._mask(extra)
        key = (stat.name, n)
        values = self._stat_cache.get(key)
        if values is None:
            values = [stat.evaluate(s) for s, _ in self._levels[n]]
            self._stat_cache[key] = values
        level = self._levels[n]
        return _poly_from_values(v for v, (_, m) in zip(values, level) if not m & mask)
