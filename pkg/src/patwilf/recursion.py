"""
Recursive computation of ``F^st_n(Π; q)`` for pattern sets containing 312.

Write a 312-avoider as ``213[s1, 1, s2]`` with ``s1`` of size ``k``. For
every other pattern ``p`` of the set, ``s`` avoids ``p`` exactly when, for
some block index ``i``, ``s1`` avoids ``prefix_pattern(p, i)`` and ``s2``
avoids ``suffix_pattern(p, i)``. Inclusion-exclusion over those conditions
(Möbius inversion on a product of the posets ``L_r``) leaves only terms
where each pattern contributes either one condition or two adjacent ones,
with sign ``(-1)**(number of adjacent pairs)``:

    F_{n+1} = sum_k q^f(k, n-k) sum_S (-1)^|S| sum_I F_k(prefix set) * F_{n-k}(suffix set)

The Möbius values are built into that sign rule. The ``mobius_*``
functions here exist so the closed forms can be checked against a direct
poset computation.
"""

from __future__ import annotations

import itertools
import json
import logging
import threading
from dataclasses import dataclass
from math import prod
from pathlib import Path
from typing import Iterable, Optional, Union

import numpy as np

from .errors import BudgetError, ContractError
from .perm import (
    EMPTY, PAT_312, Permutation, PermLike, as_perm, block_decompose, contains,
    prefix_pattern, suffix_pattern,
)
from .qpoly import ONE, ZERO, QPoly
from .statistics import StatisticDescriptor, resolve

__all__ = [
    "mobius_Lr_closed", "mobius_product_closed", "mobius_poset_oracle",
    "PatternSet", "MemoTable", "st_poly_rec",
]

log = logging.getLogger(__name__)

StatLike = Union[StatisticDescriptor, str]


# ---------------------------------------------------------------------------
# Möbius values


def mobius_Lr_closed(r: int) -> int:
    """``mu(0, 1)`` in ``L_r`` with a top adjoined: -1, 1, then 0 from r = 3 on."""
    if r < 1:
        raise ValueError("r must be at least 1")
    if r == 1:
        return -1
    if r == 2:
        return 1
    return 0


def mobius_product_closed(ranks: Iterable[int]) -> int:
    """``mu(0, 1)`` in ``L_{r1} x ... x L_{rm}`` with a top adjoined."""
    ranks = list(ranks)
    if any(r < 1 for r in ranks):
        raise ValueError("every rank must be at least 1")
    if any(r > 2 for r in ranks):
        return 0
    twos = sum(1 for r in ranks if r == 2)
    return (-1) ** (twos + 1)


def _lattice_points(r: int) -> list[tuple[int, int]]:
    return [(a, b) for a in range(r) for b in range(r) if a + b < r]


def mobius_poset_oracle(ranks: Iterable[int], cap: int = 10**5) -> int:
    """``mu(0, 1)`` computed from the defining recursion on the explicit poset.

    Elements of the product are tuples of lattice points, compared
    coordinatewise; the adjoined top sits above everything.
    """
    ranks = list(ranks)
    if not ranks or any(r < 1 for r in ranks):
        raise ValueError("ranks must be a nonempty list of positive integers")
    size = prod(r * (r + 1) // 2 for r in ranks)
    if size > cap:
        raise BudgetError(f"poset with {size} elements exceeds cap {cap}")
    factors = [_lattice_points(r) for r in ranks]
    elems = np.array(
        [[c for point in combo for c in point] for combo in itertools.product(*factors)],
        dtype=np.int64,
    )
    # sorting by total rank gives a linear extension
    elems = elems[np.argsort(elems.sum(axis=1), kind="stable")]
    mu = np.zeros(len(elems), dtype=np.int64)
    mu[0] = 1  # elems[0] is the bottom (all zeros)
    for y in range(1, len(elems)):
        below = np.all(elems[:y] <= elems[y], axis=1)
        mu[y] = -mu[:y][below].sum()
    # top: everything in the product lies below it
    return int(-mu.sum())


# ---------------------------------------------------------------------------
# pattern sets and memo


def _reduce(patterns: list[Permutation], keep: Permutation) -> list[Permutation]:
    out = []
    for p in patterns:
        if p == keep:
            out.append(p)
            continue
        if any(q != p and contains(p, q) for q in patterns):
            continue
        out.append(p)
    return out


@dataclass(frozen=True)
class PatternSet:
    """A sorted, deduplicated pattern set containing 312.

    Patterns other than 312 that contain 312 are always dropped (they are
    implied by 312). With ``reduced=True`` any pattern containing another
    member is dropped too, which is what the memo keys on.
    """

    patterns: tuple[Permutation, ...]
    reduced: bool = True

    @classmethod
    def of(cls, patterns: Iterable[PermLike], reduced: bool = True) -> "PatternSet":
        pats = {as_perm(p) for p in patterns}
        if PAT_312 not in pats:
            raise ContractError("the recursion requires 312 in the pattern set")
        pats = [p for p in pats if p == PAT_312 or not contains(p, PAT_312)]
        if reduced:
            pats = _reduce(pats, PAT_312)
        return cls(tuple(sorted(pats, key=Permutation.sort_key)), reduced)

    @property
    def others(self) -> tuple[Permutation, ...]:
        return tuple(p for p in self.patterns if p != PAT_312)

    def key(self) -> tuple[str, ...]:
        return tuple(str(p) for p in self.patterns)

    def __str__(self) -> str:
        return "{" + ",".join(self.key()) + "}"


class MemoTable:
    """Map ``(stat name, pattern set, n)`` to a polynomial.

    Lookups are lock-free; writes are serialised. Writing an equal value
    twice is harmless, writing a different one is a bug and raises.
    """

    def __init__(self):
        self._data: dict[tuple[str, tuple[str, ...], int], QPoly] = {}
        self._lock = threading.Lock()

    def __len__(self) -> int:
        return len(self._data)

    def __contains__(self, key) -> bool:
        return key in self._data

    def get(self, stat: str, pset: PatternSet, n: int) -> Optional[QPoly]:
        return self._data.get((stat, pset.key(), n))

    def put(self, stat: str, pset: PatternSet, n: int, value: QPoly) -> None:
        self._put((stat, pset.key(), n), value)

    def _put(self, key, value: QPoly) -> None:
        with self._lock:
            old = self._data.get(key)
            if old is not None and old != value:
                raise ValueError(f"conflicting memo entries for {key}: {old} vs {value}")
            self._data[key] = value

    def items(self):
        return list(self._data.items())

    def save(self, path: Union[str, Path]) -> None:
        """One JSON record per line."""
        lines = []
        for (stat, pats, n), value in sorted(self._data.items(), key=lambda kv: (kv[0][0], kv[0][1], kv[0][2])):
            rec = {"stat": stat, "patterns": list(pats), "n": n, "coeffs": value.to_json()}
            lines.append(json.dumps(rec))
        Path(path).write_text("\n".join(lines) + ("\n" if lines else ""), encoding="utf-8")

    @classmethod
    def load(cls, path: Union[str, Path]) -> "MemoTable":
        """Read a saved table; malformed or non-canonical records are skipped with a warning."""
        table = cls()
        path = Path(path)
        if not path.exists():
            return table
        for lineno, line in enumerate(path.read_text(encoding="utf-8").splitlines(), 1):
            if not line.strip():
                continue
            try:
                key, value = _parse_record(line)
            except (ValueError, TypeError, KeyError, ContractError) as exc:
                log.warning("%s:%d: discarding memo record (%s)", path, lineno, exc)
                continue
            try:
                table._put(key, value)
            except ValueError as exc:
                log.warning("%s:%d: discarding memo record (%s)", path, lineno, exc)
        return table


def _parse_record(line: str):
    rec = json.loads(line)
    stat, pats, n, coeffs = rec["stat"], rec["patterns"], rec["n"], rec["coeffs"]
    if not isinstance(stat, str) or not isinstance(pats, list):
        raise ValueError("bad field types")
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise ValueError("n must be a nonnegative integer")
    if not all(isinstance(p, str) for p in pats):
        raise ValueError("patterns must be strings")
    pset = PatternSet.of(Permutation.parse(p) for p in pats)
    if list(pset.key()) != pats:
        raise ValueError("pattern list is not canonical")
    if coeffs and coeffs[-1] == "0":
        raise ValueError("trailing zero coefficient")
    value = QPoly.from_json(coeffs)
    if not value.is_nonnegative():
        raise ValueError("negative coefficient")
    return (stat, pset.key(), n), value


# ---------------------------------------------------------------------------
# the recursion


class _Engine:
    def __init__(self, stat: StatisticDescriptor, memo: Optional[MemoTable], reduce: bool):
        self.stat = stat
        self.memo = memo
        self.reduce = reduce

    def pset(self, patterns: Iterable[Permutation]) -> PatternSet:
        return PatternSet.of(patterns, reduced=self.reduce)

    def F(self, n: int, pset: PatternSet) -> QPoly:
        if self.memo is not None:
            hit = self.memo.get(self.stat.name, pset, n)
            if hit is not None:
                return hit
        value = self._compute(n, pset)
        if self.memo is not None:
            self.memo.put(self.stat.name, pset, n, value)
        return value

    def _compute(self, size: int, pset: PatternSet) -> QPoly:
        others = pset.others
        if EMPTY in others:
            return ZERO
        if size == 0:
            return ONE
        n = size - 1
        blocks = [len(block_decompose(p)) for p in others]
        prefixes = [[prefix_pattern(p, i) for i in range(1, r + 1)] for p, r in zip(others, blocks)]
        suffixes = [[suffix_pattern(p, i) for i in range(1, r + 1)] for p, r in zip(others, blocks)]
        m = len(others)

        # (prefix choice, suffix choice, sign) triples; independent of k
        terms = []
        for delta in itertools.product((0, 1), repeat=m):
            sign = -1 if sum(delta) % 2 else 1
            ranges = [range(r - d) for r, d in zip(blocks, delta)]
            for idx in itertools.product(*ranges):
                left = self.pset([PAT_312] + [prefixes[j][i] for j, i in enumerate(idx)])
                right = self.pset([PAT_312] + [suffixes[j][i + d] for j, (i, d) in enumerate(zip(idx, delta))])
                terms.append((left, right, sign))

        total = ZERO
        for k in range(n + 1):
            inner = ZERO
            for left, right, sign in terms:
                a = self.F(k, left)
                if not a:
                    continue
                b = self.F(n - k, right)
                if not b:
                    continue
                inner = inner + a * b if sign > 0 else inner - a * b
            if inner:
                total = total + inner.shift(self.stat.combiner(k, n - k))
        return total


def st_poly_rec(
    n: int,
    patterns: Union[PatternSet, Iterable[PermLike]],
    stat: StatLike,
    memo: Optional[MemoTable] = None,
    *,
    memoize: bool = True,
    reduce: bool = True,
) -> QPoly:
    """``F^st_n(patterns; q)`` via the block recursion.

    ``patterns`` must contain 312 and ``stat`` must be a verified additive
    statistic, otherwise ``ContractError``. Pass a ``MemoTable`` to share
    results across calls; ``memoize=False`` recomputes every subproblem
    (exponential, for cross-checking only). ``reduce=False`` keeps
    redundant patterns in every subproblem set.

    >>> str(st_poly_rec(3, ["312"], "inv"))
    '1 + 2q + q^2 + q^3'
    """
    stat = resolve(stat)
    if not stat.additive or stat.combiner is None:
        raise ContractError(f"statistic {stat.name!r} is not additive over 213[s1,1,s2]; use the oracle")
    if n < 0:
        raise ValueError("n must be nonnegative")
    if isinstance(patterns, PatternSet):
        pset = patterns if patterns.reduced == reduce else PatternSet.of(patterns.patterns, reduce)
    else:
        pset = PatternSet.of(patterns, reduced=reduce)
    if not memoize:
        table = None
    elif memo is None:
        table = MemoTable()
    else:
        table = memo
    return _Engine(stat, table, reduce).F(n, pset)
