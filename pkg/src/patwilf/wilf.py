"""
st-Wilf equivalence: checking, trivial (symmetry) witnesses, and building
nontrivial pairs by transposing blocks of 312-avoiding patterns.
"""

from __future__ import annotations

import enum
import itertools
import json
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence, Union

from .errors import BudgetError, ContractError, DomainError
from .oracle import DEFAULT_CAP, st_poly_brute
from .perm import (
    D4, PAT_312, Permutation, PermLike, as_perm, contains, d4_apply, identity,
    inflate, star, transpose,
)
from .qpoly import QPoly
from .recursion import MemoTable, PatternSet, st_poly_rec
from .statistics import StatisticDescriptor, resolve

__all__ = [
    "Verdict", "EquivalenceReport", "check_equiv", "trivial_witness",
    "build_pair", "build_multi_pair", "search_nontrivial", "minimal_basis",
]

StatLike = Union[StatisticDescriptor, str]
Patterns = Union[PatternSet, Iterable[PermLike]]


class Verdict(enum.Enum):
    EQUIVALENT_UP_TO_N = "EQUIVALENT_UP_TO_N"
    DISTINGUISHED_AT_N = "DISTINGUISHED_AT_N"


def _as_list(patterns: Patterns) -> list[Permutation]:
    if isinstance(patterns, PatternSet):
        return list(patterns.patterns)
    if isinstance(patterns, (str, Permutation)):
        raise TypeError("pass a collection of patterns, not a single pattern")
    return [as_perm(p) for p in patterns]


def minimal_basis(patterns: Patterns) -> tuple[Permutation, ...]:
    """Drop every pattern that contains another; the avoiders are unchanged."""
    pats = set(_as_list(patterns))
    keep = [p for p in pats if not any(q != p and contains(p, q) for q in pats)]
    return tuple(sorted(keep, key=Permutation.sort_key))


def _set_key(patterns: Iterable[Permutation]) -> tuple:
    return tuple(sorted(p.sort_key() for p in patterns))


def trivial_witness(
    left: Patterns,
    right: Patterns,
    stat: StatLike,
    symmetries: Optional[Sequence[D4]] = None,
) -> Optional[D4]:
    """A statistic-preserving symmetry ``f`` with ``f(left) == right``, or None.

    Sets are compared through their minimal bases, so redundant patterns do
    not hide a witness.
    """
    group = tuple(symmetries) if symmetries is not None else resolve(stat).symmetries
    lhs, rhs = minimal_basis(left), _set_key(minimal_basis(right))
    for f in group:
        if _set_key(d4_apply(f, p) for p in lhs) == rhs:
            return f
    return None


@dataclass
class EquivalenceReport:
    left: tuple[Permutation, ...]
    right: tuple[Permutation, ...]
    stat: str
    max_n: int
    per_n: list[tuple[int, QPoly, QPoly, bool]]
    verdict: Verdict
    distinguished_at: Optional[int]
    trivial_witness: Optional[D4]
    # set when the pair comes from the block-transpose construction with a
    # statistic that is transpose-invariant on 312-avoiders
    corollary_guaranteed: bool = False
    method: str = "rec"
    # search results only: every image (f(left), f(right)) and its swap
    # under the statistic-preserving symmetries, as minimal-basis keys
    orbit: list[tuple[tuple, tuple]] = field(default_factory=list)

    def covers(self, left: Patterns, right: Patterns) -> bool:
        """True if ``(left, right)`` is this pair or, for search results, a symmetric image of it."""
        pair = (_set_key(minimal_basis(left)), _set_key(minimal_basis(right)))
        own = (_set_key(minimal_basis(self.left)), _set_key(minimal_basis(self.right)))
        return pair in (own, own[::-1]) or pair in self.orbit

    @property
    def equivalent(self) -> bool:
        return self.verdict is Verdict.EQUIVALENT_UP_TO_N

    @property
    def nontrivial(self) -> bool:
        return self.equivalent and self.trivial_witness is None

    def summary(self) -> str:
        if not self.equivalent:
            return f"DISTINGUISHED at n={self.distinguished_at}"
        how = "nontrivial" if self.trivial_witness is None else f"trivial via {self.trivial_witness}"
        return f"EQUIVALENT up to n={self.max_n}; {how}"

    def to_dict(self) -> dict:
        return {
            "left": [str(p) for p in self.left],
            "right": [str(p) for p in self.right],
            "stat": self.stat,
            "max_n": self.max_n,
            "method": self.method,
            "per_n": [
                {"n": n, "left": a.to_json(), "right": b.to_json(), "equal": eq}
                for n, a, b, eq in self.per_n
            ],
            "verdict": self.verdict.value,
            "distinguished_at": self.distinguished_at,
            "witness": None if self.trivial_witness is None else self.trivial_witness.tag,
            "corollary_guaranteed": self.corollary_guaranteed,
        }

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)


def _polys(patterns, stat, max_n, method, memo, cap, workers):
    if method == "rec":
        pset = PatternSet.of(patterns)
        return [st_poly_rec(n, pset, stat, memo) for n in range(max_n + 1)]
    if max_n > cap:
        raise BudgetError(f"max_n={max_n} exceeds the oracle cap {cap}")
    return [
        st_poly_brute(n, patterns, stat, cap=cap, workers=workers if n >= 8 else 1)
        for n in range(max_n + 1)
    ]


def check_equiv(
    left: Patterns,
    right: Patterns,
    stat: StatLike,
    max_n: int = 10,
    *,
    method: str = "auto",
    memo: Optional[MemoTable] = None,
    symmetries: Optional[Sequence[D4]] = None,
    cap: int = DEFAULT_CAP,
    workers: int = 1,
) -> EquivalenceReport:
    """Compare ``F^st_n`` of two pattern sets for ``n = 0..max_n``.

    ``method="auto"`` uses the recursion when both sets contain 312 and the
    statistic is additive, and the enumeration oracle otherwise.
    """
    stat = resolve(stat)
    lhs, rhs = _as_list(left), _as_list(right)
    if method == "auto":
        method = "rec" if (PAT_312 in lhs and PAT_312 in rhs and stat.additive) else "brute"
    if method not in ("rec", "brute"):
        raise ValueError(f"unknown method {method!r}")
    if method == "rec" and memo is None:
        memo = MemoTable()
    a = _polys(lhs, stat, max_n, method, memo, cap, workers)
    b = _polys(rhs, stat, max_n, method, memo, cap, workers)
    per_n = [(n, x, y, x == y) for n, (x, y) in enumerate(zip(a, b))]
    first_bad = next((n for n, _, _, eq in per_n if not eq), None)
    return EquivalenceReport(
        left=tuple(sorted(set(lhs), key=Permutation.sort_key)),
        right=tuple(sorted(set(rhs), key=Permutation.sort_key)),
        stat=stat.name,
        max_n=max_n,
        per_n=per_n,
        verdict=Verdict.EQUIVALENT_UP_TO_N if first_bad is None else Verdict.DISTINGUISHED_AT_N,
        distinguished_at=first_bad,
        trivial_witness=trivial_witness(lhs, rhs, stat, symmetries),
        method=method,
    )


# ---------------------------------------------------------------------------
# constructions


def build_pair(blocks: Sequence[PermLike], flips: Sequence[bool]) -> tuple[Permutation, Permutation]:
    """``(π, π')`` where π stacks the starred blocks and π' transposes the flagged ones.

    >>> build_pair(["213", "e"], [True, False])
    (Permutation('32415'), Permutation('24315'))
    """
    blocks = [as_perm(b) for b in blocks]
    if len(flips) != len(blocks):
        raise ValueError(f"{len(blocks)} blocks but {len(flips)} flips")
    for b in blocks:
        if contains(b, PAT_312):
            raise DomainError(f"block {b} contains 312")
    r = len(blocks)
    pi = inflate(identity(r), [star(b) for b in blocks])
    pi2 = inflate(identity(r), [star(transpose(b) if f else b) for b, f in zip(blocks, flips)])
    return pi, pi2


def build_multi_pair(
    block_lists: Sequence[Sequence[PermLike]],
    flip_lists: Optional[Sequence[Sequence[bool]]] = None,
) -> tuple[list[Permutation], list[Permutation]]:
    """Apply :func:`build_pair` to each pattern's block list."""
    if flip_lists is None:
        flip_lists = [[False] * len(bl) for bl in block_lists]
    if len(flip_lists) != len(block_lists):
        raise ValueError("need one flip list per block list")
    pairs = [build_pair(bl, fl) for bl, fl in zip(block_lists, flip_lists)]
    return [p for p, _ in pairs], [p for _, p in pairs]


def _avoiders_312(n: int) -> list[Permutation]:
    return [Permutation._trusted(s) for s in itertools.permutations(range(1, n + 1))
            if not contains(Permutation._trusted(s), PAT_312)]


def _orbit(left, right, group) -> list[tuple[tuple, tuple]]:
    out = set()
    for f in group:
        a = _set_key(d4_apply(f, p) for p in left)
        b = _set_key(d4_apply(f, p) for p in right)
        out.update(((a, b), (b, a)))
    return sorted(out)


def search_nontrivial(
    stat: StatLike,
    max_pattern_len: int,
    max_blocks: int,
    max_n: int,
    *,
    memo: Optional[MemoTable] = None,
    symmetries: Optional[Sequence[D4]] = None,
    max_candidates: int = 100_000,
    max_n_cap: int = 16,
) -> list[EquivalenceReport]:
    """Nontrivial pairs ``{312, π} ~ {312, π'}`` from block transposition.

    Enumerates block tuples whose starred inflation has length at most
    ``max_pattern_len`` and every nonzero flip vector, drops pairs that are
    identical or related by a statistic-preserving symmetry, verifies the
    rest up to ``max_n`` and returns one representative per symmetry orbit.
    """
    stat = resolve(stat)
    if not stat.additive:
        raise ContractError(f"statistic {stat.name!r} is not additive over 213[s1,1,s2]")
    if max_n > max_n_cap:
        raise BudgetError(f"max_n={max_n} exceeds cap {max_n_cap}")
    group = tuple(symmetries) if symmetries is not None else stat.symmetries
    memo = memo if memo is not None else MemoTable()
    by_size = {s: _avoiders_312(s) for s in range(max(max_pattern_len, 0))}

    candidates = []
    for r in range(1, max_blocks + 1):
        # block sizes s_i >= 0 with sum(s_i + 1) <= max_pattern_len
        for sizes in itertools.product(range(max_pattern_len), repeat=r):
            if sum(sizes) + r > max_pattern_len:
                continue
            for blocks in itertools.product(*(by_size[s] for s in sizes)):
                for flips in itertools.product((False, True), repeat=r):
                    if not any(flips):
                        continue
                    candidates.append((blocks, flips))
                    if len(candidates) > max_candidates:
                        raise BudgetError(f"more than {max_candidates} candidate pairs")

    seen: set = set()
    found: dict[tuple, EquivalenceReport] = {}
    for blocks, flips in candidates:
        pi, pi2 = build_pair(blocks, flips)
        if pi == pi2:
            continue
        left, right = (PAT_312, pi), (PAT_312, pi2)
        if trivial_witness(left, right, stat, group) is not None:
            continue
        orbit = _orbit(minimal_basis(left), minimal_basis(right), group)
        key = orbit[0]
        if key in seen:
            continue
        seen.add(key)
        report = check_equiv(left, right, stat, max_n, method="rec", memo=memo, symmetries=group)
        if report.nontrivial:
            report.orbit = orbit
            report.corollary_guaranteed = stat.transpose_invariant_312
            found[key] = report
    return [found[k] for k in sorted(found)]
