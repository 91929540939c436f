"""
Permutations in one-line notation, pattern containment, inflation, the
block decomposition of 312-avoiders and the D4 action on permutation
matrices.

>>> sigma = Permutation.parse("46127538")
>>> contains(sigma, Permutation.parse("3142"))
True
>>> inflate(Permutation.parse("213"), ["123", "1", "21"])
Permutation('234165')
>>> block_decompose("1432")
BlockDecomposition(blocks=(Permutation('e'), Permutation('21')))
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence, Union

from .errors import DomainError

__all__ = [
    "Permutation", "PermLike", "EMPTY", "PAT_312",
    "as_perm", "identity", "contains", "avoids", "inflate", "star",
    "BlockDecomposition", "block_decompose", "prefix_pattern", "suffix_pattern",
    "D4", "d4_apply", "d4_compose", "transpose",
]


class Permutation(tuple):
    """A permutation of ``1..n`` in one-line notation.

    The empty permutation is ``Permutation(())`` and prints as ``e``.
    """

    __slots__ = ()

    def __new__(cls, values: Iterable[int] = ()):
        values = tuple(int(v) for v in values)
        if sorted(values) != list(range(1, len(values) + 1)):
            raise ValueError(f"not a permutation of 1..{len(values)}: {values!r}")
        return tuple.__new__(cls, values)

    @classmethod
    def _trusted(cls, values) -> "Permutation":
        return tuple.__new__(cls, values)

    @classmethod
    def parse(cls, text: str) -> "Permutation":
        """Read ``"32415"``, ``"3,2,4,1,5"`` or ``"e"`` (the empty permutation)."""
        text = text.strip()
        if text in ("e", "", "ε"):
            return EMPTY
        if "," in text:
            return cls(int(part) for part in text.split(","))
        if not text.isdigit():
            raise ValueError(f"cannot parse permutation {text!r}")
        return cls(int(ch) for ch in text)

    def __str__(self) -> str:
        if not self:
            return "e"
        if len(self) <= 9:
            return "".join(map(str, self))
        return ",".join(map(str, self))

    def __repr__(self) -> str:
        return f"Permutation({str(self)!r})"

    def sort_key(self) -> tuple[int, tuple[int, ...]]:
        return (len(self), tuple(self))


PermLike = Union[Permutation, str, Sequence[int]]

EMPTY = Permutation._trusted(())
PAT_312 = Permutation._trusted((3, 1, 2))


def as_perm(p: PermLike) -> Permutation:
    if isinstance(p, Permutation):
        return p
    if isinstance(p, str):
        return Permutation.parse(p)
    return Permutation(p)


def identity(n: int) -> Permutation:
    return Permutation._trusted(range(1, n + 1))


def _standardize(values: Sequence[int]) -> Permutation:
    order = sorted(values)
    rank = {v: i + 1 for i, v in enumerate(order)}
    return Permutation._trusted(rank[v] for v in values)


# ---------------------------------------------------------------------------
# containment


@lru_cache(maxsize=None)
def _neighbours(pi: tuple[int, ...]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    # for pattern position j: index among pi[:j] of the nearest smaller and
    # nearest larger value, -1 if none
    lower, upper = [], []
    for j, v in enumerate(pi):
        below = [i for i in range(j) if pi[i] < v]
        above = [i for i in range(j) if pi[i] > v]
        lower.append(max(below, key=lambda i: pi[i]) if below else -1)
        upper.append(min(above, key=lambda i: pi[i]) if above else -1)
    return tuple(lower), tuple(upper)


def contains(sigma: PermLike, pi: PermLike) -> bool:
    """True iff some subsequence of ``sigma`` is order-isomorphic to ``pi``."""
    sigma, pi = as_perm(sigma), as_perm(pi)
    k, n = len(pi), len(sigma)
    if k == 0:
        return True
    if k > n:
        return False
    lower, upper = _neighbours(tuple(pi))
    chosen = [0] * k

    def extend(j: int, start: int) -> bool:
        if j == k:
            return True
        lo = chosen[lower[j]] if lower[j] >= 0 else 0
        hi = chosen[upper[j]] if upper[j] >= 0 else n + 1
        for p in range(start, n - k + j + 1):
            v = sigma[p]
            if lo < v < hi:
                chosen[j] = v
                if extend(j + 1, p + 1):
                    return True
        return False

    return extend(0, 0)


def avoids(sigma: PermLike, pi: PermLike) -> bool:
    return not contains(sigma, pi)


# ---------------------------------------------------------------------------
# inflation and blocks


def inflate(pi: PermLike, parts: Sequence[PermLike]) -> Permutation:
    """The inflation ``pi[parts[0], ..., parts[k-1]]``."""
    pi = as_perm(pi)
    parts = [as_perm(p) for p in parts]
    if len(parts) != len(pi):
        raise ValueError(f"inflating a length-{len(pi)} permutation needs {len(pi)} parts, got {len(parts)}")
    size_by_value = {v: len(part) for v, part in zip(pi, parts)}
    offset, running = {}, 0
    for v in range(1, len(pi) + 1):
        offset[v] = running
        running += size_by_value[v]
    out = []
    for v, part in zip(pi, parts):
        out.extend(offset[v] + x for x in part)
    return Permutation._trusted(out)


_P21 = Permutation._trusted((2, 1))
_P1 = Permutation._trusted((1,))


def star(pi: PermLike) -> Permutation:
    """``21[pi, 1]``: the permutation matrix of ``pi`` with a box added at the lower right."""
    return inflate(_P21, (pi, _P1))


def _direct_sum(parts: Sequence[Permutation]) -> Permutation:
    return inflate(identity(len(parts)), parts)


@dataclass(frozen=True)
class BlockDecomposition:
    """The blocks ``[p1, ..., pr]`` with ``pi == identity(r)[star(p1), ..., star(pr)]``."""

    blocks: tuple[Permutation, ...]

    def __len__(self) -> int:
        return len(self.blocks)

    def reconstruct(self) -> Permutation:
        return _direct_sum([star(b) for b in self.blocks])


@lru_cache(maxsize=None)
def _decompose(pi: Permutation) -> BlockDecomposition:
    if contains(pi, PAT_312):
        raise DomainError(f"{pi} contains 312 and has no block decomposition")
    blocks = []
    rest = tuple(pi)
    while rest:
        k = rest.index(1)
        blocks.append(Permutation._trusted(v - 1 for v in rest[:k]))
        rest = tuple(v - k - 1 for v in rest[k + 1:])
    return BlockDecomposition(tuple(blocks))


def block_decompose(pi: PermLike) -> BlockDecomposition:
    return _decompose(as_perm(pi))


def _check_index(decomp: BlockDecomposition, i: int) -> None:
    if not 1 <= i <= len(decomp):
        raise ValueError(f"block index {i} outside 1..{len(decomp)}")


@lru_cache(maxsize=None)
def _prefix(pi: Permutation, i: int) -> Permutation:
    decomp = _decompose(pi)
    _check_index(decomp, i)
    if i == 1:
        return decomp.blocks[0]
    return _direct_sum([star(b) for b in decomp.blocks[:i]])


@lru_cache(maxsize=None)
def _suffix(pi: Permutation, i: int) -> Permutation:
    decomp = _decompose(pi)
    _check_index(decomp, i)
    return _direct_sum([star(b) for b in decomp.blocks[i - 1:]])


def prefix_pattern(pi: PermLike, i: int) -> Permutation:
    """First block alone when ``i == 1``, else the first ``i`` starred blocks stacked diagonally.

    The unstarred first block is deliberate: inside ``213[s1, 1, s2]`` the
    entry 1 supplies the extra box of the first starred block.
    """
    return _prefix(as_perm(pi), i)


def suffix_pattern(pi: PermLike, i: int) -> Permutation:
    """Starred blocks ``i..r`` stacked diagonally (1-indexed)."""
    return _suffix(as_perm(pi), i)


# ---------------------------------------------------------------------------
# dihedral action


class D4(enum.Enum):
    """Symmetries of the square acting on permutation matrices.

    Values are integer matrices ``(a, b, c, d)`` acting on centred
    coordinates by ``(x, y) -> (a x + b y, c x + d y)``; x points right and
    y points up. ``Rθ`` rotates counter-clockwise, ``r_m`` reflects in a
    line of slope m.
    """

    R0 = (1, 0, 0, 1)
    R90 = (0, -1, 1, 0)
    R180 = (-1, 0, 0, -1)
    R270 = (0, 1, -1, 0)
    r_m1 = (0, -1, -1, 0)
    r_0 = (1, 0, 0, -1)
    r_1 = (0, 1, 1, 0)
    r_inf = (-1, 0, 0, 1)

    @property
    def tag(self) -> str:
        return _TAGS[self]

    @classmethod
    def from_tag(cls, tag: str) -> "D4":
        for elem, name in _TAGS.items():
            if name == tag or elem.name == tag:
                return elem
        raise KeyError(tag)

    def __str__(self) -> str:
        return self.tag


_TAGS = {
    D4.R0: "R0", D4.R90: "R90", D4.R180: "R180", D4.R270: "R270",
    D4.r_m1: "r-1", D4.r_0: "r0", D4.r_1: "r1", D4.r_inf: "rinf",
}


def d4_compose(f: D4, g: D4) -> D4:
    """The element ``f ∘ g`` (apply ``g`` first)."""
    a, b, c, d = f.value
    e, h, k, m = g.value
    return D4((a * e + b * k, a * h + b * m, c * e + d * k, c * h + d * m))


def d4_apply(f: D4, sigma: PermLike) -> Permutation:
    sigma = as_perm(sigma)
    n = len(sigma)
    a, b, c, d = f.value
    out = [0] * n
    for i, v in enumerate(sigma, start=1):
        # doubled centred coordinates keep everything integral
        x, y = 2 * i - n - 1, 2 * v - n - 1
        x2, y2 = a * x + b * y, c * x + d * y
        out[(x2 + n + 1) // 2 - 1] = (y2 + n + 1) // 2
    return Permutation._trusted(out)


def transpose(sigma: PermLike) -> Permutation:
    """Reflection in the line of slope -1."""
    return d4_apply(D4.r_m1, sigma)
