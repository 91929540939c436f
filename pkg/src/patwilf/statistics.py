"""
Permutation statistics that split additively over ``213[s1, 1, s2]``.

A statistic ``st`` is usable by the recursion engine when there is a
combiner ``f`` with

    st(213[s1, 1, s2]) == f(len(s1), len(s2)) + st(s1) + st(s2)

for all permutations ``s1`` and ``s2``. The registry only admits statistics
for which this identity has been checked exhaustively up to a size bound.
"""

from __future__ import annotations

import itertools
import threading
from dataclasses import dataclass, field
from typing import Callable, Optional, Union

from .perm import D4, Permutation, PermLike, as_perm, inflate

__all__ = [
    "StatisticDescriptor", "DaggerViolation", "NonAdditiveStatistic",
    "inv", "des", "c213", "maj",
    "INV", "DES", "C213", "MAJ",
    "combiner_of", "dagger_counterexample", "verify_dagger",
    "register_statistic", "get_statistic", "resolve", "registered_names",
]

Evaluate = Callable[[Permutation], int]
Combiner = Callable[[int, int], int]


def inv(sigma: PermLike) -> int:
    s = as_perm(sigma)
    n = len(s)
    return sum(1 for i in range(n) for j in range(i + 1, n) if s[i] > s[j])


def des(sigma: PermLike) -> int:
    s = as_perm(sigma)
    return sum(1 for i in range(len(s) - 1) if s[i] > s[i + 1])


def c213(sigma: PermLike) -> int:
    """Occurrences of the consecutive pattern 213."""
    s = as_perm(sigma)
    return sum(1 for i in range(len(s) - 2) if s[i + 1] < s[i] < s[i + 2])


def maj(sigma: PermLike) -> int:
    """Major index: sum of descent positions (1-indexed). Not additive over the split."""
    s = as_perm(sigma)
    return sum(i + 1 for i in range(len(s) - 1) if s[i] > s[i + 1])


@dataclass(frozen=True)
class StatisticDescriptor:
    """A statistic together with the combiner witnessing additivity.

    ``additive`` records whether the split identity was verified; the
    recursion engine refuses descriptors where it is false.
    ``symmetries`` is the subgroup of D4 known to preserve the statistic,
    used to recognise trivial equivalences. ``transpose_invariant_312``
    marks statistics with ``st(s) == st(transpose(s))`` on 312-avoiders,
    which is what makes block-transposing constructions sound.
    """

    name: str
    evaluate: Evaluate = field(compare=False)
    combiner: Optional[Combiner] = field(compare=False)
    additive: bool = True
    symmetries: tuple[D4, ...] = (D4.R0,)
    transpose_invariant_312: bool = False

    def __call__(self, sigma: PermLike) -> int:
        return self.evaluate(as_perm(sigma))


@dataclass(frozen=True)
class DaggerViolation:
    s1: Permutation
    s2: Permutation
    sigma: Permutation
    value: int
    predicted: int

    def __str__(self) -> str:
        return (f"st(213[{self.s1},1,{self.s2}]) = st({self.sigma}) = {self.value}, "
                f"but combiner + parts gives {self.predicted}")


class NonAdditiveStatistic(ValueError):
    def __init__(self, name: str, counterexample: DaggerViolation):
        super().__init__(f"statistic {name!r} is not additive over 213[s1,1,s2]: {counterexample}")
        self.counterexample = counterexample


_213 = Permutation._trusted((2, 1, 3))
_ONE = Permutation._trusted((1,))


def _perms(n: int):
    return (Permutation._trusted(p) for p in itertools.permutations(range(1, n + 1)))


def dagger_counterexample(
    stat: Union[StatisticDescriptor, str], n_max: int
) -> Optional[DaggerViolation]:
    """First ``(s1, s2)`` with ``len(s1) + len(s2) + 1 <= n_max`` breaking additivity, or None."""
    stat = resolve(stat)
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    if stat.combiner is None:
        raise ValueError(f"statistic {stat.name!r} has no combiner to verify")
    for total in range(n_max):
        for k in range(total + 1):
            m = total - k
            f = stat.combiner(k, m)
            right = [(s2, stat.evaluate(s2)) for s2 in _perms(m)]
            for s1 in _perms(k):
                base = f + stat.evaluate(s1)
                for s2, v2 in right:
                    sigma = inflate(_213, (s1, _ONE, s2))
                    value = stat.evaluate(sigma)
                    if value != base + v2:
                        return DaggerViolation(s1, s2, sigma, value, base + v2)
    return None


def verify_dagger(stat: Union[StatisticDescriptor, str], n_max: int) -> bool:
    return dagger_counterexample(stat, n_max) is None


INV = StatisticDescriptor(
    "inv", inv, lambda k, m: k,
    symmetries=(D4.R0, D4.R180, D4.r_m1, D4.r_1),
    transpose_invariant_312=True,
)
DES = StatisticDescriptor(
    "des", des, lambda k, m: 0 if k == 0 else 1,
    symmetries=(D4.R0, D4.R180),
    transpose_invariant_312=True,
)
C213 = StatisticDescriptor(
    "c213", c213, lambda k, m: 1 if k >= 1 and m >= 1 else 0,
)
# a naive combiner; the descent at the split contributes k but descents of
# s2 shift by k + 1, so no combiner can work
MAJ = StatisticDescriptor("maj", maj, lambda k, m: k, additive=False, symmetries=(D4.R0,))

_registry: dict[str, StatisticDescriptor] = {s.name: s for s in (INV, DES, C213, MAJ)}
_lock = threading.Lock()


def register_statistic(
    name: str,
    evaluate: Evaluate,
    combiner: Combiner,
    *,
    check_up_to: int = 7,
    symmetries: tuple[D4, ...] = (D4.R0,),
    transpose_invariant_312: bool = False,
) -> StatisticDescriptor:
    """Add a statistic after checking additivity up to ``check_up_to``.

    Raises ``NonAdditiveStatistic`` carrying the counterexample if the check fails,
    and ``KeyError`` if the name is taken.
    """
    desc = StatisticDescriptor(
        name, evaluate, combiner,
        symmetries=tuple(symmetries),
        transpose_invariant_312=transpose_invariant_312,
    )
    bad = dagger_counterexample(desc, check_up_to)
    if bad is not None:
        raise NonAdditiveStatistic(name, bad)
    with _lock:
        if name in _registry:
            raise KeyError(f"statistic {name!r} already registered")
        _registry[name] = desc
    return desc


def get_statistic(name: str) -> StatisticDescriptor:
    try:
        return _registry[name]
    except KeyError:
        raise KeyError(f"unknown statistic {name!r}") from None


def resolve(stat: Union[StatisticDescriptor, str]) -> StatisticDescriptor:
    return stat if isinstance(stat, StatisticDescriptor) else get_statistic(stat)


def registered_names() -> list[str]:
    return sorted(_registry)


def combiner_of(name: str) -> Combiner:
    desc = get_statistic(name)
    if desc.combiner is None:
        raise KeyError(f"statistic {name!r} has no combiner")
    return desc.combiner
