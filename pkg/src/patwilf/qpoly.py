"""Dense polynomials in ``q`` with exact integer coefficients."""

from __future__ import annotations

from typing import Iterable, Sequence, Union

__all__ = ["QPoly", "ZERO", "ONE", "Q"]

Coercible = Union["QPoly", int]


class QPoly:
    """An immutable polynomial ``sum(c[i] * q**i)``.

    Coefficients are Python ints, lowest degree first, with trailing zeros
    stripped; the zero polynomial has no coefficients.

    >>> p = QPoly([1, 1])
    >>> p * p
    QPoly('1 + 2q + q^2')
    >>> (p * p).eval_at_one()
    4
    """

    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs: Iterable[int] = ()):
        cs = [int(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[int, ...] = tuple(cs)
        self._hash = hash(self.coeffs)

    @staticmethod
    def _coerce(other: Coercible) -> "QPoly":
        if isinstance(other, QPoly):
            return other
        if isinstance(other, int):
            return QPoly([other])
        return NotImplemented

    @classmethod
    def monomial(cls, e: int, c: int = 1) -> "QPoly":
        if e < 0:
            raise ValueError("negative exponent")
        return cls([0] * e + [c])

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        other = QPoly._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return self._hash

    def __add__(self, other: Coercible) -> "QPoly":
        other = QPoly._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return QPoly(out)

    __radd__ = __add__

    def __neg__(self) -> "QPoly":
        return QPoly(-c for c in self.coeffs)

    def __sub__(self, other: Coercible) -> "QPoly":
        other = QPoly._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Coercible) -> "QPoly":
        return (-self) + other

    def __mul__(self, other: Coercible) -> "QPoly":
        other = QPoly._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return ZERO
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return QPoly(out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "QPoly":
        if e < 0:
            raise ValueError("negative power")
        out, base = ONE, self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def shift(self, e: int) -> "QPoly":
        """Multiply by ``q**e``."""
        if e < 0:
            raise ValueError("shift exponent must be nonnegative")
        if not self.coeffs:
            return self
        return QPoly((0,) * e + self.coeffs)

    def __call__(self, q):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * q + c
        return acc

    def eval_at_one(self) -> int:
        return sum(self.coeffs)

    def is_nonnegative(self) -> bool:
        return all(c >= 0 for c in self.coeffs)

    # -- text and json forms -------------------------------------------------

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for e, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mag = abs(c)
            if e == 0:
                body = str(mag)
            else:
                var = "q" if e == 1 else f"q^{e}"
                body = var if mag == 1 else f"{mag}{var}"
            terms.append((c < 0, body))
        neg, body = terms[0]
        out = ("-" if neg else "") + body
        for neg, body in terms[1:]:
            out += (" - " if neg else " + ") + body
        return out

    def __repr__(self) -> str:
        return f"QPoly({str(self)!r})"

    def to_json(self) -> list[str]:
        return [str(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, data: Sequence[str]) -> "QPoly":
        if not isinstance(data, (list, tuple)):
            raise ValueError("expected an array of decimal strings")
        out = []
        for item in data:
            if not isinstance(item, str):
                raise ValueError(f"coefficient {item!r} is not a string")
            out.append(int(item, 10))
        return cls(out)


ZERO = QPoly()
ONE = QPoly([1])
Q = QPoly([0, 1])
