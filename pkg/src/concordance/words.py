"""Reduced words in the free group F = <x_1, ..., x_rank>.

Words are stored run-length encoded as ``(generator, exponent)`` syllables,
which keeps iterated commutators compact. Conventions used throughout the
package:

* ``commutator(a, b) = a b a^-1 b^-1``
* ``conjugate(w, x) = x^-1 w x``
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from . import _kernels

__all__ = [
    "Word",
    "abelianize",
    "commutator",
    "conjugate",
    "generator",
    "identity",
    "parse_word",
    "reduce",
]

_TOKEN = re.compile(r"^x(\d+)(?:\^(-?\d+))?$")


@dataclass(frozen=True, order=True)
class Word:
    """A freely reduced word; construct through :func:`reduce` or :func:`parse_word`."""

    rank: int
    syllables: tuple = field(default=())

    def __post_init__(self):
        if self.rank < 2 or self.rank % 2:
            raise ValueError(f"free group rank must be even and >= 2, got {self.rank}")
        prev = None
        for gen, exp in self.syllables:
            if not 1 <= gen <= self.rank:
                raise ValueError(f"generator x{gen} out of range for rank {self.rank}")
            if exp == 0 or gen == prev:
                raise ValueError("syllables are not freely reduced; use reduce()")
            prev = gen

    @classmethod
    def _trusted(cls, rank: int, syllables: tuple) -> Word:
        # skips validation; only for kernel output, which is reduced by construction
        w = object.__new__(cls)
        object.__setattr__(w, "rank", rank)
        object.__setattr__(w, "syllables", syllables)
        return w

    def __mul__(self, other: Word) -> Word:
        _check_rank(self, other)
        return Word._trusted(self.rank, _kernels.multiply(self.syllables, other.syllables))

    def inverse(self) -> Word:
        return Word._trusted(self.rank, _kernels.invert(self.syllables))

    def __pow__(self, n: int) -> Word:
        base = self if n >= 0 else self.inverse()
        out = identity(self.rank)
        for _ in range(abs(n)):
            out = out * base
        return out

    def __len__(self) -> int:
        return sum(abs(e) for _, e in self.syllables)

    def is_identity(self) -> bool:
        return not self.syllables

    def letters(self) -> list[int]:
        """Flat signed letters: ``+g`` for x_g, ``-g`` for x_g^-1."""
        out = []
        for gen, exp in self.syllables:
            out.extend([gen if exp > 0 else -gen] * abs(exp))
        return out

    def __str__(self) -> str:
        return " ".join(f"x{g}" if e == 1 else f"x{g}^{e}" for g, e in self.syllables)

    def __repr__(self) -> str:
        return f"Word({self.rank}, {str(self)!r})"


def _check_rank(a: Word, b: Word) -> None:
    if a.rank != b.rank:
        raise ValueError(f"rank mismatch: {a.rank} vs {b.rank}")


def reduce(letters, rank: int) -> Word:
    """Freely reduce a raw spelling.

    ``letters`` may hold signed integers (``-2`` is x_2^-1) or
    ``(generator, exponent)`` pairs, freely mixed.
    """
    if rank < 2 or rank % 2:
        raise ValueError(f"free group rank must be even and >= 2, got {rank}")
    syl = []
    for item in letters:
        if isinstance(item, tuple):
            gen, exp = item
        else:
            gen, exp = abs(item), (1 if item > 0 else -1)
            if item == 0:
                raise ValueError("generator index 0 is not valid")
        if not 1 <= gen <= rank:
            raise ValueError(f"generator x{gen} out of range for rank {rank}")
        syl.append((int(gen), int(exp)))
    return Word._trusted(rank, _kernels.reduce_syllables(syl))


def identity(rank: int) -> Word:
    return Word(rank, ())


def generator(i: int, rank: int) -> Word:
    return reduce([i], rank)


def parse_word(text: str, rank: int) -> Word:
    """Parse ``"x1 x2^-1 x1^3"``; the empty string is the identity."""
    syl = []
    for tok in text.split():
        m = _TOKEN.match(tok)
        if not m:
            raise ValueError(f"cannot parse word token {tok!r}")
        syl.append((int(m.group(1)), int(m.group(2) or 1)))
    return reduce(syl, rank)


def commutator(a: Word, b: Word) -> Word:
    _check_rank(a, b)
    return a * b * a.inverse() * b.inverse()


def conjugate(w: Word, x: Word) -> Word:
    """``w^x = x^-1 w x``."""
    _check_rank(w, x)
    return x.inverse() * w * x


def abelianize(w: Word) -> tuple:
    """Exponent-sum vector in Z^rank."""
    return _kernels.abelianize(w.syllables, w.rank)
