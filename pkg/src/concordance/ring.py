"""Integral group rings Z[F], Z[Z^m] and Z[F/F^(k)].

A :class:`GroupRingElement` is a finite integer combination of group
elements over one of three bases:

* :class:`FreeGroup` -- keys are reduced syllable tuples (noncommutative);
* :class:`FreeAbelian` -- keys are exponent vectors, i.e. multivariate
  Laurent polynomials in ``t1 .. tm``; ``FreeAbelian(0)`` is the trivial
  group, so its group ring is Z;
* :class:`SolvableQuotient` -- keys are representative words, merged
  whenever they agree in F/F^(k) (see :mod:`concordance.solvable`).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from . import _kernels
from .solvable import DEFAULT_BUDGET, quotient_key
from .words import Word

__all__ = [
    "FreeAbelian",
    "FreeGroup",
    "GroupHom",
    "GroupRingElement",
    "SolvableQuotient",
    "abelianization",
    "apply_hom",
    "determinant",
    "identity_hom",
    "projection",
    "trivial_hom",
]


@dataclass(frozen=True)
class FreeGroup:
    rank: int


@dataclass(frozen=True)
class FreeAbelian:
    m: int


@dataclass(frozen=True)
class SolvableQuotient:
    """F/F^(k) for F free of the given rank; k >= 2 (use FreeAbelian below that)."""

    rank: int
    k: int


Base = Union[FreeGroup, FreeAbelian, SolvableQuotient]


def _word_sort_key(syl):
    return (sum(abs(e) for _, e in syl), syl)


class GroupRingElement:
    """Immutable element of an integral group ring."""

    __slots__ = ("base", "_terms", "_budget")

    def __init__(self, base: Base, terms=None, *, budget: int | None = DEFAULT_BUDGET):
        self.base = base
        self._budget = budget
        raw: dict = {}
        for key, coef in (terms or {}).items():
            if isinstance(key, Word):
                key = key.syllables
            raw[key] = raw.get(key, 0) + coef
        if isinstance(base, SolvableQuotient):
            raw = self._merge_classes(raw)
        self._terms = {k: c for k, c in raw.items() if c}

    def _merge_classes(self, raw: dict) -> dict:
        classes: dict = {}
        for syl, coef in raw.items():
            ck = quotient_key(syl, self.base.rank, self.base.k, self._budget)
            if ck in classes:
                rep, c = classes[ck]
                if _word_sort_key(syl) < _word_sort_key(rep):
                    rep = syl
                classes[ck] = (rep, c + coef)
            else:
                classes[ck] = (syl, coef)
        return {rep: c for rep, c in classes.values()}

    # construction helpers -------------------------------------------------

    @classmethod
    def zero(cls, base: Base) -> GroupRingElement:
        return cls(base)

    @classmethod
    def one(cls, base: Base) -> GroupRingElement:
        return cls(base, {_identity_key(base): 1})

    @classmethod
    def group_element(cls, base: Base, g, coef: int = 1) -> GroupRingElement:
        return cls(base, {g.syllables if isinstance(g, Word) else tuple(g): coef})

    @classmethod
    def _raw(cls, base: Base, terms: dict, budget=DEFAULT_BUDGET) -> GroupRingElement:
        # terms already canonical and zero-free
        obj = object.__new__(cls)
        obj.base = base
        obj._budget = budget
        obj._terms = terms
        return obj

    # access ---------------------------------------------------------------

    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        """``(group element, coefficient)`` pairs in canonical order."""
        for key in sorted(self._terms, key=self._sort_key):
            g = key if isinstance(self.base, FreeAbelian) else Word._trusted(self.base.rank, key)
            yield g, self._terms[key]

    def _sort_key(self, key):
        if isinstance(self.base, FreeAbelian):
            return key
        return _word_sort_key(key)

    def __len__(self) -> int:
        return len(self._terms)

    # arithmetic -----------------------------------------------------------

    def _check(self, other: GroupRingElement) -> None:
        if self.base != other.base:
            raise ValueError(f"group ring base mismatch: {self.base} vs {other.base}")

    def _coerce(self, other) -> GroupRingElement:
        if isinstance(other, int):
            return GroupRingElement.one(self.base) * other if other else GroupRingElement(self.base)
        self._check(other)
        return other

    def __add__(self, other) -> GroupRingElement:
        other = self._coerce(other)
        out = dict(self._terms)
        for k, c in other._terms.items():
            out[k] = out.get(k, 0) + c
        if isinstance(self.base, SolvableQuotient):
            return GroupRingElement(self.base, out, budget=self._budget)
        return GroupRingElement._raw(self.base, {k: c for k, c in out.items() if c}, self._budget)

    __radd__ = __add__

    def __neg__(self) -> GroupRingElement:
        return GroupRingElement._raw(self.base, {k: -c for k, c in self._terms.items()}, self._budget)

    def __sub__(self, other) -> GroupRingElement:
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> GroupRingElement:
        return (-self) + other

    def __mul__(self, other) -> GroupRingElement:
        if isinstance(other, int):
            if not other:
                return GroupRingElement(self.base)
            return GroupRingElement._raw(self.base, {k: c * other for k, c in self._terms.items()}, self._budget)
        self._check(other)
        out: dict = {}
        mul = _group_mul(self.base)
        for ka, ca in self._terms.items():
            for kb, cb in other._terms.items():
                k = mul(ka, kb)
                out[k] = out.get(k, 0) + ca * cb
        if isinstance(self.base, SolvableQuotient):
            return GroupRingElement(self.base, out, budget=self._budget)
        return GroupRingElement._raw(self.base, {k: c for k, c in out.items() if c}, self._budget)

    def __rmul__(self, other) -> GroupRingElement:
        if isinstance(other, int):
            return self * other
        return NotImplemented

    # structure ------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self._terms

    def augmentation(self) -> int:
        return sum(self._terms.values())

    def involution(self) -> GroupRingElement:
        """Linear extension of g -> g^-1 (an anti-automorphism)."""
        if isinstance(self.base, FreeAbelian):
            out = {tuple(-e for e in k): c for k, c in self._terms.items()}
            return GroupRingElement._raw(self.base, out, self._budget)
        out = {_kernels.invert(k): c for k, c in self._terms.items()}
        if isinstance(self.base, SolvableQuotient):
            return GroupRingElement(self.base, out, budget=self._budget)
        return GroupRingElement._raw(self.base, out, self._budget)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = self._coerce(other)
        if not isinstance(other, GroupRingElement) or self.base != other.base:
            return NotImplemented if not isinstance(other, GroupRingElement) else False
        if isinstance(self.base, SolvableQuotient):
            return (self - other).is_zero()
        return self._terms == other._terms

    def __hash__(self):
        if isinstance(self.base, SolvableQuotient):
            ck = frozenset(
                (quotient_key(k, self.base.rank, self.base.k, self._budget), c) for k, c in self._terms.items()
            )
            return hash((self.base, ck))
        return hash((self.base, frozenset(self._terms.items())))

    # text -----------------------------------------------------------------

    def to_text(self) -> str:
        """Canonical text: sorted ``±c*g`` terms joined by spaces; ``0`` if empty."""
        if not self._terms:
            return "0"
        parts = []
        for g, c in self.items():
            sign = "+" if c > 0 else "-"
            parts.append(f"{sign}{abs(c)}*{_format_element(self.base, g)}")
        return " ".join(parts)

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"GroupRingElement({self.base}, {self.to_text()!r})"


def _identity_key(base: Base):
    if isinstance(base, FreeAbelian):
        return (0,) * base.m
    return ()


def _group_mul(base: Base):
    if isinstance(base, FreeAbelian):
        return lambda a, b: tuple(x + y for x, y in zip(a, b))
    return _kernels.multiply


def _format_element(base: Base, g) -> str:
    if isinstance(base, FreeAbelian):
        mono = [f"t{i + 1}" if e == 1 else f"t{i + 1}^{e}" for i, e in enumerate(g) if e]
        return " ".join(mono) if mono else "1"
    return str(g) if g.syllables else "1"


# homomorphisms --------------------------------------------------------------


@dataclass(frozen=True)
class GroupHom:
    """Homomorphism determined by the images of the source generators.

    Images are exponent vectors when the target is :class:`FreeAbelian`,
    otherwise :class:`Word` objects in a free group of the target's rank.
    """

    source: Base
    target: Base
    images: tuple

    def __post_init__(self):
        n_src = self.source.m if isinstance(self.source, FreeAbelian) else self.source.rank
        if len(self.images) != n_src:
            raise ValueError(f"expected {n_src} generator images, got {len(self.images)}")
        if isinstance(self.target, FreeAbelian):
            for v in self.images:
                if len(v) != self.target.m:
                    raise ValueError("abelian image has wrong length")
        else:
            if isinstance(self.source, FreeAbelian):
                raise ValueError("a free abelian group only maps to abelian targets here")
            for w in self.images:
                if not isinstance(w, Word) or w.rank != self.target.rank:
                    raise ValueError("word image has wrong rank")
        if isinstance(self.source, SolvableQuotient) and isinstance(self.target, SolvableQuotient):
            if self.target.k > self.source.k:
                raise ValueError("F/F^(k) does not map onto a deeper solvable quotient")
        if isinstance(self.source, SolvableQuotient) and isinstance(self.target, FreeGroup):
            raise ValueError("a solvable quotient cannot map into a free group this way")

    def map_key(self, key):
        """Image of one group element (source key) as a target key."""
        if isinstance(self.source, FreeAbelian):
            out = [0] * self.target.m
            for e, v in zip(key, self.images):
                if e:
                    for j, x in enumerate(v):
                        out[j] += e * x
            return tuple(out)
        if isinstance(self.target, FreeAbelian):
            out = [0] * self.target.m
            for gen, exp in key:
                for j, x in enumerate(self.images[gen - 1]):
                    out[j] += exp * x
            return tuple(out)
        syl: tuple = ()
        for gen, exp in key:
            img = self.images[gen - 1]
            piece = img.syllables if exp > 0 else _kernels.invert(img.syllables)
            for _ in range(abs(exp)):
                syl = _kernels.multiply(syl, piece)
        return syl

    def __call__(self, x):
        if isinstance(x, GroupRingElement):
            return apply_hom(self, x)
        key = x.syllables if isinstance(x, Word) else tuple(x)
        out = self.map_key(key)
        if isinstance(self.target, FreeAbelian):
            return out
        return Word._trusted(self.target.rank, out)


def apply_hom(h: GroupHom, e: GroupRingElement) -> GroupRingElement:
    """Linear extension of ``h`` to the group ring."""
    if e.base != h.source:
        raise ValueError(f"element base {e.base} is not the source {h.source}")
    out: dict = {}
    for key, c in e._terms.items():
        k = h.map_key(key)
        out[k] = out.get(k, 0) + c
    return GroupRingElement(h.target, out, budget=e._budget)


def identity_hom(base: Base) -> GroupHom:
    if isinstance(base, FreeAbelian):
        return GroupHom(base, base, tuple(tuple(int(i == j) for j in range(base.m)) for i in range(base.m)))
    from .words import generator

    return GroupHom(base, base, tuple(generator(i, base.rank) for i in range(1, base.rank + 1)))


def abelianization(rank: int) -> GroupHom:
    """F -> Z^rank sending x_i to the i-th basis vector t_i."""
    return GroupHom(FreeGroup(rank), FreeAbelian(rank), tuple(tuple(int(i == j) for j in range(rank)) for i in range(rank)))


def trivial_hom(rank: int, m: int = 0) -> GroupHom:
    return GroupHom(FreeGroup(rank), FreeAbelian(m), tuple((0,) * m for _ in range(rank)))


def quotient_base(rank: int, k: int) -> Base:
    """Base ring for Z[F/F^(k)], using the cheaper abelian model when k <= 1."""
    if k <= 0:
        return FreeAbelian(0)
    if k == 1:
        return FreeAbelian(rank)
    return SolvableQuotient(rank, k)


def projection(rank: int, k: int) -> GroupHom:
    """The quotient map F -> F/F^(k)."""
    if k <= 1:
        if k <= 0:
            return trivial_hom(rank, 0)
        return abelianization(rank)
    from .words import generator

    return GroupHom(FreeGroup(rank), SolvableQuotient(rank, k), tuple(generator(i, rank) for i in range(1, rank + 1)))


# linear algebra over commutative bases ---------------------------------------


def determinant(matrix, base: Base) -> GroupRingElement:
    """Exact determinant over a commutative group ring (Laplace expansion, memoized on column sets)."""
    if isinstance(base, (FreeGroup, SolvableQuotient)):
        raise ValueError("determinant requires a commutative base")
    n = len(matrix)
    if n == 0:
        return GroupRingElement.one(base)
    memo: dict = {0: GroupRingElement.one(base)}
    # memo[mask] = determinant of the minor using the last popcount(mask) rows and the columns in mask
    for row in range(n - 1, -1, -1):
        size = n - row
        nxt: dict = {}
        for mask, sub in memo.items():
            if bin(mask).count("1") != size - 1 or sub.is_zero():
                continue
            free_cols = [c for c in range(n) if not mask >> c & 1]
            for c in free_cols:
                entry = matrix[row][c]
                if entry.is_zero():
                    continue
                # sign from the position of c among the columns of the enlarged minor
                pos = bin(mask & ((1 << c) - 1)).count("1")
                term = entry * sub
                if pos % 2:
                    term = -term
                new = mask | (1 << c)
                nxt[new] = nxt[new] + term if new in nxt else term
        memo = nxt
        if not memo:
            return GroupRingElement.zero(base)
    return memo.get((1 << n) - 1, GroupRingElement.zero(base))
