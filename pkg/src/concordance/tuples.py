"""Recursive commutator-tuple families P_n and the search for special tuples.

With a basis ``y_1, ..., y_2g`` of F (the generators in a chosen order):

* ``P_0 = {(y_1, ..., y_2g)}``;
* ``P_1 = {([y_i, y_j] : j != i) : 1 <= i <= 2g}``;
* each ``(w_1, ..., w_{2g-1})`` in ``P_k`` has children in ``P_{k+1}`` formed
  slot by slot, with ``z_i = [w_i, w_i^{y_j}]`` (``j != i``) or
  ``z_i = [w_i, w_k]`` (``k != i``), giving ``4g - 3`` choices per slot.

Tuples are enumerated lazily in lexicographic order of their choice vectors.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .fox import fox, p_factor, q_companion, q_factor
from .ring import (
    FreeAbelian,
    FreeGroup,
    GroupHom,
    GroupRingElement,
    apply_hom,
    determinant,
    quotient_base,
)
from .solvable import DEFAULT_BUDGET, quotient_key
from .words import Word, abelianize, commutator, conjugate, generator

__all__ = [
    "GoodMatrix",
    "Pedigree",
    "SpecialTuple",
    "TupleFamilyCursor",
    "children_per_parent",
    "expected_count",
    "find_special_tuple",
    "generate_P",
    "good_matrix",
    "is_good",
    "quotient_hom",
]


@dataclass(frozen=True)
class Pedigree:
    """How one tuple element was built.

    ``rule`` is one of ``"generator"`` (``y_index``), ``"base"``
    (``[y_anchor, y_index]``), ``"conjugate"`` (``[w, w^{y_index}]`` for the
    parent element w) or ``"pair"`` (``[w, w_index]`` with ``w_index`` the
    partner slot of the parent tuple).
    """

    rule: str
    index: int
    anchor: int | None = None
    parent: Pedigree | None = None
    partner: Pedigree | None = None

    @property
    def depth(self) -> int:
        if self.rule == "generator":
            return 0
        if self.rule == "base":
            return 1
        return self.parent.depth + 1

    def to_json(self) -> dict:
        doc: dict = {"rule": self.rule, "index": self.index}
        if self.anchor is not None:
            doc["anchor"] = self.anchor
        if self.parent is not None:
            doc["parent"] = self.parent.to_json()
        if self.partner is not None:
            doc["partner"] = self.partner.to_json()
        return doc


@dataclass(frozen=True)
class FamilyTuple:
    words: tuple
    pedigrees: tuple
    level: int

    def __len__(self) -> int:
        return len(self.words)

    def to_json(self) -> dict:
        return {
            "level": self.level,
            "words": [str(w) for w in self.words],
            "pedigrees": [p.to_json() for p in self.pedigrees],
        }


def _check_order(g: int, order):
    rank = 2 * g
    if order is None:
        return tuple(range(1, rank + 1))
    order = tuple(order)
    if sorted(order) != list(range(1, rank + 1)):
        raise ValueError(f"order must be a permutation of 1..{rank}")
    return order


def children_per_parent(g: int) -> int:
    return (4 * g - 3) ** (2 * g - 1)


def expected_count(g: int, n: int) -> int:
    """|P_n| by the counting formula."""
    if n == 0:
        return 1
    return 2 * g * children_per_parent(g) ** (n - 1)


def slot_choices(g: int, slot: int) -> list[tuple[str, int]]:
    """The ``4g - 3`` rules available at a slot (1-based), in enumeration order."""
    conj = [("conjugate", j) for j in range(1, 2 * g + 1) if j != slot]
    pair = [("pair", k) for k in range(1, 2 * g) if k != slot]
    return conj + pair


class TupleFamilyCursor:
    """Lazy, deterministic enumeration of P_n.

    Iterating yields :class:`FamilyTuple` objects. ``order`` lists the
    generator indices in basis order (``y_a = x_{order[a-1]}``).
    """

    def __init__(self, g: int, n: int, order=None):
        if g < 1 or n < 0:
            raise ValueError("need g >= 1 and n >= 0")
        self.g = g
        self.n = n
        self.rank = 2 * g
        self.order = _check_order(g, order)

    def _y(self, a: int) -> Word:
        return generator(self.order[a - 1], self.rank)

    def __iter__(self):
        return self._level(self.n)

    def __len__(self) -> int:
        return expected_count(self.g, self.n)

    def _level(self, n: int):
        rank = self.rank
        if n == 0:
            yield FamilyTuple(
                tuple(self._y(a) for a in range(1, rank + 1)),
                tuple(Pedigree("generator", a) for a in range(1, rank + 1)),
                0,
            )
            return
        if n == 1:
            for i in range(1, rank + 1):
                js = [j for j in range(1, rank + 1) if j != i]
                yield FamilyTuple(
                    tuple(commutator(self._y(i), self._y(j)) for j in js),
                    tuple(Pedigree("base", j, anchor=i) for j in js),
                    1,
                )
            return
        for parent in self._level(n - 1):
            yield from self.children(parent)

    def children(self, parent: FamilyTuple):
        """All children of one tuple, in choice-vector order."""
        slots = len(parent.words)
        options = []
        for i in range(1, slots + 1):
            row = []
            for rule, idx in slot_choices(self.g, i):
                row.append(self._child_element(parent, i, rule, idx))
            options.append(row)
        for combo in itertools.product(*options):
            yield FamilyTuple(tuple(c[0] for c in combo), tuple(c[1] for c in combo), parent.level + 1)

    def _child_element(self, parent: FamilyTuple, slot: int, rule: str, idx: int):
        w = parent.words[slot - 1]
        ped = parent.pedigrees[slot - 1]
        if rule == "conjugate":
            return commutator(w, conjugate(w, self._y(idx))), Pedigree("conjugate", idx, parent=ped)
        partner = parent.words[idx - 1]
        return commutator(w, partner), Pedigree("pair", idx, parent=ped, partner=parent.pedigrees[idx - 1])

    def child(self, parent: FamilyTuple, choices) -> FamilyTuple:
        """The child of ``parent`` for explicit per-slot ``(rule, index)`` choices."""
        words, peds = [], []
        for i, (rule, idx) in enumerate(choices, start=1):
            if (rule, idx) not in slot_choices(self.g, i):
                raise ValueError(f"choice {(rule, idx)} not allowed at slot {i}")
            w, p = self._child_element(parent, i, rule, idx)
            words.append(w)
            peds.append(p)
        return FamilyTuple(tuple(words), tuple(peds), parent.level + 1)


def generate_P(g: int, n: int, order=None) -> TupleFamilyCursor:
    return TupleFamilyCursor(g, n, order)


# homomorphisms to G_k -------------------------------------------------------


def quotient_hom(r: GroupHom, k: int) -> GroupHom:
    """The composite ``F -> G -> G_k = G / G^(k)`` for the supported targets.

    Free abelian G is its own G_k for k >= 1. For a free group or free
    solvable target the quotient is again free solvable (or abelian).
    """
    if not isinstance(r.source, FreeGroup):
        raise ValueError("r must be defined on the free group F")
    tgt = r.target
    if isinstance(tgt, FreeAbelian):
        if k == 0:
            return GroupHom(r.source, FreeAbelian(0), tuple(() for _ in r.images))
        return r
    depth = k if isinstance(tgt, FreeGroup) else min(k, tgt.k)
    base = quotient_base(tgt.rank, depth)
    if isinstance(base, FreeAbelian):
        if base.m == 0:
            return GroupHom(r.source, base, tuple(() for _ in r.images))
        return GroupHom(r.source, base, tuple(abelianize(w) for w in r.images))
    return GroupHom(r.source, base, r.images)


def _is_trivial_image(h: GroupHom, w: Word, budget) -> bool:
    key = h.map_key(w.syllables)
    if isinstance(h.target, FreeAbelian):
        return not any(key)
    t = h.target
    return quotient_key(key, t.rank, t.k, budget) == quotient_key((), t.rank, t.k, budget)


# good matrices --------------------------------------------------------------


@dataclass
class GoodMatrix:
    """Square array over Z[G_k]; column i holds the Fox coordinates of element i."""

    entries: list
    base: object

    @property
    def size(self) -> int:
        return len(self.entries)

    def column(self, i: int) -> list:
        return [row[i] for row in self.entries]

    def is_diagonal(self) -> bool:
        return all(self.entries[a][b].is_zero() for a in range(self.size) for b in range(self.size) if a != b)

    def to_json(self) -> list:
        return [[e.to_text() for e in row] for row in self.entries]


def _coordinates(rank: int, size: int, order) -> list[int]:
    # P_0 tuples keep all 2g coordinates; later levels drop the last basis generator
    if size == rank:
        return list(order)
    return list(order[: rank - 1])


def good_matrix(tup, r: GroupHom, k: int, order=None, budget=DEFAULT_BUDGET) -> GoodMatrix:
    """Matrix with columns ``(r pi_k d_{y_1} w_i, ..., r pi_k d_{y_{2g-1}} w_i)``."""
    words = tup.words if isinstance(tup, FamilyTuple) else tuple(tup)
    rank = words[0].rank
    g = rank // 2
    order = _check_order(g, order)
    h = quotient_hom(r, k)
    coords = _coordinates(rank, len(words), order)
    cols = []
    for w in words:
        cols.append([apply_hom(h, _with_budget(fox(w, j), budget)) for j in coords])
    entries = [[cols[i][a] for i in range(len(words))] for a in range(len(coords))]
    return GoodMatrix(entries, h.target)


def _with_budget(e: GroupRingElement, budget) -> GroupRingElement:
    e._budget = budget
    return e


def is_good(tup, r: GroupHom, k: int, order=None) -> bool:
    """Right linear independence of the good-matrix columns over Z[G_k].

    Decided exactly when G_k is free abelian (nonzero determinant over the
    Laurent ring). Refuses non-abelian G_k.
    """
    m = good_matrix(tup, r, k, order)
    if not isinstance(m.base, FreeAbelian):
        raise ValueError("independence is decided only over free abelian G_k; got " + str(m.base))
    if len(m.entries) != len(m.entries[0]):
        return False
    return not determinant(m.entries, m.base).is_zero()


# special tuple search -------------------------------------------------------


class NoSpecialTuple(ValueError):
    """The search precondition fails for this homomorphism."""


@dataclass
class SpecialTuple:
    tuple: FamilyTuple
    order: tuple
    certificate: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        doc = self.tuple.to_json()
        doc["order"] = list(self.order)
        doc["certificate"] = self.certificate
        return doc


def find_special_tuple(r: GroupHom, n: int, budget=DEFAULT_BUDGET, check_identities: bool = True) -> SpecialTuple:
    """Follow the inductive construction to a tuple of P_n that is good for r.

    The certificate records the basis order, the per-level Case 1 / Case 2
    choices and the nonvanishing right factors. Over a free abelian G_n the
    final tuple is also checked directly with :func:`is_good`.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    rank = r.source.rank
    g = rank // 2
    h1 = quotient_hom(r, 1)
    pivot = next((i for i in range(rank, 0, -1) if any(h1.map_key(((i, 1),)))), None)
    if pivot is None:
        raise NoSpecialTuple("r is trivial on H_1: no generator has nontrivial image in G_1")
    order = tuple(i for i in range(1, rank + 1) if i != pivot) + (pivot,)
    cursor = TupleFamilyCursor(g, n, order)
    cert: dict = {
        "order": list(order),
        "pivot_generator": pivot,
        "pivot_image_G1": list(h1.map_key(((pivot, 1),))),
        "levels": [],
    }
    if n == 0:
        base_tuple = next(iter(TupleFamilyCursor(g, 0)))
        return SpecialTuple(base_tuple, tuple(range(1, rank + 1)), cert)

    # level 1: [y_2g, y_j] for j < 2g
    y = [None] + [generator(a, rank) for a in order]
    x = y[rank]
    words = tuple(commutator(x, y[j]) for j in range(1, rank))
    current = FamilyTuple(words, tuple(Pedigree("base", j, anchor=rank) for j in range(1, rank)), 1)
    diag = []
    for j in range(1, rank):
        entry = GroupRingElement.group_element(FreeGroup(rank), x.inverse()) - GroupRingElement.group_element(
            FreeGroup(rank), commutator(y[j], x)
        )
        img = apply_hom(h1, entry)
        diag.append({"entry": img.to_text(), "nonzero": not img.is_zero()})
    cert["levels"].append({"level": 1, "diagonal": diag})

    for k in range(1, n):
        hk1 = quotient_hom(r, k + 1)
        alive = [not _is_trivial_image(hk1, w, budget) for w in current.words]
        if not any(alive):
            raise NoSpecialTuple(
                f"every element of the level-{k} tuple dies in G_{k + 1}; r is not an algebraic {n}-solution"
            )
        anchor = alive.index(True) + 1
        choices, slots = [], []
        for i, w in enumerate(current.words, start=1):
            if alive[i - 1]:
                choices.append(("conjugate", rank))
                factor = p_factor(w, x)
                img = apply_hom(hk1, _with_budget(factor, budget))
                entry = {"slot": i, "case": 1, "factor": "p", "factor_nonzero": not img.is_zero()}
            else:
                choices.append(("pair", anchor))
                factor = q_factor(w, current.words[anchor - 1])
                img = apply_hom(hk1, _with_budget(factor, budget))
                companion = apply_hom(hk1, _with_budget(q_companion(w, current.words[anchor - 1]), budget))
                entry = {
                    "slot": i,
                    "case": 2,
                    "factor": "q",
                    "factor_nonzero": not img.is_zero(),
                    "companion_vanishes": companion.is_zero(),
                }
            slots.append(entry)
        child = cursor.child(current, choices)
        if check_identities:
            for entry, w, z in zip(slots, current.words, child.words):
                entry["identity_in_ZF"] = _factorization_holds(entry["case"], w, z, x, current.words[anchor - 1], order)
        cert["levels"].append({"level": k + 1, "anchor_slot": anchor, "slots": slots})
        current = child

    hn = quotient_hom(r, n)
    if isinstance(hn.target, FreeAbelian):
        cert["good"] = is_good(current, r, n, order)
        cert["decided_by"] = "determinant over the Laurent ring"
    else:
        ok = all(d["nonzero"] for d in cert["levels"][0]["diagonal"])
        for lvl in cert["levels"][1:]:
            for s in lvl["slots"]:
                ok = ok and s["factor_nonzero"] and s.get("companion_vanishes", True)
        cert["good"] = ok
        cert["decided_by"] = "factorization"
    return SpecialTuple(current, order, cert)


def _factorization_holds(case: int, w: Word, z: Word, x: Word, w1: Word, order) -> bool:
    """Check the Case 1 / Case 2 identities for z in Z[F] on the first 2g-1 coordinates."""
    rank = w.rank
    coords = order[: rank - 1]
    if case == 1:
        p = p_factor(w, x)
        return all(fox(z, j) == fox(w, j) * p for j in coords)
    q, comp = q_factor(w, w1), q_companion(w, w1)
    return all(fox(z, j) == fox(w, j) * q + fox(w1, j) * comp for j in coords)
