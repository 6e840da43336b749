"""Free differential calculus on F.

Two conventions are provided:

* :func:`fox` -- the right (conjugated) derivative, with
  ``d(gh) = dg + (dh) g^-1`` and ``d(x_j) = delta_ij``;
* :func:`fox_classical` -- the usual left derivative, ``d(gh) = dg + g dh``.

They are related by ``fox(w, i) == fox_classical(w, i).involution()``.
Inverses carry a sign: ``fox(g^-1, i) == -fox(g, i) * g``.

The closed forms below (:func:`commutator_fox_closed_form`, :func:`p_factor`,
:func:`q_factor`) are independent formulas used to cross-check the recursive
engine; they are never used to compute derivatives.
"""

from __future__ import annotations

from . import _kernels
from .ring import FreeGroup, GroupRingElement
from .solvable import DEFAULT_BUDGET, BudgetExceeded, in_derived_subgroup
from .words import Word, abelianize, commutator, conjugate

__all__ = [
    "BudgetExceeded",
    "commutator_fox_closed_form",
    "derived_membership",
    "fox",
    "fox_classical",
    "fox_vector",
    "p_factor",
    "q_factor",
]


def _check_index(w: Word, i: int) -> None:
    if not 1 <= i <= w.rank:
        raise ValueError(f"Fox index {i} out of range 1..{w.rank}")


def fox(w: Word, i: int) -> GroupRingElement:
    """Right-convention Fox derivative of ``w`` with respect to x_i, in Z[F]."""
    _check_index(w, i)
    terms: dict = {}
    for coef, key in _kernels.fox_terms(w.syllables, i):
        terms[key] = terms.get(key, 0) + coef
    return GroupRingElement._raw(FreeGroup(w.rank), {k: c for k, c in terms.items() if c})


def fox_classical(w: Word, i: int) -> GroupRingElement:
    """Left-convention Fox derivative: a positive letter at prefix P gives ``+P``,
    a negative letter gives ``-P x_i^-1``."""
    _check_index(w, i)
    terms: dict = {}
    prefix: tuple = ()
    for gen, exp in w.syllables:
        if gen == i:
            step = 1 if exp > 0 else -1
            for s in range(abs(exp)):
                if exp > 0:
                    key = _kernels.multiply(prefix, ((gen, s),) if s else ())
                    terms[key] = terms.get(key, 0) + 1
                else:
                    key = _kernels.multiply(prefix, ((gen, step * (s + 1)),))
                    terms[key] = terms.get(key, 0) - 1
        prefix = _kernels.multiply(prefix, ((gen, exp),))
    return GroupRingElement._raw(FreeGroup(w.rank), {k: c for k, c in terms.items() if c})


def fox_vector(w: Word) -> list[GroupRingElement]:
    return [fox(w, i) for i in range(1, w.rank + 1)]


def _elt(w: Word) -> GroupRingElement:
    return GroupRingElement.group_element(FreeGroup(w.rank), w)


def commutator_fox_closed_form(g: Word, h: Word, i: int) -> GroupRingElement:
    """``dg + (dh)g^-1 - (dg) g h^-1 g^-1 - (dh) h g h^-1 g^-1`` for d = fox(., i)."""
    if g.rank != h.rank:
        raise ValueError(f"rank mismatch: {g.rank} vs {h.rank}")
    dg, dh = fox(g, i), fox(h, i)
    gi, hi = g.inverse(), h.inverse()
    return dg + dh * _elt(gi) - dg * _elt(g * hi * gi) - dh * _elt(h * g * hi * gi)


def p_factor(w: Word, x: Word) -> GroupRingElement:
    """``1 + x w^-1 - (w^x)^-1 [w^x, w] - x [w^x, w]``.

    When ``fox(x, j) == 0`` this satisfies
    ``fox([w, w^x], j) == fox(w, j) * p_factor(w, x)``.
    """
    if w.rank != x.rank:
        raise ValueError(f"rank mismatch: {w.rank} vs {x.rank}")
    wx = conjugate(w, x)
    c = commutator(wx, w)
    one = GroupRingElement.one(FreeGroup(w.rank))
    return one + _elt(x * w.inverse()) - _elt(wx.inverse() * c) - _elt(x * c)


def q_factor(w_i: Word, w_1: Word) -> GroupRingElement:
    """``1 - w_1^-1 [w_1, w_i]``; pairs with the identity

    ``fox([w_i, w_1], j) == fox(w_i, j) * q + fox(w_1, j) * (w_i^-1 - [w_1, w_i])``.
    """
    if w_i.rank != w_1.rank:
        raise ValueError(f"rank mismatch: {w_i.rank} vs {w_1.rank}")
    one = GroupRingElement.one(FreeGroup(w_i.rank))
    return one - _elt(w_1.inverse() * commutator(w_1, w_i))


def q_companion(w_i: Word, w_1: Word) -> GroupRingElement:
    """The second right factor ``w_i^-1 - [w_1, w_i]`` of the q identity."""
    return _elt(w_i.inverse()) - _elt(commutator(w_1, w_i))


def derived_membership(w: Word, k: int, budget: int | None = DEFAULT_BUDGET) -> bool:
    """True iff ``w`` lies in the k-th derived subgroup F^(k).

    Uses the iterated Fox criterion: ``w`` is in F^(k+1) iff every Fox
    derivative of ``w`` vanishes in Z[F/F^(k)]. Raises
    :class:`BudgetExceeded` when the computation grows past ``budget``.
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    if k == 1:
        return not any(abelianize(w))
    return in_derived_subgroup(w.syllables, w.rank, k, budget)
