"""Word problem in the free solvable quotients F / F^(k).

Two words are equal in F/F^(k) exactly when they have the same
:func:`quotient_key`. The key is built by iterating the Magnus embedding:
the class of ``w`` in F/N' is determined by its class in F/N together with
the images of its Fox derivatives in Z[F/N]. Starting from N = F' (where the
class is the exponent-sum vector) this recursion yields hashable canonical
forms at every level.
"""

from __future__ import annotations

import threading
from functools import lru_cache

from . import _kernels

DEFAULT_BUDGET = 5_000_000


class BudgetExceeded(RuntimeError):
    """The word-problem computation exceeded its node budget."""


_state = threading.local()


def _charge(n: int) -> None:
    left = getattr(_state, "remaining", None)
    if left is None:
        return
    left -= n
    _state.remaining = left
    if left < 0:
        raise BudgetExceeded("solvable-quotient word problem exceeded its node budget")


@lru_cache(maxsize=200_000)
def _key(syllables: tuple, rank: int, k: int):
    if k <= 0:
        return ()
    if k == 1:
        return _kernels.abelianize(syllables, rank)
    if k == 2:
        # one-pass fast path; same key as the general recursion below
        coords = []
        for i in range(1, rank + 1):
            acc = _kernels.fox_abelian(syllables, i, rank)
            _charge(len(acc) + 1)
            coords.append(frozenset(acc.items()))
        return (_kernels.abelianize(syllables, rank), tuple(coords))
    coords = []
    for i in range(1, rank + 1):
        terms = _kernels.fox_terms(syllables, i)
        _charge(len(terms) + 1)
        acc: dict = {}
        for coef, word in terms:
            kk = _key(word, rank, k - 1)
            acc[kk] = acc.get(kk, 0) + coef
        coords.append(frozenset((kk, c) for kk, c in acc.items() if c))
    return (_key(syllables, rank, k - 1), tuple(coords))


def quotient_key(syllables: tuple, rank: int, k: int, budget: int | None = DEFAULT_BUDGET):
    """Canonical key of the class of ``syllables`` in F/F^(k).

    ``budget`` bounds the number of Fox terms expanded (memoized work is
    free); ``None`` disables the bound.
    """
    outer = getattr(_state, "remaining", None)
    if outer is not None:
        # nested call: share the enclosing budget
        return _key(syllables, rank, k)
    _state.remaining = float("inf") if budget is None else budget
    try:
        return _key(syllables, rank, k)
    finally:
        _state.remaining = None


def in_derived_subgroup(syllables: tuple, rank: int, k: int, budget: int | None = DEFAULT_BUDGET) -> bool:
    """True iff the word lies in F^(k)."""
    if k <= 0:
        return True
    return quotient_key(syllables, rank, k, budget) == quotient_key((), rank, k, budget)
