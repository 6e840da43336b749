import random

import pytest
from hypothesis import given
from hypothesis import strategies as st
from sympy.combinatorics import Permutation

from concordance.fox import (
    BudgetExceeded,
    commutator_fox_closed_form,
    derived_membership,
    fox,
    fox_classical,
    fox_vector,
    p_factor,
    q_companion,
    q_factor,
)
from concordance.ring import FreeGroup, GroupRingElement
from concordance.words import commutator, conjugate, generator, identity, parse_word, reduce
from oracles import S4_ELEMENTS, random_letters, s4_derived_level, s4_image

RANK = 4
F = FreeGroup(RANK)
letters = st.lists(st.integers(1, RANK).flatmap(lambda g: st.sampled_from([g, -g])), max_size=16)
words = letters.map(lambda ls: reduce(ls, RANK))
index = st.integers(1, RANK)


def elt(w):
    return GroupRingElement.group_element(F, w)


def x(i):
    return generator(i, RANK)


def test_generators_are_dual_basis():
    for i in range(1, RANK + 1):
        for j in range(1, RANK + 1):
            assert fox(x(i), j) == (1 if i == j else 0)
            assert fox_classical(x(i), j) == (1 if i == j else 0)


def test_small_values():
    w = parse_word("x1 x2", RANK)
    assert fox(w, 2).to_text() == "+1*x1^-1"
    assert fox_classical(w, 2).to_text() == "+1*x1"
    assert fox(x(1).inverse(), 1).to_text() == "-1*x1"
    assert fox_classical(x(1).inverse(), 1).to_text() == "-1*x1^-1"
    assert fox(identity(RANK), 1).is_zero()


@given(words)
def test_fundamental_identity_classical(w):
    # w - 1 = sum_i (d_i w)(x_i - 1)
    one = GroupRingElement.one(F)
    total = GroupRingElement.zero(F)
    for i in range(1, RANK + 1):
        total = total + fox_classical(w, i) * (elt(x(i)) - one)
    assert total == elt(w) - one


@given(words)
def test_fundamental_identity_right(w):
    # w^-1 - 1 = sum_i (x_i^-1 - 1) fox_i(w)
    one = GroupRingElement.one(F)
    total = GroupRingElement.zero(F)
    for i in range(1, RANK + 1):
        total = total + (elt(x(i).inverse()) - one) * fox(w, i)
    assert total == elt(w.inverse()) - one


@given(words, words, index)
def test_right_product_rule(g, h, i):
    assert fox(g * h, i) == fox(g, i) + fox(h, i) * elt(g.inverse())


@given(words, words, index)
def test_left_product_rule(g, h, i):
    assert fox_classical(g * h, i) == fox_classical(g, i) + elt(g) * fox_classical(h, i)


@given(words, index)
def test_inverse_rule_carries_minus_sign(g, i):
    assert fox(g.inverse(), i) == -fox(g, i) * elt(g)


@given(words, index)
def test_involution_relation(w, i):
    assert fox(w, i) == fox_classical(w, i).involution()


@given(words, words, index)
def test_commutator_closed_form(g, h, i):
    assert fox(commutator(g, h), i) == commutator_fox_closed_form(g, h, i)


@given(words, st.integers(1, RANK), index)
def test_p_factorization(w, m, j):
    if j == m:
        return
    assert fox(commutator(w, conjugate(w, x(m))), j) == fox(w, j) * p_factor(w, x(m))


@given(words, words, index)
def test_q_identity(wi, w1, j):
    lhs = fox(commutator(wi, w1), j)
    assert lhs == fox(wi, j) * q_factor(wi, w1) + fox(w1, j) * q_companion(wi, w1)


@given(words)
def test_augmentation_is_exponent_sum(w):
    from concordance.words import abelianize

    assert [d.augmentation() for d in fox_vector(w)] == list(abelianize(w))


def test_index_validation():
    with pytest.raises(ValueError):
        fox(x(1), 0)
    with pytest.raises(ValueError):
        fox_classical(x(1), 5)


# derived series -------------------------------------------------------------

C12 = commutator(x(1), x(2))
C34 = commutator(x(3), x(4))
C13 = commutator(x(1), x(3))


@pytest.mark.parametrize(
    "w,level",
    [
        (identity(RANK), 10),
        (x(1), 0),
        (x(1) * x(2) * x(1).inverse(), 0),
        (C12, 1),
        (C12 * C34, 1),
        (commutator(C12, C34), 2),
        (commutator(C12, C13), 2),
        (commutator(commutator(C12, C34), commutator(C13, C12)), 3),
    ],
)
def test_derived_levels(w, level):
    for k in range(0, min(level, 3) + 1):
        assert derived_membership(w, k)
    if level < 3:
        assert not derived_membership(w, level + 1)


def test_membership_consistent_with_s4_images():
    # F^(k) maps into the k-th derived subgroup of S4 under every homomorphism
    rng = random.Random(11)
    pool = [C12, C34, C13, x(1), x(2) * x(3)]
    for _ in range(12):
        a, b = rng.sample(pool[:8], 2)
        pool.append(commutator(a, b))
    samples = pool + [commutator(rng.choice(pool[5:]), rng.choice(pool[5:])) for _ in range(6)]
    for w in samples:
        k = next(k for k in (3, 2, 1, 0) if derived_membership(w, k))
        for _ in range(25):
            imgs = [rng.choice(S4_ELEMENTS) for _ in range(RANK)]
            assert s4_derived_level(s4_image(w.letters(), imgs)) >= min(k, 3)


def test_s4_witnesses_non_membership():
    # [x1,x2] is not in F^(2): some map to S4 sends it outside V4
    imgs = [Permutation([1, 0, 2, 3]), Permutation([0, 2, 1, 3]), Permutation(3), Permutation(3)]
    assert s4_derived_level(s4_image(C12.letters(), imgs)) == 1
    assert not derived_membership(C12, 2)


def test_random_words_membership_matches_abelianization():
    rng = random.Random(5)
    for _ in range(100):
        w = reduce(random_letters(rng, RANK, 20), RANK)
        from concordance.words import abelianize

        assert derived_membership(w, 1) == (not any(abelianize(w)))


def test_budget_exceeded():
    w = commutator(commutator(C12, C34), commutator(C13, C12))
    w = commutator(w, conjugate(w, x(2)))
    with pytest.raises(BudgetExceeded):
        derived_membership(w, 4, budget=50)
    with pytest.raises(ValueError):
        derived_membership(w, -1)
