import itertools
import random

import pytest

from concordance.fox import derived_membership, p_factor
from concordance.ring import (
    FreeAbelian,
    FreeGroup,
    GroupHom,
    abelianization,
    apply_hom,
    identity_hom,
    projection,
    trivial_hom,
)
from concordance.tuples import (
    NoSpecialTuple,
    children_per_parent,
    expected_count,
    find_special_tuple,
    generate_P,
    good_matrix,
    is_good,
    slot_choices,
)
from concordance.words import commutator, conjugate, generator

G = 2
RANK = 4


def x(i):
    return generator(i, RANK)


def brute_force_P(n):
    """P_n straight from the recursive definition, as a list of word tuples."""
    if n == 0:
        return [tuple(x(i) for i in range(1, RANK + 1))]
    if n == 1:
        return [tuple(commutator(x(i), x(j)) for j in range(1, RANK + 1) if j != i) for i in range(1, RANK + 1)]
    out = []
    for parent in brute_force_P(n - 1):
        options = []
        for i, w in enumerate(parent, start=1):
            row = [commutator(w, conjugate(w, x(j))) for j in range(1, RANK + 1) if j != i]
            row += [commutator(w, parent[k - 1]) for k in range(1, RANK) if k != i]
            options.append(row)
        out.extend(itertools.product(*options))
    return out


@pytest.mark.parametrize("n,count", [(0, 1), (1, 4), (2, 500)])
def test_counts_and_contents(n, count):
    got = [t.words for t in generate_P(G, n)]
    assert len(got) == count == expected_count(G, n) == len(generate_P(G, n))
    assert got == brute_force_P(n)


def test_counting_formula():
    assert children_per_parent(2) == 125
    assert children_per_parent(1) == 1
    assert [len(slot_choices(3, s)) for s in range(1, 6)] == [9] * 5
    # genus 1: a single slot with one choice
    assert [len(t) for t in generate_P(1, 3)] == [1, 1]


def test_tuple_sizes():
    assert len(next(iter(generate_P(G, 0)))) == 2 * G
    for n in (1, 2):
        assert all(len(t) == 2 * G - 1 for t in generate_P(G, n))


def test_membership():
    for n in (0, 1):
        for t in generate_P(G, n):
            assert all(derived_membership(w, n) for w in t.words)
    level2 = list(generate_P(G, 2))
    for t in random.Random(1).sample(level2, 30):
        assert all(derived_membership(w, 2) for w in t.words)


def test_pedigree_json():
    t = list(generate_P(G, 2))[7]
    doc = t.to_json()
    assert doc["level"] == 2
    assert len(doc["words"]) == 3
    assert doc["pedigrees"][0]["parent"]["rule"] == "base"


def test_order_permutes_basis():
    t = next(iter(generate_P(G, 1, order=(2, 1, 4, 3))))
    assert [str(w) for w in t.words] == ["x2 x1 x2^-1 x1^-1", "x2 x4 x2^-1 x4^-1", "x2 x3 x2^-1 x3^-1"]
    with pytest.raises(ValueError):
        generate_P(G, 1, order=(1, 1, 2, 3))


BASE = tuple(commutator(x(4), x(j)) for j in (1, 2, 3))


def test_base_case_diagonal():
    m = good_matrix(BASE, abelianization(RANK), 1)
    assert m.is_diagonal()
    assert all(m.entries[i][i].to_text() == "+1*t4^-1 -1*1" for i in range(3))
    assert is_good(BASE, abelianization(RANK), 1)


def test_trivial_generator_image_is_not_good():
    r = GroupHom(FreeGroup(RANK), FreeAbelian(RANK), ((1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 0)))
    assert not is_good(BASE, r, 1)
    assert all(e.is_zero() for row in good_matrix(BASE, r, 1).entries for e in row)


def test_trivial_hom_gives_zero_matrix():
    for t in list(generate_P(G, 2))[:5]:
        m = good_matrix(t, trivial_hom(RANK, 2), 2)
        assert all(e.is_zero() for row in m.entries for e in row)
        assert not is_good(t, trivial_hom(RANK, 2), 2)


def test_level_zero_identity():
    p0 = next(iter(generate_P(G, 0)))
    m = good_matrix(p0, abelianization(RANK), 0)
    assert m.size == RANK
    assert [[e.to_text() for e in row] for row in m.entries] == [
        ["+1*1" if i == j else "0" for j in range(RANK)] for i in range(RANK)
    ]


def test_repeated_column_not_good():
    assert not is_good((BASE[0], BASE[0], BASE[2]), abelianization(RANK), 1)


def test_is_good_refuses_nonabelian():
    with pytest.raises(ValueError):
        is_good(BASE, projection(RANK, 3), 2)


def test_case_one_columns_factor():
    r = abelianization(RANK)
    parent = list(generate_P(G, 1))[3]
    cursor = generate_P(G, 2)
    child = cursor.child(parent, [("conjugate", 4)] * 3)
    h = projection(RANK, 1)
    pm, cm = good_matrix(parent, r, 2), good_matrix(child, r, 2)
    for i, w in enumerate(parent.words):
        factor = apply_hom(h, p_factor(w, x(4)))
        for a in range(3):
            assert cm.entries[a][i] == pm.entries[a][i] * factor


def test_child_rejects_bad_choice():
    parent = next(iter(generate_P(G, 1)))
    with pytest.raises(ValueError):
        generate_P(G, 2).child(parent, [("conjugate", 1)] * 3)


def test_special_base_case():
    s = find_special_tuple(abelianization(RANK), 1)
    assert s.tuple.words == BASE
    assert s.certificate["pivot_generator"] == 4
    assert s.certificate["good"] is True
    assert all(d["nonzero"] for d in s.certificate["levels"][0]["diagonal"])


def test_special_level_zero_and_trivial():
    s = find_special_tuple(abelianization(RANK), 0)
    assert s.tuple.words == tuple(x(i) for i in range(1, RANK + 1))
    with pytest.raises(NoSpecialTuple):
        find_special_tuple(trivial_hom(RANK, 2), 1)


def test_special_pivot_reorders():
    r = GroupHom(FreeGroup(RANK), FreeAbelian(1), ((0,), (1,), (0,), (0,)))
    s = find_special_tuple(r, 1)
    assert s.order == (1, 3, 4, 2)
    assert s.certificate["good"] is True
    assert is_good(s.tuple, r, 1, s.order)


@pytest.mark.parametrize("n", [2, 3])
def test_special_over_free_target(n):
    s = find_special_tuple(identity_hom(FreeGroup(RANK)), n)
    cert = s.certificate
    assert cert["good"] is True and cert["decided_by"] == "factorization"
    for lvl in cert["levels"][1:]:
        assert all(sl["identity_in_ZF"] and sl["factor_nonzero"] for sl in lvl["slots"])
    assert all(derived_membership(w, n) for w in s.tuple.words)


def test_special_case_two_branch():
    r = GroupHom(FreeGroup(RANK), FreeGroup(RANK), (x(1), x(2), generator(1, RANK) ** 0, x(4)))
    s = find_special_tuple(r, 2)
    slots = s.certificate["levels"][1]["slots"]
    assert [sl["case"] for sl in slots] == [1, 1, 2]
    assert slots[2]["companion_vanishes"] and slots[2]["identity_in_ZF"]
    assert s.certificate["good"] is True


def test_dead_tuple_is_reported():
    with pytest.raises(NoSpecialTuple):
        find_special_tuple(abelianization(RANK), 2)
