import random

import pytest
import sympy

from concordance.knot import (
    AlexanderPolynomial,
    SeifertMatrix,
    alexander,
    arf,
    connected_sum,
    connected_sum_power,
    degree_gate,
    diagonal_blocks,
    int_determinant,
    left_trefoil,
    localized_presentation,
    mirror_reverse,
    right_trefoil,
    unknot,
)
from concordance.ring import FreeAbelian, determinant
from oracles import alexander_by_interpolation, block_sum, fraction_det, random_seifert

FIGURE_EIGHT = SeifertMatrix(((1, 1), (0, -1)))


def test_trefoil():
    assert alexander(right_trefoil()).coefficients == (1, -1, 1)
    assert str(alexander(right_trefoil())) == "t^2 - t + 1"
    assert alexander(left_trefoil()) == alexander(right_trefoil())
    assert arf(right_trefoil()) == 1
    assert arf(connected_sum(right_trefoil(), right_trefoil())) == 0
    assert arf(connected_sum(right_trefoil(), left_trefoil())) == 0


def test_unknot_and_figure_eight():
    assert alexander(unknot()).coefficients == (1,)
    assert arf(unknot()) == 0
    assert alexander(FIGURE_EIGHT).coefficients == (1, -3, 1)
    assert arf(FIGURE_EIGHT) == 1


def test_alexander_str():
    assert str(AlexanderPolynomial((2, -5, 2))) == "2t^2 - 5t + 2"
    assert str(AlexanderPolynomial((1,))) == "1"


def test_validation():
    with pytest.raises(ValueError):
        SeifertMatrix(((1,),))
    with pytest.raises(ValueError):
        SeifertMatrix(((1, 0), (0, 1)))
    with pytest.raises(ValueError):
        SeifertMatrix(((1, 2), (0, 1)))
    with pytest.raises(ValueError):
        SeifertMatrix.from_json({"genus": 2, "matrix": [[-1, 1], [0, -1]]})
    with pytest.raises(ValueError):
        SeifertMatrix.from_json({"genus": 1})


def test_json_round_trip():
    v = connected_sum(right_trefoil(), FIGURE_EIGHT)
    assert SeifertMatrix.from_json(v.to_json()) == v
    assert v.to_json()["genus"] == 2


def test_int_determinant_matches_fractions():
    rng = random.Random(4)
    for n in range(0, 7):
        for _ in range(10):
            m = [[rng.randint(-4, 4) for _ in range(n)] for _ in range(n)]
            assert int_determinant(m) == fraction_det(m)


def test_presentation_entries_degree_one():
    v = random_seifert(random.Random(9), 2)
    pres = localized_presentation(SeifertMatrix(v))
    for row in pres:
        for e in row:
            assert all(k[0] in (0, 1) for k in e.terms())


def test_matches_sympy_determinant():
    t = sympy.Symbol("t")
    rng = random.Random(8)
    for g in (1, 2, 3):
        v = random_seifert(rng, g)
        m = sympy.Matrix(2 * g, 2 * g, lambda i, j: t * v[i][j] - v[j][i])
        poly = sympy.Poly(m.det(), t)
        coeffs = [int(c) for c in reversed(poly.all_coeffs())]
        while coeffs[0] == 0:
            coeffs.pop(0)
        if coeffs[-1] < 0:
            coeffs = [-c for c in coeffs]
        assert list(alexander(SeifertMatrix(v)).coefficients) == coeffs


def test_random_matrices_symmetry_and_normalization():
    rng = random.Random(10)
    for _ in range(60):
        v = random_seifert(rng, rng.randint(1, 3))
        d = alexander(SeifertMatrix(v))
        c = d.coefficients
        assert c == tuple(reversed(c))
        assert d(1) in (1, -1)
        assert list(c) == alexander_by_interpolation(v)


def test_block_decomposition():
    v = connected_sum(connected_sum(right_trefoil(), FIGURE_EIGHT), right_trefoil())
    blocks = diagonal_blocks(v)
    assert [(b.entries, m) for b, m in blocks] == [(right_trefoil().entries, 2), (FIGURE_EIGHT.entries, 1)]
    # a scrambled sum is a single block but has the same polynomial
    rng = random.Random(3)
    a, b = random_seifert(rng, 1), random_seifert(rng, 2)
    whole = SeifertMatrix(block_sum(a, b))
    expect = sympy.Poly(sympy.Poly(list(reversed(alexander(SeifertMatrix(a)).coefficients)), sympy.Symbol("t"))
                        * sympy.Poly(list(reversed(alexander(SeifertMatrix(b)).coefficients)), sympy.Symbol("t")))
    assert list(reversed(alexander(whole).coefficients)) == [int(c) for c in expect.all_coeffs()]


def test_connected_sum_power():
    v = connected_sum_power(left_trefoil(), 5)
    assert v.size == 10
    assert alexander(v).degree == 10
    assert arf(v) == 1
    assert arf(connected_sum_power(left_trefoil(), 4)) == 0
    assert connected_sum_power(left_trefoil(), 0) == unknot()


def test_mirror_reverse():
    assert mirror_reverse(mirror_reverse(FIGURE_EIGHT)) == FIGURE_EIGHT
    assert mirror_reverse(right_trefoil()) == left_trefoil()


def test_degree_gate():
    assert degree_gate(right_trefoil(), 1)
    assert not degree_gate(right_trefoil(), 2)
    assert not degree_gate(unknot(), 1)
    granny = connected_sum(right_trefoil(), right_trefoil())
    assert degree_gate(granny, 2) and degree_gate(granny, 5)
    with pytest.raises(ValueError):
        degree_gate(granny, 0)


def test_alexander_via_ring_determinant():
    v = random_seifert(random.Random(12), 2)
    det = determinant(localized_presentation(SeifertMatrix(v)), FreeAbelian(1))
    coeffs = [det.terms().get((e,), 0) for e in range(0, 5)]
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    while coeffs and coeffs[0] == 0:
        coeffs.pop(0)
    if coeffs[-1] < 0:
        coeffs = [-c for c in coeffs]
    assert tuple(coeffs) == alexander(SeifertMatrix(v)).coefficients
