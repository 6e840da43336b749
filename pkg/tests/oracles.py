"""Independent reference computations used by the test suite.

Nothing here imports the package's algorithms; helpers only build inputs
or recompute quantities from first principles.
"""

from __future__ import annotations

import random
from fractions import Fraction

import numpy as np
import sympy
from sympy.combinatorics import Permutation
from sympy.combinatorics.named_groups import SymmetricGroup


def naive_reduce(letters):
    """Free reduction of a signed-letter list with an explicit stack."""
    out = []
    for a in letters:
        if out and out[-1] == -a:
            out.pop()
        else:
            out.append(a)
    return out


def random_letters(rng: random.Random, rank: int, max_len: int):
    n = rng.randint(0, max_len)
    return [rng.choice([1, -1]) * rng.randint(1, rank) for _ in range(n)]


def letters_to_text(letters) -> str:
    return " ".join(f"x{abs(a)}" if a > 0 else f"x{abs(a)}^-1" for a in letters)


# finite solvable test group --------------------------------------------------

_S4 = SymmetricGroup(4)
S4_DERIVED = _S4.derived_series()  # S4 > A4 > V4 > 1
S4_ELEMENTS = list(_S4.generate())


def s4_image(letters, images):
    out = Permutation(list(range(4)))
    for a in letters:
        p = images[abs(a) - 1]
        out = out * (p if a > 0 else ~p)
    return out


def s4_derived_level(perm) -> int:
    """Largest k with perm in the k-th derived subgroup of S4 (3 for the identity)."""
    level = 0
    for k, grp in enumerate(S4_DERIVED):
        if grp.contains(perm):
            level = k
    return level


# linear algebra ---------------------------------------------------------------


def fraction_det(m) -> Fraction:
    """Determinant by Gaussian elimination over Q."""
    a = [[Fraction(x) for x in row] for row in m]
    n = len(a)
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        det *= a[c][c]
        for r in range(c + 1, n):
            f = a[r][c] / a[c][c]
            if f:
                for k in range(c, n):
                    a[r][k] -= f * a[c][k]
    return det


def alexander_by_interpolation(v):
    """Coefficients of det(tV - V^T), shifted to start at t^0 with positive lead."""
    n = len(v)
    pts = list(range(2, n + 3))
    vals = [fraction_det([[t * v[i][j] - v[j][i] for j in range(n)] for i in range(n)]) for t in pts]
    t = sympy.Symbol("t")
    poly = sympy.Poly(sympy.interpolate(list(zip(pts, vals)), t), t) if n else sympy.Poly(1, t)
    coeffs = [int(c) for c in reversed(poly.all_coeffs())]
    while coeffs and coeffs[0] == 0:
        coeffs.pop(0)
    if coeffs[-1] < 0:
        coeffs = [-c for c in coeffs]
    return coeffs


def numeric_signature(v, angle: float):
    """sigma at e^{i pi angle} from numpy eigenvalues; None when too close to singular."""
    m = np.array(v, dtype=float)
    if m.size == 0:
        return 0
    w = np.exp(1j * np.pi * angle)
    h = (1 - w) * m + (1 - np.conj(w)) * m.T
    eig = np.linalg.eigvalsh(h)
    if np.min(np.abs(eig)) < 1e-7:
        return None
    return int(np.sum(eig > 0) - np.sum(eig < 0))


# random Seifert matrices ------------------------------------------------------


def random_unimodular(rng: random.Random, n: int, steps: int = 12):
    p = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(steps if n > 1 else 0):
        i, j = rng.sample(range(n), 2)
        c = rng.choice([-1, 1])
        for k in range(n):
            p[i][k] += c * p[j][k]
    return p


def congruence(p, v):
    n = len(v)
    pv = [[sum(p[i][k] * v[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
    return [[sum(pv[i][k] * p[j][k] for k in range(n)) for j in range(n)] for i in range(n)]


def random_seifert(rng: random.Random, genus: int, spread: int = 2, scramble: bool = True):
    """V = Sym + J_upper has V - V^T standard symplectic; then P V P^T."""
    n = 2 * genus
    v = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            x = rng.randint(-spread, spread)
            v[i][j] += x
            if i != j:
                v[j][i] += x
    for b in range(genus):
        v[2 * b][2 * b + 1] += 1
    if scramble:
        v = congruence(random_unimodular(rng, n), v)
    return v


def block_sum(a, b):
    n, m = len(a), len(b)
    return [list(r) + [0] * m for r in a] + [[0] * n + list(r) for r in b]
