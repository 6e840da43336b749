"""Dense univariate polynomials over Z and Q.

Coefficient lists run from the constant term upward. Integer inputs stay
integers where the operation allows it; division works over Q with
:class:`fractions.Fraction`.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb, gcd, lcm

__all__ = [
    "cyclotomic",
    "divides",
    "evaluate",
    "half_angle_transform",
    "isolate_positive_roots",
    "pdivmod",
    "pmul",
    "refine_root",
    "squarefree",
    "sturm_sequence",
    "trim",
]


def trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def degree(p) -> int:
    return len(trim(p)) - 1


def evaluate(p, x):
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def padd(a, b):
    n = max(len(a), len(b))
    return trim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])


def pscale(a, c):
    return trim([x * c for x in a])


def pmul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return trim(out)


def pdivmod(a, b):
    """Quotient and remainder over Q."""
    a, b = trim(a), trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    r = [Fraction(x) for x in a]
    lead = Fraction(b[-1])
    while len(r) >= len(b) and r:
        shift = len(r) - len(b)
        c = r[-1] / lead
        q[shift] = c
        for i, y in enumerate(b):
            r[shift + i] -= c * y
        r = trim(r)
    return trim(q), r


def divides(b, a) -> bool:
    return not pdivmod(a, b)[1]


def exact_quotient(a, b):
    """``a / b`` for an exact division of integer polynomials."""
    q, r = pdivmod(a, b)
    if r:
        raise ValueError("division is not exact")
    out = []
    for c in q:
        if c.denominator != 1:
            raise ValueError("quotient is not integral")
        out.append(int(c))
    return out


def derivative(p):
    return trim([i * p[i] for i in range(1, len(p))])


def monic(p):
    p = trim(p)
    lead = Fraction(p[-1])
    return [Fraction(c) / lead for c in p]


def pgcd(a, b):
    a, b = trim(a), trim(b)
    while b:
        a, b = b, pdivmod(a, b)[1]
    return monic(a) if a else []


def squarefree(p):
    """Squarefree part of p (over Q, primitive integer representative)."""
    g = pgcd(p, derivative(p))
    q = pdivmod(p, g)[0] if len(g) > 1 else [Fraction(c) for c in p]
    return _primitive(q)


def _primitive(p):
    den = 1
    for c in p:
        den = lcm(den, Fraction(c).denominator)
    ints = [int(Fraction(c) * den) for c in p]
    g = 0
    for c in ints:
        g = gcd(g, c)
    ints = [c // g for c in ints] if g else ints
    if ints and ints[-1] < 0:
        ints = [-c for c in ints]
    return ints


@lru_cache(maxsize=None)
def cyclotomic(m: int) -> tuple:
    """Integer coefficients of the m-th cyclotomic polynomial."""
    num = [-1] + [0] * (m - 1) + [1]
    for d in range(1, m):
        if m % d == 0:
            num = exact_quotient(num, list(cyclotomic(d)))
    return tuple(num)


def half_angle_transform(palindromic):
    """Integer polynomial Q(s) whose positive roots parametrize the upper-half-circle roots.

    For a palindromic p of degree 2d, ``t = (1 + i s)^2 / (1 + s^2)`` maps
    s in (0, inf) onto the open upper unit semicircle, and
    ``Q(s) = (1 + s^2)^d * t^-d * p(t)`` is a real integer polynomial.
    """
    p = trim(palindromic)
    n = len(p) - 1
    if n % 2 or any(p[i] != p[n - i] for i in range(n + 1)):
        raise ValueError("expected a palindromic polynomial of even degree")
    d = n // 2
    one_plus_s2 = [1, 0, 1]

    def power(base, e):
        out = [1]
        for _ in range(e):
            out = pmul(out, base)
        return out

    q = pscale(power(one_plus_s2, d), p[d])
    for j in range(1, d + 1):
        c = p[d + j]
        if not c:
            continue
        # 2 Re((1 + i s)^(2j))
        re = [0] * (2 * j + 1)
        for m in range(0, 2 * j + 1, 2):
            re[m] = 2 * comb(2 * j, m) * (-1) ** (m // 2)
        q = padd(q, pscale(pmul(re, power(one_plus_s2, d - j)), c))
    return q


def sturm_sequence(p):
    seq = [[Fraction(c) for c in trim(p)]]
    nxt = [Fraction(c) for c in derivative(p)]
    while nxt:
        seq.append(nxt)
        r = pdivmod(seq[-2], seq[-1])[1]
        nxt = [-c for c in r]
    return seq


def _variations(values) -> int:
    signs = [v > 0 for v in values if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _var_at(seq, x) -> int:
    return _variations([evaluate(s, x) for s in seq])


def _var_at_inf(seq) -> int:
    return _variations([s[-1] for s in seq])


def _cauchy_bound(p) -> Fraction:
    lead = abs(Fraction(p[-1]))
    return 1 + max(abs(Fraction(c)) for c in p[:-1]) / lead if len(p) > 1 else Fraction(1)


def _avoid_root(p, a, b):
    """A rational point strictly inside (a, b) that is not a root of p."""
    for num, den in ((1, 2), (1, 3), (2, 3), (1, 5), (4, 5), (2, 7), (5, 7)):
        x = a + (b - a) * num / den
        if evaluate(p, x) != 0:
            return x
    raise ArithmeticError("could not find a non-root split point")


def isolate_positive_roots(p):
    """Disjoint rational intervals ``(a, b)`` each holding exactly one positive root of a squarefree p.

    Endpoints are never roots; intervals are returned in increasing order.
    """
    p = trim(p)
    if len(p) <= 1:
        return []
    if p[0] == 0:
        raise ValueError("p(0) = 0; strip the factor s first")
    seq = sturm_sequence(p)
    hi = _cauchy_bound(p)
    if evaluate(p, hi) == 0:
        hi += 1
    total = _var_at(seq, 0) - _var_at(seq, hi)
    out = []
    stack = [(Fraction(0), Fraction(hi), total)]
    while stack:
        a, b, n = stack.pop()
        if n == 0:
            continue
        if n == 1:
            out.append((a, b))
            continue
        mid = _avoid_root(p, a, b)
        left = _var_at(seq, a) - _var_at(seq, mid)
        stack.append((mid, b, n - left))
        stack.append((a, mid, left))
    return sorted(out)


def refine_root(p, a, b):
    """Halve an isolating interval of a squarefree p (sign change on (a, b))."""
    fa = evaluate(p, a)
    mid = _avoid_root(p, a, b)
    fm = evaluate(p, mid)
    if (fa > 0) != (fm > 0):
        return a, mid
    return mid, b
