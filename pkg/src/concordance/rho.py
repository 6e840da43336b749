"""Levine-Tristram signatures and the abelian rho-invariant.

Angles are measured in units of pi, so the unit circle is [0, 2) and the
point omega = e^{i pi a} has angle ``a``. The signature function is
``sigma(omega) = sign((1 - omega) V + (1 - conj(omega)) V^T)``; it is
locally constant away from the unit-circle roots of the Alexander
polynomial and symmetric under complex conjugation.

Every signature is evaluated exactly at a Gaussian-rational point of the
circle ``omega(s) = (1 + i s)^2 / (1 + s^2)`` with rational ``s``, so no
floating-point sign decision is ever made. Roots of unity among the jumps
are found exactly through cyclotomic factors; any other jump is isolated
by Sturm sequences and converted to a certified angle interval.

``rho_z`` is the integral of sigma over the circle with total mass 1. It
is the bare integral: no 4-manifold signature correction is subtracted.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

import mpmath
from mpmath import libmp

from . import poly
from .knot import SeifertMatrix, _alexander_block, diagonal_blocks

__all__ = [
    "Angle",
    "Arc",
    "Jump",
    "RhoValue",
    "SignatureProfile",
    "hermitian_signature",
    "levine_tristram",
    "rho_z",
    "riemann_rho",
    "signature_at_parameter",
    "signature_profile",
]

_PREC = 120


@dataclass(frozen=True)
class Angle:
    """A point of [0, 2] (units of pi), exact when ``lo == hi``."""

    lo: Fraction
    hi: Fraction

    @classmethod
    def exact(cls, x) -> Angle:
        x = Fraction(x)
        return cls(x, x)

    @property
    def is_exact(self) -> bool:
        return self.lo == self.hi

    def mirror(self) -> Angle:
        return Angle(2 - self.hi, 2 - self.lo)

    def __str__(self) -> str:
        if self.is_exact:
            return str(self.lo)
        return f"[{self.lo},{self.hi}]"


@dataclass
class Jump:
    """A unit-circle root of Delta in the open upper half circle.

    ``order`` is m when the root is a primitive m-th root of unity (then the
    angle is exact). Otherwise ``factor`` and ``interval`` keep the data
    needed to tighten the angle on demand.
    """

    angle: Angle
    order: int | None = None
    factor: list | None = field(default=None, repr=False)
    interval: tuple | None = field(default=None, repr=False)

    def refine(self) -> None:
        if self.angle.is_exact:
            return
        a, b = poly.refine_root(self.factor, *self.interval)
        self.interval = (a, b)
        self.angle = _angle_of_interval(a, b)


@dataclass(frozen=True)
class Arc:
    start: Angle
    end: Angle
    signature: int


@dataclass(frozen=True)
class RhoValue:
    """Exact rational (``lo == hi``) or a certified enclosing interval."""

    lo: Fraction
    hi: Fraction

    @property
    def exact(self) -> bool:
        return self.lo == self.hi

    @property
    def value(self) -> Fraction:
        return self.lo if self.exact else (self.lo + self.hi) / 2

    def to_json(self) -> dict:
        if self.exact:
            return {"exact": True, "value": _frac_str(self.lo)}
        return {"exact": False, "lo": _frac_str(self.lo), "hi": _frac_str(self.hi), "value": _frac_str(self.value)}


def _frac_str(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


# exact signatures -------------------------------------------------------------


def _symmetric_signature(m) -> tuple[int, int]:
    """(signature, nullity) of a rational symmetric matrix by congruence."""
    a = [[Fraction(x) for x in row] for row in m]
    pos = neg = 0
    while a:
        n = len(a)
        piv = next((i for i in range(n) if a[i][i] != 0), None)
        if piv is None:
            pair = next(((i, j) for i in range(n) for j in range(i + 1, n) if a[i][j] != 0), None)
            if pair is None:
                break
            i, j = pair
            # row/col i += row/col j makes the (i, i) entry 2 a[i][j] != 0
            for k in range(n):
                a[i][k] += a[j][k]
            for k in range(n):
                a[k][i] += a[k][j]
            piv = i
        p = a[piv][piv]
        if p > 0:
            pos += 1
        else:
            neg += 1
        col = [a[k][piv] for k in range(n)]
        rest = [k for k in range(n) if k != piv]
        a = [[a[r][c] - col[r] * col[c] / p for c in rest] for r in rest]
    return pos - neg, len(a)


def hermitian_signature(re, im) -> tuple[int, int]:
    """(signature, nullity) of the Hermitian matrix ``re + i im``.

    Uses the real symmetric realization ``[[re, -im], [im, re]]``, whose
    inertia is twice that of the Hermitian matrix.
    """
    n = len(re)
    big = [[0] * (2 * n) for _ in range(2 * n)]
    for i in range(n):
        for j in range(n):
            big[i][j] = re[i][j]
            big[n + i][n + j] = re[i][j]
            big[i][n + j] = -im[i][j]
            big[n + i][j] = im[i][j]
    sig, null = _symmetric_signature(big)
    return sig // 2, null // 2


def _lt_matrix(v: SeifertMatrix, p, q, r):
    """Scaled Levine-Tristram form at omega = (p + i q) / r, r > 0.

    ``r * ((1 - w) V + (1 - conj w) V^T) = (r - p)(V + V^T) + i q (V^T - V)``.
    """
    e = v.entries
    n = v.size
    re = [[(r - p) * (e[i][j] + e[j][i]) for j in range(n)] for i in range(n)]
    im = [[q * (e[j][i] - e[i][j]) for j in range(n)] for i in range(n)]
    return re, im


def _form_signature(v: SeifertMatrix, p, q, r) -> tuple[int, int]:
    # signature and nullity add over orthogonal summands
    sig = null = 0
    for block, mult in diagonal_blocks(v):
        bs, bn = hermitian_signature(*_lt_matrix(block, p, q, r))
        sig += mult * bs
        null += mult * bn
    return sig, null


def signature_at_parameter(v: SeifertMatrix, s) -> int:
    """sigma at the Gaussian-rational point ``omega(s)``, s rational (s >= 0: upper half)."""
    s = Fraction(s)
    u, w = s.numerator, s.denominator
    p, q, r = w * w - u * u, 2 * u * w, w * w + u * u
    sig, null = _form_signature(v, p, q, r)
    if null:
        raise ValueError(f"omega(s) with s={s} is a root of the Alexander polynomial")
    return sig


# jump isolation ---------------------------------------------------------------


def _angle_of_interval(a: Fraction, b: Fraction) -> Angle:
    """Certified angle interval of omega(s) for s in [a, b]: angle = 2 atan(s) / pi."""
    iv = mpmath.iv
    old = iv.prec
    iv.prec = _PREC
    try:
        lo = iv.atan2(iv.mpf(a.numerator) / a.denominator, iv.mpf(1)) * 2 / iv.pi
        hi = iv.atan2(iv.mpf(b.numerator) / b.denominator, iv.mpf(1)) * 2 / iv.pi
        lo_a = Fraction(*libmp.to_rational(lo._mpi_[0]))
        hi_b = Fraction(*libmp.to_rational(hi._mpi_[1]))
    finally:
        iv.prec = old
    return Angle(lo_a, hi_b)


def _parameter_for_angle(a: Fraction, b: Fraction) -> Fraction:
    """A rational s with angle(omega(s)) strictly inside (a, b), 0 <= a < b <= 1."""
    # the last gap ends at omega = -1, i.e. s = infinity
    x = _tan_half_turn((a + b) / 2) if b < 1 else 2 * _tan_half_turn(a) + 1
    for digits in range(2, 60, 2):
        s = x.limit_denominator(10**digits)
        ang = _angle_of_interval(s, s)
        if a < ang.lo and ang.hi < b:
            return s
    raise ArithmeticError("could not place a sample point inside the arc")


def _strip_cyclotomic(coeffs):
    """Split Delta into exact cyclotomic orders and the remaining factor."""
    rest = list(coeffs)
    d = len(rest) - 1
    orders = []
    m = 3
    # phi(m) >= sqrt(m / 2), so any cyclotomic factor has m <= 2 d^2
    while m <= max(2 * d * d, 3):
        cyc = list(poly.cyclotomic(m))
        if len(cyc) - 1 <= len(rest) - 1 and poly.divides(cyc, rest):
            orders.append(m)
            while len(cyc) - 1 <= len(rest) - 1 and poly.divides(cyc, rest):
                rest = poly.exact_quotient(rest, cyc)
        m += 1
    return orders, rest


def _find_jumps(coeffs) -> list[Jump]:
    orders, rest = _strip_cyclotomic(coeffs)
    jumps = []
    for m in orders:
        for k in range(1, m):
            if gcd(k, m) == 1 and 2 * k < m:
                jumps.append(Jump(Angle.exact(Fraction(2 * k, m)), order=m))
    if len(rest) > 1:
        if rest[-1] < 0:
            rest = [-c for c in rest]
        q = poly.squarefree(poly.half_angle_transform(rest))
        for a, b in poly.isolate_positive_roots(q):
            jumps.append(Jump(_angle_of_interval(a, b), factor=q, interval=(a, b)))
    _separate(jumps)
    jumps.sort(key=lambda j: j.angle.lo)
    return jumps


def _separate(jumps: list[Jump]) -> None:
    """Refine inexact jumps until their angle intervals are pairwise disjoint
    and lie strictly inside (0, 1)."""
    for j in jumps:
        while not (0 < j.angle.lo and j.angle.hi < 1):
            j.refine()
    while True:
        ordered = sorted(jumps, key=lambda j: (j.angle.lo, j.angle.hi))
        clash = None
        for x, y in zip(ordered, ordered[1:]):
            if x.angle.hi >= y.angle.lo:
                clash = (x, y)
                break
        if clash is None:
            return
        for j in clash:
            j.refine()


# profile ----------------------------------------------------------------------


@dataclass
class SignatureProfile:
    """Piecewise-constant signature function on the circle.

    ``jumps`` are the unit-circle roots of Delta in the open upper half
    circle, in increasing angle. ``values[k]`` is sigma on the gap between
    jump k-1 and jump k (gap 0 starts at angle 0, the last gap ends at 1),
    evaluated exactly at the rational parameter ``samples[k]``.
    """

    matrix: SeifertMatrix
    jumps: list
    values: list
    samples: list

    @property
    def upper(self) -> list[Arc]:
        """Merged arcs of the closed upper half circle [0, 1]."""
        out: list[Arc] = []
        for idx, val in enumerate(self.values):
            start = Angle.exact(0) if idx == 0 else self.jumps[idx - 1].angle
            end = Angle.exact(1) if idx == len(self.jumps) else self.jumps[idx].angle
            if out and out[-1].signature == val:
                out[-1] = Arc(out[-1].start, end, val)
            else:
                out.append(Arc(start, end, val))
        return out

    @property
    def arcs(self) -> list[Arc]:
        """Arcs over the full circle [0, 2]; the arc through omega = -1 is merged with its mirror."""
        upper = self.upper
        mirrored = [Arc(a.end.mirror(), a.start.mirror(), a.signature) for a in reversed(upper)]
        last = upper[-1]
        return upper[:-1] + [Arc(last.start, mirrored[0].end, last.signature)] + mirrored[1:]

    def is_exact(self) -> bool:
        return all(a.start.is_exact and a.end.is_exact for a in self.upper)

    def bounds(self) -> tuple[Fraction, Fraction]:
        """Certified enclosure of rho_z from the current jump intervals."""
        # normalized full-circle integral = integral over [0, 1] in units of pi
        lo = hi = Fraction(self.values[-1])
        for k, jump in enumerate(self.jumps):
            step = self.values[k + 1] - self.values[k]
            if not step:
                continue
            a, b = -jump.angle.lo * step, -jump.angle.hi * step
            lo += min(a, b)
            hi += max(a, b)
        return lo, hi

    def refine(self) -> None:
        for k, jump in enumerate(self.jumps):
            if self.values[k + 1] != self.values[k]:
                jump.refine()

    def value_at(self, a: Fraction) -> int:
        """sigma at angle a in (0, 1); raises when a is a jump."""
        for jump in self.jumps:
            while not jump.angle.is_exact and jump.angle.lo <= a <= jump.angle.hi:
                jump.refine()
            if jump.angle.is_exact and jump.angle.lo == a:
                raise ValueError(f"angle {a}*pi is a root of the Alexander polynomial; sigma jumps there")
        return self.values[sum(1 for j in self.jumps if j.angle.hi < a)]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["angle_start", "angle_end", "signature"])
        for arc in self.arcs:
            w.writerow([str(arc.start), str(arc.end), arc.signature])
        return buf.getvalue()

    def to_json(self) -> dict:
        return {
            "exact": self.is_exact(),
            "jumps": [{"angle": str(j.angle), "root_of_unity_order": j.order} for j in self.jumps],
            "arcs": [{"start": str(a.start), "end": str(a.end), "signature": a.signature} for a in self.arcs],
        }


def signature_profile(v: SeifertMatrix) -> SignatureProfile:
    """Certified signature profile of V over the unit circle."""
    # the jump set only depends on the distinct roots of Delta
    radical = [1]
    for block, _ in diagonal_blocks(v):
        radical = poly.pmul(radical, _alexander_block(block))
    if len(radical) > 1:
        radical = poly.squarefree(radical)
    jumps = _find_jumps(radical)
    values, samples = [], []
    for idx in range(len(jumps) + 1):
        a = Fraction(0) if idx == 0 else jumps[idx - 1].angle.hi
        b = Fraction(1) if idx == len(jumps) else jumps[idx].angle.lo
        s = _parameter_for_angle(a, b)
        samples.append(s)
        values.append(signature_at_parameter(v, s))
    return SignatureProfile(v, jumps, values, samples)


def rho_z(v: SeifertMatrix, tolerance=Fraction(1, 10**9)) -> RhoValue:
    """Normalized integral of the signature function over the circle.

    Exact when every jump where sigma changes is a root of unity; otherwise
    an enclosing interval no wider than ``tolerance``.
    """
    tolerance = Fraction(tolerance)
    if tolerance <= 0:
        raise ValueError("tolerance must be positive")
    prof = signature_profile(v)
    lo, hi = prof.bounds()
    while hi - lo > tolerance:
        prof.refine()
        lo, hi = prof.bounds()
    return RhoValue(lo, hi)


def levine_tristram(v: SeifertMatrix, angle=None, *, omega=None) -> int:
    """sigma_omega(V), at ``omega = e^{i pi angle}`` (rational angle) or at an
    exact Gaussian-rational point ``omega = (re, im)`` with ``re^2 + im^2 = 1``."""
    if (angle is None) == (omega is None):
        raise ValueError("give exactly one of angle or omega")
    if omega is not None:
        re, im = Fraction(omega[0]), Fraction(omega[1])
        if re * re + im * im != 1:
            raise ValueError("omega is not on the unit circle")
        if re == 1:
            return 0
        den = re.denominator * im.denominator // gcd(re.denominator, im.denominator)
        p, q, r = int(re * den), int(im * den), den
        sig, null = _form_signature(v, p, q, r)
        if null:
            raise ValueError("omega is a root of the Alexander polynomial; sigma jumps there")
        return sig
    a = Fraction(angle) % 2
    if a == 0:
        return 0
    if a > 1:
        a = 2 - a
    prof = signature_profile(v)
    if a == 1:
        return prof.values[-1]
    return prof.value_at(a)


def _tan_half_turn(x: Fraction, prec: int = 200) -> Fraction:
    """Rational approximation of tan(pi x / 2)."""
    with mpmath.workprec(prec):
        t = mpmath.tan(mpmath.pi * mpmath.mpf(x.numerator) / x.denominator / 2)
        return Fraction(*libmp.to_rational(t._mpf_))


def riemann_rho(v: SeifertMatrix, samples: int = 10_000) -> Fraction:
    """Midpoint-rule estimate of rho_z from ``samples`` exact signature evaluations.

    Independent of the jump machinery: each sample is a Gaussian-rational
    point close to the midpoint angle, evaluated exactly.
    """
    total = 0
    half = samples // 2
    for k in range(half):
        mid = Fraction(2 * k + 1, samples)
        s = _tan_half_turn(mid, 80).limit_denominator(10**12)
        total += signature_at_parameter(v, s)
    return Fraction(total, half)
