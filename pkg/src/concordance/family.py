"""Infection schedules for a family of mutually distinct satellite knots.

A plan starts from a base knot (given by its Seifert matrix) and chooses
infection knots ``J^1, J^2, ...``, each a connected sum of an even number
of left-handed trefoils, so that

    rho(J^1) > 2 c_M,    rho(J^i) > 2 c_M + 2 m rho(J^(i-1))  (i >= 2),

with every inequality strict and checked in exact arithmetic. ``c_M`` is
an externally supplied bound and ``m`` the number of infection axes.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import floor

from .knot import BlockSum, SeifertMatrix, alexander_degree, arf, degree_gate, left_trefoil
from .rho import RhoValue, _frac_str, rho_z

__all__ = [
    "EpsilonVector",
    "FamilyPlan",
    "GapBound",
    "GateError",
    "PlanStep",
    "StepReport",
    "VerificationReport",
    "axes_lower_bound",
    "gap_lower_bound",
    "plan_family",
    "plan_from_infections",
    "verify_plan",
]

SUBSTITUTE_NOTE = (
    "any Arf-zero infection knot with the same rho_Z as the left-handed trefoil "
    "may replace each trefoil summand; every numeric certificate is unchanged"
)


class GateError(ValueError):
    """The base knot fails the Alexander-degree hypothesis for the requested level."""


@lru_cache(maxsize=1)
def trefoil_unit() -> Fraction:
    """rho_Z of one left-handed trefoil, computed from its signature profile."""
    val = rho_z(left_trefoil())
    if not val.exact:
        raise ArithmeticError("trefoil rho is expected to be exact")
    return val.value


def _parse_fraction(x, name: str) -> Fraction:
    try:
        return Fraction(x)
    except (TypeError, ValueError, ZeroDivisionError):
        raise ValueError(f"field '{name}' is not a rational number: {x!r}") from None


def _threshold(c_m: Fraction, m: int, previous: Fraction | None) -> Fraction:
    return 2 * c_m if previous is None else 2 * c_m + 2 * m * previous


def _minimal_even_copies(threshold: Fraction, unit: Fraction) -> int:
    n = floor(threshold / unit) + 1
    if n % 2:
        n += 1
    return max(n, 2)


@dataclass(frozen=True)
class PlanStep:
    """One infection knot: ``copies`` left trefoils, or an explicit matrix."""

    index: int
    rho: Fraction
    copies: int | None = None
    matrix: SeifertMatrix | None = None

    def infection(self) -> SeifertMatrix | BlockSum:
        """Seifert matrix of J^i; trefoil sums stay in block form."""
        if self.matrix is not None:
            return self.matrix
        if self.copies is None or self.copies < 0:
            raise ValueError(f"step {self.index}: copies must be a nonnegative integer")
        return BlockSum(((left_trefoil(), self.copies),))

    def to_json(self) -> dict:
        doc: dict = {"step": self.index}
        if self.matrix is not None:
            doc["matrix"] = [list(r) for r in self.matrix.entries]
        else:
            doc["copies"] = self.copies
        doc["rho"] = _frac_str(self.rho)
        return doc

    @classmethod
    def from_json(cls, doc: dict) -> PlanStep:
        if "step" not in doc or "rho" not in doc:
            raise ValueError("schedule entry needs fields 'step' and 'rho'")
        rho = _parse_fraction(doc["rho"], "schedule.rho")
        if "matrix" in doc:
            return cls(int(doc["step"]), rho, matrix=SeifertMatrix.from_json({"matrix": doc["matrix"]}))
        if "copies" not in doc or not isinstance(doc["copies"], int):
            raise ValueError("schedule entry needs an integer field 'copies' or a 'matrix'")
        return cls(int(doc["step"]), rho, copies=doc["copies"])


@dataclass(frozen=True)
class FamilyPlan:
    base: SeifertMatrix
    n: int
    m: int
    c_M: Fraction
    schedule: tuple[PlanStep, ...]
    certificates: tuple[dict, ...] = ()
    annotations: tuple[str, ...] = (SUBSTITUTE_NOTE,)

    def rho(self, i: int) -> Fraction:
        """Recorded rho of J^i; ``rho(0) == 0`` stands for no infection."""
        if i == 0:
            return Fraction(0)
        if not 1 <= i <= len(self.schedule):
            raise IndexError(f"step {i} outside 0..{len(self.schedule)}")
        return self.schedule[i - 1].rho

    def to_json(self) -> dict:
        return {
            "base": self.base.to_json(),
            "n": self.n,
            "m": self.m,
            "c_M": _frac_str(self.c_M),
            "schedule": [s.to_json() for s in self.schedule],
            "certificates": list(self.certificates),
            "annotations": list(self.annotations),
        }

    @classmethod
    def from_json(cls, doc: dict) -> FamilyPlan:
        for key in ("base", "n", "m", "c_M", "schedule"):
            if key not in doc:
                raise ValueError(f"missing field '{key}'")
        for key in ("n", "m"):
            if not isinstance(doc[key], int):
                raise ValueError(f"field '{key}' must be an integer")
        if not isinstance(doc["schedule"], list):
            raise ValueError("field 'schedule' must be a list")
        return cls(
            base=SeifertMatrix.from_json(doc["base"]),
            n=doc["n"],
            m=doc["m"],
            c_M=_parse_fraction(doc["c_M"], "c_M"),
            schedule=tuple(PlanStep.from_json(s) for s in doc["schedule"]),
            certificates=tuple(doc.get("certificates", ())),
            annotations=tuple(doc.get("annotations", ())),
        )


def _check_inputs(base: SeifertMatrix, n: int, m: int, c_m: Fraction) -> None:
    if m < 1:
        raise ValueError("number of axes m must be at least 1")
    if c_m <= 0:
        raise ValueError("c_M must be positive")
    if not degree_gate(base, n):
        d = alexander_degree(base)
        if d == 2 and n >= 2:
            raise GateError(
                f"base Alexander polynomial has degree 2; level n={n} needs degree > 2 "
                "(degree 2 is admissible only at n = 1, and the construction fails for n >= 2)"
            )
        need = "degree >= 2" if n == 1 else "degree > 2"
        raise GateError(f"base Alexander polynomial has degree {d}; level n={n} needs {need}")


def _certificate(i: int, threshold: Fraction, rho: Fraction) -> dict:
    lhs = "rho_1 > 2*c_M" if i == 1 else f"rho_{i} > 2*c_M + 2*m*rho_{i - 1}"
    return {
        "step": i,
        "inequality": lhs,
        "threshold": _frac_str(threshold),
        "rho": _frac_str(rho),
        "margin": _frac_str(rho - threshold),
    }


def plan_family(base: SeifertMatrix, n: int, m: int, c_M, count: int) -> FamilyPlan:
    """Greedy-minimal schedule: each J^i is the fewest even number of left
    trefoils that clears its strict threshold."""
    c_m = Fraction(c_M)
    _check_inputs(base, n, m, c_m)
    if count < 1:
        raise ValueError("count must be at least 1")
    unit = trefoil_unit()
    steps, certs = [], []
    prev = None
    for i in range(1, count + 1):
        t = _threshold(c_m, m, prev)
        copies = _minimal_even_copies(t, unit)
        rho = unit * copies
        steps.append(PlanStep(i, rho, copies=copies))
        certs.append(_certificate(i, t, rho))
        prev = rho
    return FamilyPlan(base, n, m, c_m, tuple(steps), tuple(certs))


def plan_from_infections(
    base: SeifertMatrix, n: int, m: int, c_M, infections: Sequence[tuple[SeifertMatrix, object]]
) -> FamilyPlan:
    """Plan with caller-chosen infection matrices and claimed rho values.

    Each claim is checked against a fresh rho computation and each matrix
    must have Arf invariant 0; the chain inequalities must hold.
    """
    c_m = Fraction(c_M)
    _check_inputs(base, n, m, c_m)
    if not infections:
        raise ValueError("at least one infection is required")
    steps = tuple(PlanStep(i, Fraction(r), matrix=v) for i, (v, r) in enumerate(infections, 1))
    plan = FamilyPlan(base, n, m, c_m, steps)
    report = verify_plan(plan)
    if not report.passed:
        bad = next(s for s in report.steps if not s.passed)
        raise ValueError(f"infection {bad.index} rejected: {'; '.join(bad.problems)}")
    certs = tuple(
        _certificate(s.index, s.threshold, steps[s.index - 1].rho) for s in report.steps
    )
    return FamilyPlan(base, n, m, c_m, steps, certs)


@dataclass
class StepReport:
    index: int
    copies: int | None
    recorded_rho: Fraction
    computed_rho: RhoValue
    arf: int
    threshold: Fraction
    problems: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.problems

    def to_json(self) -> dict:
        return {
            "step": self.index,
            "copies": self.copies,
            "rho_recorded": _frac_str(self.recorded_rho),
            "rho_computed": self.computed_rho.to_json(),
            "arf": self.arf,
            "threshold": _frac_str(self.threshold),
            "pass": self.passed,
            "problems": list(self.problems),
        }


@dataclass
class VerificationReport:
    gate: bool
    gate_message: str
    steps: list[StepReport]

    @property
    def passed(self) -> bool:
        return self.gate and all(s.passed for s in self.steps)

    def first_failure(self) -> int | None:
        return next((s.index for s in self.steps if not s.passed), None)

    def to_json(self) -> dict:
        return {
            "pass": self.passed,
            "gate": {"pass": self.gate, "message": self.gate_message},
            "steps": [s.to_json() for s in self.steps],
        }


def verify_plan(plan: FamilyPlan, tolerance=Fraction(1, 10**12)) -> VerificationReport:
    """Recompute every rho and Arf value from the infection matrices and
    re-check each inequality. Never raises on a bad plan; failures are
    listed per step."""
    try:
        _check_inputs(plan.base, plan.n, plan.m, plan.c_M)
        gate, msg = True, "ok"
    except ValueError as exc:
        gate, msg = False, str(exc)
    reports = []
    prev_hi = None
    for pos, step in enumerate(plan.schedule, 1):
        problems = []
        if step.index != pos:
            problems.append(f"step number {step.index} out of sequence (expected {pos})")
        if step.matrix is None and (step.copies is None or step.copies < 2 or step.copies % 2):
            problems.append(f"copies must be a positive even integer, got {step.copies}")
        try:
            v = step.infection()
        except ValueError as exc:
            problems.append(str(exc))
            reports.append(StepReport(pos, step.copies, step.rho, RhoValue(step.rho, step.rho), -1,
                                      _threshold(plan.c_M, plan.m, prev_hi), problems))
            prev_hi = step.rho
            continue
        val = rho_z(v, tolerance)
        a = arf(v)
        t = _threshold(plan.c_M, plan.m, prev_hi)
        if a != 0:
            problems.append("Arf invariant is 1")
        if not val.lo <= step.rho <= val.hi or (val.exact and val.value != step.rho):
            problems.append(f"recorded rho {_frac_str(step.rho)} disagrees with computed {_frac_str(val.value)}")
        if not val.lo > t:
            problems.append(f"rho {_frac_str(val.value)} does not exceed threshold {_frac_str(t)}")
        reports.append(StepReport(pos, step.copies, step.rho, val, a, t, problems))
        prev_hi = val.hi
    return VerificationReport(gate, msg, reports)


@dataclass(frozen=True)
class EpsilonVector:
    """Binary vector recording which axes map nontrivially."""

    entries: tuple[int, ...]

    def __post_init__(self):
        vals = tuple(int(x) for x in self.entries)
        if any(x not in (0, 1) for x in vals):
            raise ValueError(f"epsilon entries must be 0 or 1, got {self.entries!r}")
        object.__setattr__(self, "entries", vals)

    @classmethod
    def parse(cls, text: str) -> EpsilonVector:
        """From a digit string such as ``"101"``."""
        if not text or any(ch not in "01" for ch in text):
            raise ValueError(f"epsilon must be a string of 0/1 digits, got {text!r}")
        return cls(tuple(int(ch) for ch in text))

    def __len__(self) -> int:
        return len(self.entries)

    def weight(self) -> int:
        return sum(self.entries)


@dataclass(frozen=True)
class GapBound:
    value: Fraction
    threshold: Fraction

    @property
    def exceeds(self) -> bool:
        return self.value > self.threshold

    def to_json(self) -> dict:
        return {"value": _frac_str(self.value), "threshold": _frac_str(self.threshold), "exceeds": self.exceeds}


def _as_eps(e) -> EpsilonVector:
    if isinstance(e, EpsilonVector):
        return e
    if isinstance(e, str):
        return EpsilonVector.parse(e)
    return EpsilonVector(tuple(e))


def gap_lower_bound(plan: FamilyPlan, i: int, j: int, eps_i, eps_j) -> GapBound:
    """``sum(eps_i) rho_i - sum(eps_j) rho_j`` against the threshold ``2 c_M``.

    ``j == 0`` means the second knot carries no infection.
    """
    ei, ej = _as_eps(eps_i), _as_eps(eps_j)
    if not 0 <= j < i <= len(plan.schedule):
        raise IndexError(f"need 0 <= j < i <= {len(plan.schedule)}, got i={i}, j={j}")
    for name, e in (("eps_i", ei), ("eps_j", ej)):
        if len(e) != plan.m:
            raise ValueError(f"{name} has length {len(e)}, expected m = {plan.m}")
    if ei.weight() == 0:
        raise ValueError("eps_i must have at least one nonzero entry")
    value = ei.weight() * plan.rho(i) - ej.weight() * plan.rho(j)
    return GapBound(value, 2 * plan.c_M)


def axes_lower_bound(genus: int) -> int:
    """Minimum tuple size ``max(2g - 1, 1)`` of a special tuple in genus g."""
    if genus < 1:
        raise ValueError("genus must be at least 1")
    return max(2 * genus - 1, 1)
