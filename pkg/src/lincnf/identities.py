"""Exact structural identities of linear formulas and the size relations/bounds
built on them.

Identity checks use exact integers/Fractions only. The real-valued bounds
(``ml_upper_bound``, ``ml_bracket_lower``) are floats and are compared with
``BOUND_SLACK`` by callers; no identity depends on a tolerance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Optional, Union

from . import classifier as cl
from .errors import (
    DegenerateRegularity,
    EmptyFormula,
    NegativeDisjointedness,
    NonIntegralSize,
    NotLinear,
    NotMonotone,
    NotRegular,
)
from .formula import Formula, stats

BOUND_SLACK = 1e-9


@dataclass(frozen=True)
class Residual:
    item: Any
    lhs: Fraction
    rhs: Fraction


@dataclass(frozen=True)
class IdentityReport:
    name: str
    checked: int
    residuals: tuple[Residual, ...] = ()

    @property
    def holds(self) -> bool:
        return not self.residuals

    def __bool__(self):
        return self.holds

    def to_dict(self) -> dict:
        return {
            "identity": self.name,
            "holds": self.holds,
            "checked": self.checked,
            "residuals": [
                {"item": r.item, "lhs": r.lhs, "rhs": r.rhs} for r in self.residuals
            ],
        }


def _require_linear(formula: Formula):
    verdict = cl.is_linear(formula)
    if not verdict:
        w = verdict.witness
        raise NotLinear(
            f"clauses {w.first} and {w.second} share variables {sorted(w.shared)}"
        )


def _require_regular(formula: Formula) -> int:
    reg = cl.regularity(formula)
    if reg.value is None:
        a, b = reg.witness
        raise NotRegular(
            f"l({a})={formula.occurrence(a)} differs from l({b})={formula.occurrence(b)}"
        )
    return reg.value


def _report(name, rows) -> IdentityReport:
    rows = list(rows)
    bad = tuple(Residual(item, lhs, rhs) for item, lhs, rhs in rows if lhs != rhs)
    return IdentityReport(name, len(rows), bad)


def verify_clause_size_identity(formula: Formula) -> IdentityReport:
    """m = 1 + sum_{x in C} l(x) - |C| + d_C for every clause C."""
    _require_linear(formula)
    m = formula.m
    profile = cl.disjointedness_profile(formula)
    rows = []
    for i, c in enumerate(formula.clauses):
        rhs = 1 + sum(formula.occurrence(x) for x in c.variables) - len(c) + profile[i]
        rows.append((i, Fraction(m), Fraction(rhs)))
    return _report("clause-size", rows)


def verify_variable_size_identity(formula: Formula) -> IdentityReport:
    """n = 1 - l(x) + sum_{C containing x} |C| + v_x for every variable x."""
    _require_linear(formula)
    n = formula.n
    rows = []
    for x in formula.sorted_variables:
        incident = sum(len(formula.clauses[i]) for i in formula.clauses_containing(x))
        rhs = 1 - formula.occurrence(x) + incident + cl.variable_independence(formula, x)
        rows.append((x, Fraction(n), Fraction(rhs)))
    return _report("variable-size", rows)


def verify_mean_identities(formula: Formula) -> IdentityReport:
    """The averaged forms of the two size identities, as exact rationals."""
    _require_linear(formula)
    if formula.m == 0 or formula.n == 0:
        raise EmptyFormula("mean identities need at least one clause and one variable")
    s = stats(formula)
    d_bar = cl.mean_disjointedness(formula)
    v_bar = cl.mean_independence(formula)
    m_rhs = 1 + s.k_bar / s.l_bar * (s.l2_bar - s.l_bar) + d_bar
    n_rhs = 1 + s.l_bar / s.k_bar * (s.k2_bar - s.k_bar) + v_bar
    return _report(
        "mean-size",
        [("m", Fraction(s.m), m_rhs), ("n", Fraction(s.n), n_rhs)],
    )


def verify_regular_corollaries(formula: Formula) -> IdentityReport:
    """Per-clause m = 1 + |C|(l-1) + d_C, plus the regular mean forms for m and n."""
    _require_linear(formula)
    l = _require_regular(formula)
    profile = cl.disjointedness_profile(formula)
    m, n = formula.m, formula.n
    rows = [
        (i, Fraction(m), Fraction(1 + len(c) * (l - 1) + profile[i]))
        for i, c in enumerate(formula.clauses)
    ]
    s = stats(formula)
    d_bar = cl.mean_disjointedness(formula)
    v_bar = cl.mean_independence(formula)
    rows.append(("m-mean", Fraction(m), 1 + s.k_bar * (l - 1) + d_bar))
    rows.append(("n-mean", Fraction(n), 1 + l * (s.k2_bar / s.k_bar - 1) + v_bar))
    return _report("regular-corollaries", rows)


def identity_suite(formula: Formula) -> list[IdentityReport]:
    """Every identity applicable to ``formula``; empty list when it is not linear."""
    if formula.m == 0 or formula.n == 0 or not cl.is_linear(formula):
        return []
    reports = [
        verify_clause_size_identity(formula),
        verify_variable_size_identity(formula),
        verify_mean_identities(formula),
    ]
    if cl.regularity(formula).value is not None:
        reports.append(verify_regular_corollaries(formula))
    return reports


@dataclass(frozen=True)
class SizeParameters:
    k: int
    l: int
    d: int
    m: int
    n: int
    congruence_ok: bool = True  # k = 1 + d (mod l), i.e. m = 0 (mod l)

    def consistent(self) -> bool:
        return self.m == 1 + self.k * (self.l - 1) + self.d and self.n * self.l == self.k * self.m


def parameters_to_size(k: int, l: int, d: int) -> SizeParameters:
    """Clause and variable counts implied by uniformity k, regularity l, disjointedness d.

    >>> parameters_to_size(3, 3, 0)
    SizeParameters(k=3, l=3, d=0, m=7, n=7, congruence_ok=False)
    """
    if k < 1 or l < 1 or d < 0:
        raise NonIntegralSize(f"need k >= 1, l >= 1, d >= 0; got k={k}, l={l}, d={d}")
    m = 1 + k * (l - 1) + d
    if (k * m) % l:
        raise NonIntegralSize(f"l={l} does not divide k*m={k * m}")
    return SizeParameters(k, l, d, m, k * m // l, (k - 1 - d) % l == 0)


def ml_quadratic_check(m: int, n: int, l: int, d: int) -> bool:
    """Integer form of the clause-count relation: m^2 - (1+d) m - n l (l-1) == 0."""
    return m * m - (1 + d) * m - n * l * (l - 1) == 0


Number = Union[int, Fraction, float]


def ml_upper_bound(n: int, l: int, d_bound: Number) -> float:
    """Upper bound on m/l for formulas with disjointedness (or mean) at most ``d_bound``."""
    a = 1 + d_bound
    return float(a / (2 * l) * (1 + math.sqrt(1 + 4 * n * l * (l - 1) / (a * a))))


def ml_bracket_lower(n: int, l: int) -> float:
    if l < 2:
        raise DegenerateRegularity("the lower bracket is vacuous for l < 2")
    return math.sqrt(n * (l - 1) / l)


def bracket_holds(m: int, n: int, l: int, epsilon: float) -> bool:
    """lower <= m/l <= (1 + epsilon) * lower, with BOUND_SLACK."""
    lower = ml_bracket_lower(n, l)
    return lower - BOUND_SLACK <= m / l <= (1 + epsilon) * lower + BOUND_SLACK


def implied_epsilon(m: int, n: int, l: int) -> float:
    return m / (l * ml_bracket_lower(n, l)) - 1


def uniform_disjointedness(n: int, k: int, l: int) -> int:
    """d forced on a k-uniform l-regular linear formula with n variables."""
    if (n * l) % k:
        raise NonIntegralSize(f"k={k} does not divide n*l={n * l}")
    d = n * l // k - k * (l - 1) - 1
    if d < 0:
        raise NegativeDisjointedness(f"n={n}, k={k}, l={l} give d={d}")
    return d


@dataclass(frozen=True)
class Prescreen:
    passed: bool
    remainder: int = 0

    def __str__(self):
        return "Pass" if self.passed else f"FailModulo({self.remainder})"


def xsat_prescreen(formula: Formula) -> Prescreen:
    """For monotone l-regular formulas, m not divisible by l certifies x-unsatisfiability."""
    if not formula.is_monotone:
        raise NotMonotone("prescreen needs a monotone formula")
    l = _require_regular(formula)
    r = formula.m % l
    return Prescreen(r == 0, r)


def bounds_report(formula: Formula, report: Optional[cl.ClassReport] = None) -> Optional[dict]:
    """Size-relation and bound values for a linear regular formula, else None."""
    report = report or cl.classify(formula)
    if not report.linear_regular or formula.m == 0:
        return None
    m, n, l = formula.m, formula.n, report.l
    d_bound = report.d if report.d is not None else report.mean_disjointedness
    upper = ml_upper_bound(n, l, d_bound)
    out = {
        "mOverL": Fraction(m, l),
        "upperBound": upper,
        "upperHolds": m / l <= upper + BOUND_SLACK,
    }
    if report.d is not None:
        out["quadraticHolds"] = ml_quadratic_check(m, n, l, report.d)
    if l >= 2:
        lower = ml_bracket_lower(n, l)
        out["lowerBound"] = lower
        out["lowerHolds"] = lower <= m / l + BOUND_SLACK
        out["impliedEpsilon"] = implied_epsilon(m, n, l)
    return out
