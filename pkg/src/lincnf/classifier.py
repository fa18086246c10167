"""Class membership and disjointedness/independence profiles.

All counting is by clause index: a clause is never disjoint from itself, and
two clauses with the same variable set are still two clauses.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Optional

from .errors import EmptyFormula, IndexOutOfRange, UnknownVariable
from .formula import Formula


@dataclass(frozen=True)
class PairWitness:
    first: int
    second: int
    shared: frozenset[int]


@dataclass(frozen=True)
class Verdict:
    holds: bool
    witness: Optional[PairWitness] = None

    def __bool__(self):
        return self.holds


def _pairs_sharing(formula: Formula):
    """Yield (i, j, shared) for every pair i < j in clause order."""
    for i, j in combinations(range(formula.m), 2):
        yield i, j, formula.clauses[i].variables & formula.clauses[j].variables


def is_linear(formula: Formula) -> Verdict:
    for i, j, shared in _pairs_sharing(formula):
        if len(shared) > 1:
            return Verdict(False, PairWitness(i, j, shared))
    return Verdict(True)


def is_exact_linear(formula: Formula) -> Verdict:
    for i, j, shared in _pairs_sharing(formula):
        if len(shared) != 1:
            return Verdict(False, PairWitness(i, j, shared))
    return Verdict(True)


def monotone_witness(formula: Formula) -> Optional[tuple[int, int]]:
    """First (clause index, negative literal), or None for monotone formulas."""
    for i, c in enumerate(formula.clauses):
        for lit in c.literals:
            if lit < 0:
                return i, lit
    return None


def is_monotone(formula: Formula) -> bool:
    return monotone_witness(formula) is None


@dataclass(frozen=True)
class Uniformity:
    """Common value of a per-item quantity, or a pair of items that differ."""

    value: Optional[int]
    witness: Optional[tuple[int, int]] = None  # two items with different values

    def __bool__(self):
        return self.value is not None


def _common(items, key) -> Uniformity:
    first = None
    for item in items:
        v = key(item)
        if first is None:
            first = (item, v)
        elif v != first[1]:
            return Uniformity(None, (first[0], item))
    return Uniformity(first[1] if first else None)


def regularity(formula: Formula) -> Uniformity:
    """Common occurrence l, else None with two variables of different occurrence."""
    if formula.n == 0:
        raise EmptyFormula("regularity needs at least one variable")
    return _common(formula.sorted_variables, formula.occurrence)


def uniformity(formula: Formula) -> Uniformity:
    """Common clause length k, else None with two clause indices of different length."""
    if formula.m == 0:
        raise EmptyFormula("uniformity needs at least one clause")
    return _common(range(formula.m), lambda i: len(formula.clauses[i]))


def disjointedness_profile(formula: Formula) -> tuple[int, ...]:
    """d_C for every clause, by direct pair scan."""
    m = formula.m
    # connected counts excluding self; disjoint = m - 1 - connected
    return tuple(m - 1 - len(formula.connected_clauses(i)) for i in range(m))


def clause_disjointedness(formula: Formula, index: int) -> int:
    if not 0 <= index < formula.m:
        raise IndexOutOfRange(f"clause index {index} out of range 0..{formula.m - 1}")
    c = formula.clauses[index]
    return sum(
        1
        for j, other in enumerate(formula.clauses)
        if j != index and not (c.variables & other.variables)
    )


def mean_disjointedness(formula: Formula) -> Fraction:
    if formula.m == 0:
        raise EmptyFormula("mean disjointedness needs at least one clause")
    return Fraction(sum(disjointedness_profile(formula)), formula.m)


def common_disjointedness(formula: Formula) -> Optional[int]:
    profile = set(disjointedness_profile(formula))
    return profile.pop() if len(profile) == 1 else None


def variable_independence(formula: Formula, x: int) -> int:
    """Number of variables other than ``x`` that share no clause with it."""
    if x not in formula.variables:
        raise UnknownVariable(f"variable {x} does not occur in the formula")
    return formula.n - len(formula.neighbourhood(x))


def independence_profile(formula: Formula) -> tuple[tuple[int, int], ...]:
    return tuple((x, variable_independence(formula, x)) for x in formula.sorted_variables)


def mean_independence(formula: Formula) -> Fraction:
    if formula.n == 0:
        raise EmptyFormula("mean independence needs at least one variable")
    return Fraction(sum(v for _, v in independence_profile(formula)), formula.n)


@dataclass(frozen=True)
class ClassReport:
    m: int
    n: int
    linear: Verdict
    exact_linear: Verdict
    monotone: bool
    monotone_witness: Optional[tuple[int, int]]
    regularity: Uniformity
    uniformity: Uniformity
    disjointedness_profile: tuple[int, ...]
    common_disjointedness: Optional[int]
    mean_disjointedness: Optional[Fraction]
    independence_profile: tuple[tuple[int, int], ...]
    mean_independence: Optional[Fraction]
    max_d: Optional[int] = None
    max_mean_d: Optional[Fraction] = None

    @property
    def l(self) -> Optional[int]:
        return self.regularity.value

    @property
    def k(self) -> Optional[int]:
        return self.uniformity.value

    @property
    def d(self) -> Optional[int]:
        return self.common_disjointedness

    @property
    def linear_regular(self) -> bool:
        return bool(self.linear) and self.l is not None

    @property
    def in_dlcnf(self) -> bool:
        """Linear, l-regular and d-disjointed for some d."""
        return self.linear_regular and self.d is not None

    @property
    def in_bounded_d_class(self) -> Optional[bool]:
        """Membership in (<= max_d)LCNF^l; None when no bound was asked for."""
        if self.max_d is None:
            return None
        return self.in_dlcnf and self.d <= self.max_d

    @property
    def in_bounded_mean_d_class(self) -> Optional[bool]:
        """Membership in (mean d <= max_mean_d)LCNF^l; None when no bound was asked for."""
        if self.max_mean_d is None:
            return None
        return self.linear_regular and self.mean_disjointedness <= self.max_mean_d

    def to_dict(self) -> dict:
        def pair(v: Verdict):
            out = {"holds": v.holds}
            if v.witness is not None:
                out["witness"] = {
                    "clauses": [v.witness.first, v.witness.second],
                    "shared": sorted(v.witness.shared),
                }
            return out

        def common(u: Uniformity, what):
            out = {"value": u.value}
            if u.witness is not None:
                out["witness"] = {what: list(u.witness)}
            return out

        classes = {
            "linear": pair(self.linear),
            "exactLinear": pair(self.exact_linear),
            "monotone": {"holds": self.monotone},
            "regularity": common(self.regularity, "variables"),
            "uniformity": common(self.uniformity, "clauses"),
            "disjointedness": self.common_disjointedness,
            "dlcnf": self.in_dlcnf,
        }
        if self.monotone_witness is not None:
            classes["monotone"]["witness"] = {
                "clause": self.monotone_witness[0],
                "literal": self.monotone_witness[1],
            }
        if self.max_d is not None:
            classes["boundedDisjointedness"] = {"maxD": self.max_d, "member": self.in_bounded_d_class}
        if self.max_mean_d is not None:
            classes["boundedMeanDisjointedness"] = {
                "maxMeanD": self.max_mean_d,
                "member": self.in_bounded_mean_d_class,
            }
        return {
            "classes": classes,
            "profiles": {
                "disjointedness": list(self.disjointedness_profile),
                "independence": {str(x): v for x, v in self.independence_profile},
            },
        }


def classify(formula: Formula, max_d: Optional[int] = None, max_mean_d=None) -> ClassReport:
    """Full class report; never raises, empty formulas give None-valued fields."""
    d_profile = disjointedness_profile(formula)
    v_profile = independence_profile(formula)
    d_values = set(d_profile)
    mono_w = monotone_witness(formula)
    return ClassReport(
        m=formula.m,
        n=formula.n,
        linear=is_linear(formula),
        exact_linear=is_exact_linear(formula),
        monotone=mono_w is None,
        monotone_witness=mono_w,
        regularity=regularity(formula) if formula.n else Uniformity(None),
        uniformity=uniformity(formula) if formula.m else Uniformity(None),
        disjointedness_profile=d_profile,
        common_disjointedness=d_values.pop() if len(d_values) == 1 else None,
        mean_disjointedness=Fraction(sum(d_profile), formula.m) if formula.m else None,
        independence_profile=v_profile,
        mean_independence=Fraction(sum(v for _, v in v_profile), formula.n) if formula.n else None,
        max_d=max_d,
        max_mean_d=None if max_mean_d is None else Fraction(max_mean_d),
    )
