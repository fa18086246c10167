"""Immutable CNF formulas, incidence queries and exact clause/occurrence statistics.

Literals are DIMACS-style signed integers: ``x`` is the positive literal of
variable ``x`` and ``-x`` its negation. Variables are positive integers.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, NamedTuple, Sequence

from .errors import DuplicateVariableInClause, EmptyFormula, FormulaError, ZeroLiteral

Assignment = frozenset  # set of variables assigned true; all others false


class Literal(NamedTuple):
    variable: int
    positive: bool = True

    @classmethod
    def from_int(cls, lit: int) -> "Literal":
        if lit == 0:
            raise ValueError("0 is not a literal")
        return cls(abs(lit), lit > 0)

    def __int__(self) -> int:
        return self.variable if self.positive else -self.variable


@dataclass(frozen=True)
class Clause:
    """Literals sorted by variable; each variable at most once."""

    literals: tuple[int, ...]

    @cached_property
    def variables(self) -> frozenset[int]:
        return frozenset(abs(lit) for lit in self.literals)

    @property
    def positive_variables(self) -> frozenset[int]:
        return frozenset(lit for lit in self.literals if lit > 0)

    @property
    def negative_variables(self) -> frozenset[int]:
        return frozenset(-lit for lit in self.literals if lit < 0)

    @property
    def is_empty(self) -> bool:
        return not self.literals

    @property
    def is_monotone(self) -> bool:
        return all(lit > 0 for lit in self.literals)

    def __len__(self) -> int:
        return len(self.literals)

    def __iter__(self):
        return iter(self.literals)

    def __contains__(self, variable: int) -> bool:
        return variable in self.variables

    def __repr__(self) -> str:
        return "{" + ",".join(map(str, self.literals)) + "}"


def make_clause(literals: Iterable[int], index: int = 0) -> Clause:
    lits = list(literals)
    seen = set()
    for lit in lits:
        if not isinstance(lit, int) or isinstance(lit, bool):
            raise FormulaError(f"clause {index}: literal {lit!r} is not an integer")
        if lit == 0:
            raise ZeroLiteral(index)
        if abs(lit) in seen:
            raise DuplicateVariableInClause(index, abs(lit))
        seen.add(abs(lit))
    return Clause(tuple(sorted(lits, key=abs)))


@dataclass(frozen=True)
class Formula:
    """An ordered, immutable sequence of clauses.

    Clause order is kept as given; it determines witness order everywhere
    downstream. ``variables`` is V(F), the set of variables that occur.
    """

    clauses: tuple[Clause, ...] = ()
    allow_empty_clause: bool = field(default=False, compare=False, repr=False)

    def __post_init__(self):
        if not self.allow_empty_clause:
            for i, c in enumerate(self.clauses):
                if c.is_empty:
                    raise FormulaError(
                        f"clause {i} is empty; pass allow_empty_clause=True to build it"
                    )

    # sizes
    @property
    def m(self) -> int:
        return len(self.clauses)

    @property
    def n(self) -> int:
        return len(self.variables)

    def __len__(self) -> int:
        return len(self.clauses)

    def __iter__(self):
        return iter(self.clauses)

    def __getitem__(self, i: int) -> Clause:
        return self.clauses[i]

    @cached_property
    def variables(self) -> frozenset[int]:
        return frozenset().union(*(c.variables for c in self.clauses))

    @cached_property
    def sorted_variables(self) -> tuple[int, ...]:
        return tuple(sorted(self.variables))

    @cached_property
    def has_empty_clause(self) -> bool:
        return any(c.is_empty for c in self.clauses)

    # incidence
    @cached_property
    def occurrences(self) -> Counter:
        cnt: Counter = Counter()
        for c in self.clauses:
            cnt.update(c.variables)
        return cnt

    def occurrence(self, x: int) -> int:
        """l(x): number of clauses containing ``x`` (0 if absent)."""
        return self.occurrences.get(x, 0)

    @cached_property
    def _clauses_by_variable(self) -> dict[int, tuple[int, ...]]:
        by_var: dict[int, list[int]] = {}
        for i, c in enumerate(self.clauses):
            for x in c.variables:
                by_var.setdefault(x, []).append(i)
        return {x: tuple(idx) for x, idx in by_var.items()}

    def clauses_containing(self, x: int) -> tuple[int, ...]:
        """Indices of the clauses that contain ``x``, in clause order."""
        return self._clauses_by_variable.get(x, ())

    def incidence(self, clause_index: int, x: int) -> int:
        """The 0/1 incidence-matrix entry for (clause, variable)."""
        return int(x in self.clauses[clause_index].variables)

    def connected_clauses(self, clause_index: int) -> tuple[int, ...]:
        """Indices of the other clauses sharing at least one variable with the given one."""
        seen = set()
        for x in self.clauses[clause_index].variables:
            seen.update(self._clauses_by_variable[x])
        seen.discard(clause_index)
        return tuple(sorted(seen))

    def neighbourhood(self, x: int) -> frozenset[int]:
        """V(F_x): all variables of the clauses that contain ``x``."""
        out: set[int] = set()
        for i in self.clauses_containing(x):
            out |= self.clauses[i].variables
        return frozenset(out)

    @property
    def is_monotone(self) -> bool:
        return all(c.is_monotone for c in self.clauses)

    def to_lists(self) -> list[list[int]]:
        return [list(c.literals) for c in self.clauses]

    def __repr__(self) -> str:
        return "Formula(" + ",".join(map(repr, self.clauses)) + ")"


def build_formula(raw_clauses: Iterable[Sequence[int]], *, allow_empty_clause: bool = False) -> Formula:
    """Validate and canonicalize a sequence of integer clauses.

    >>> build_formula([[1, 2], [2, 3], [4, 5]]).n
    5
    """
    clauses = tuple(make_clause(c, i) for i, c in enumerate(raw_clauses))
    return Formula(clauses, allow_empty_clause=allow_empty_clause)


def occurrence(formula: Formula, x: int) -> int:
    return formula.occurrence(x)


def shared_variables(c1: Clause, c2: Clause) -> frozenset[int]:
    return c1.variables & c2.variables


@dataclass(frozen=True)
class FormulaStats:
    m: int
    n: int
    mean_clause_length: Fraction
    mean_squared_clause_length: Fraction
    mean_occurrence: Fraction
    mean_squared_occurrence: Fraction
    clause_lengths: tuple[int, ...]
    occurrences: tuple[tuple[int, int], ...]  # (variable, l(x)) sorted by variable

    # short aliases matching the usual symbols
    @property
    def k_bar(self) -> Fraction:
        return self.mean_clause_length

    @property
    def k2_bar(self) -> Fraction:
        return self.mean_squared_clause_length

    @property
    def l_bar(self) -> Fraction:
        return self.mean_occurrence

    @property
    def l2_bar(self) -> Fraction:
        return self.mean_squared_occurrence


def stats(formula: Formula) -> FormulaStats:
    if formula.m == 0:
        raise EmptyFormula("statistics need at least one clause")
    lengths = tuple(len(c) for c in formula.clauses)
    occ = tuple((x, formula.occurrence(x)) for x in formula.sorted_variables)
    m, n = formula.m, formula.n
    if n == 0:
        # only empty clauses: occurrence means are vacuous
        l_bar = l2_bar = Fraction(0)
    else:
        l_bar = Fraction(sum(l for _, l in occ), n)
        l2_bar = Fraction(sum(l * l for _, l in occ), n)
    return FormulaStats(
        m=m,
        n=n,
        mean_clause_length=Fraction(sum(lengths), m),
        mean_squared_clause_length=Fraction(sum(k * k for k in lengths), m),
        mean_occurrence=l_bar,
        mean_squared_occurrence=l2_bar,
        clause_lengths=lengths,
        occurrences=occ,
    )
