"""XSAT deciding, counting and model enumeration.

Two procedures:

* ``brute_force_xsat`` walks all 2^n assignments; it is the reference.
* ``weight_restricted_xsat`` handles monotone l-regular formulas. In such a
  formula every true variable makes exactly l literals true, so a model has
  exactly m/l true variables; only the C(n, m/l) subsets of that size are
  tested. Linearity is not needed for correctness, only for the size
  relation that makes C(n, m/l) small.

Assignments are indexed by bitmask over the formula's sorted variables (bit i
is the i-th smallest variable). Subsets are visited in lexicographic order of
their sorted variable tuples, so the first model found is the least one.
"""

from __future__ import annotations

import enum
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterator, Optional

from .errors import ForeignVariable, NotMonotone, PrescreenFail, TooLarge
from .formula import Formula
from .identities import xsat_prescreen

BRUTE_FORCE_MAX_VARS = 30


class Status(str, enum.Enum):
    SATISFIABLE = "Satisfiable"
    UNSATISFIABLE = "Unsatisfiable"
    BUDGET_EXHAUSTED = "BudgetExhausted"


class Method(str, enum.Enum):
    ORACLE = "oracle"
    WEIGHT_RESTRICTED = "weightRestricted"
    PRESCREEN = "prescreen"


@dataclass(frozen=True)
class XsatResult:
    """Outcome of a solver run.

    ``model_count`` is exact only when the run completed; on
    ``BUDGET_EXHAUSTED`` it counts the models seen so far and
    ``first_model`` (if any) is still the least model overall, because
    enumeration is in lexicographic order.
    """

    status: Status
    first_model: Optional[frozenset[int]]
    model_count: int
    candidates_examined: int
    method: Method
    models: Optional[tuple[frozenset[int], ...]] = None

    @property
    def satisfiable(self) -> Optional[bool]:
        if self.status is Status.BUDGET_EXHAUSTED:
            return None
        return self.status is Status.SATISFIABLE

    def to_dict(self) -> dict:
        return {
            "status": self.status.value,
            "method": self.method.value,
            "modelCount": str(self.model_count),
            "candidatesExamined": str(self.candidates_examined),
            "firstModel": sorted(self.first_model) if self.first_model is not None else None,
        }


class _Masks:
    """Per-clause positive/negative bitmasks over the formula's sorted variables."""

    def __init__(self, formula: Formula):
        self.variables = formula.sorted_variables
        self.position = {x: i for i, x in enumerate(self.variables)}
        self.full = (1 << len(self.variables)) - 1
        self.pos = []
        self.neg = []
        for c in formula.clauses:
            p = q = 0
            for lit in c.literals:
                if lit > 0:
                    p |= 1 << self.position[lit]
                else:
                    q |= 1 << self.position[-lit]
            self.pos.append(p)
            self.neg.append(q)
        # monotone fast path: true literals of a clause are simply T & pos
        self.monotone = not any(self.neg)
        self.clause_masks = list(zip(self.pos, self.neg))

    def satisfies(self, t: int) -> bool:
        if self.monotone:
            for p in self.pos:
                if (t & p).bit_count() != 1:
                    return False
            return True
        f = ~t
        for p, q in self.clause_masks:
            if ((t & p) | (f & q)).bit_count() != 1:
                return False
        return True

    def to_set(self, t: int) -> frozenset[int]:
        return frozenset(x for i, x in enumerate(self.variables) if t >> i & 1)

    def to_mask(self, true_set) -> int:
        t = 0
        for x in true_set:
            t |= 1 << self.position[x]
        return t


def check_xsat(formula: Formula, true_set) -> bool:
    """True iff every clause has exactly one true literal under ``true_set``."""
    true_set = frozenset(true_set)
    foreign = true_set - formula.variables
    if foreign:
        raise ForeignVariable(f"variables {sorted(foreign)} do not occur in the formula")
    for c in formula.clauses:
        true_lits = sum(1 for lit in c.literals if (lit > 0) == (abs(lit) in true_set))
        if true_lits != 1:
            return False
    return True


def _lex_subsets(n: int) -> Iterator[int]:
    """All subsets of range(n) as bitmasks, in lexicographic order of sorted tuples."""
    yield 0
    if n == 0:
        return
    stack = [0]
    mask = 1
    yield mask
    while True:
        last = stack[-1]
        if last + 1 < n:
            stack.append(last + 1)
            mask |= 1 << (last + 1)
        else:
            stack.pop()
            mask &= ~(1 << last)
            if not stack:
                return
            prev = stack[-1]
            mask &= ~(1 << prev)
            stack[-1] = prev + 1
            mask |= 1 << (prev + 1)
        yield mask


def brute_force_xsat(
    formula: Formula, budget: Optional[int] = None, collect_models: bool = False
) -> XsatResult:
    """Test every assignment of V(F).

    ``budget`` caps the number of assignments examined. Formulas with more
    than 30 variables are refused unless the budget covers all 2^n.
    """
    n = formula.n
    total = 1 << n
    if n > BRUTE_FORCE_MAX_VARS and (budget is None or budget < total):
        raise TooLarge(f"n={n} exceeds the brute-force cap of {BRUTE_FORCE_MAX_VARS}")
    limit = total if budget is None else min(budget, total)
    masks = _Masks(formula)
    count = examined = 0
    first = None
    models = [] if collect_models else None
    for t in _lex_subsets(n):
        if examined >= limit:
            break
        examined += 1
        if masks.satisfies(t):
            count += 1
            if first is None:
                first = t
            if models is not None:
                models.append(masks.to_set(t))
    return _result(
        masks, examined == total, count, first, examined, Method.ORACLE, models
    )


def _result(masks, complete, count, first, examined, method, models=None) -> XsatResult:
    if not complete:
        status = Status.BUDGET_EXHAUSTED
    elif count:
        status = Status.SATISFIABLE
    else:
        status = Status.UNSATISFIABLE
    return XsatResult(
        status=status,
        first_model=None if first is None else masks.to_set(first),
        model_count=count,
        candidates_examined=examined,
        method=method,
        models=None if models is None else tuple(models),
    )


# k-subsets of range(n) in lexicographic order, addressed by rank


def unrank_combination(rank: int, n: int, k: int) -> list[int]:
    """The ``rank``-th k-subset of range(n) in lexicographic order."""
    if not 0 <= rank < math.comb(n, k):
        raise ValueError(f"rank {rank} out of range for C({n},{k})")
    out = []
    x = 0
    for i in range(k):
        while True:
            below = math.comb(n - x - 1, k - i - 1)
            if rank < below:
                break
            rank -= below
            x += 1
        out.append(x)
        x += 1
    return out


def rank_combination(combo, n: int) -> int:
    k = len(combo)
    rank = 0
    prev = -1
    for i, c in enumerate(combo):
        for x in range(prev + 1, c):
            rank += math.comb(n - x - 1, k - i - 1)
        prev = c
    return rank


def next_combination(combo: list[int], n: int) -> bool:
    """Advance ``combo`` in place to its lexicographic successor; False at the end."""
    k = len(combo)
    i = k - 1
    while i >= 0 and combo[i] == n - k + i:
        i -= 1
    if i < 0:
        return False
    combo[i] += 1
    for j in range(i + 1, k):
        combo[j] = combo[j - 1] + 1
    return True


def _scan_range(pos_masks, n, w, start, stop, want_models):
    """Check candidates with ranks in [start, stop); returns (count, first, examined, models)."""
    combo = unrank_combination(start, n, w)
    count = examined = 0
    first = None
    models = [] if want_models else None
    for _ in range(stop - start):
        t = 0
        for i in combo:
            t |= 1 << i
        examined += 1
        for p in pos_masks:
            if (t & p).bit_count() != 1:
                break
        else:
            count += 1
            if first is None:
                first = t
            if models is not None:
                models.append(t)
        if not next_combination(combo, n):
            break
    return count, first, examined, models


def candidate_count(formula: Formula) -> int:
    """C(n, m/l) for a monotone l-regular formula that passes the prescreen."""
    screen = xsat_prescreen(formula)
    if not screen.passed:
        raise PrescreenFail(f"m={formula.m} is {screen.remainder} mod l")
    l = formula.occurrence(formula.sorted_variables[0])
    return math.comb(formula.n, formula.m // l)


def weight_restricted_xsat(
    formula: Formula,
    budget: Optional[int] = None,
    workers: int = 1,
    collect_models: bool = False,
) -> XsatResult:
    """Decide/count XSAT on a monotone l-regular formula by testing only weight-m/l subsets.

    ``workers > 1`` splits the rank range into contiguous blocks processed in
    separate processes; counts add up and the least model wins, so the
    result does not depend on the split.
    """
    if not formula.is_monotone:
        raise NotMonotone("weight-restricted enumeration needs a monotone formula")
    if formula.m == 0:
        return XsatResult(Status.SATISFIABLE, frozenset(), 1, 1, Method.WEIGHT_RESTRICTED,
                          (frozenset(),) if collect_models else None)
    if formula.has_empty_clause:
        return XsatResult(Status.UNSATISFIABLE, None, 0, 0, Method.PRESCREEN,
                          () if collect_models else None)
    screen = xsat_prescreen(formula)  # raises NotRegular
    if not screen.passed:
        return XsatResult(Status.UNSATISFIABLE, None, 0, 0, Method.PRESCREEN,
                          () if collect_models else None)

    l = formula.occurrence(formula.sorted_variables[0])
    n, w = formula.n, formula.m // l
    total = math.comb(n, w)
    limit = total if budget is None else min(budget, total)
    masks = _Masks(formula)

    blocks = _split(limit, max(1, workers))
    args = [(masks.pos, n, w, a, b, collect_models) for a, b in blocks]
    if workers > 1 and len(blocks) > 1:
        with ProcessPoolExecutor(max_workers=min(workers, os.cpu_count() or 1)) as ex:
            parts = list(ex.map(_scan_range_star, args))
    else:
        parts = [_scan_range(*a) for a in args]

    count = sum(p[0] for p in parts)
    examined = sum(p[2] for p in parts)
    firsts = [p[1] for p in parts if p[1] is not None]
    # blocks are in rank order, so the earliest block's first model is the least
    first = firsts[0] if firsts else None
    models = None
    if collect_models:
        models = [masks.to_set(t) for p in parts for t in p[3]]
    return _result(masks, examined == total, count, first, examined,
                   Method.WEIGHT_RESTRICTED, models)


def _scan_range_star(a):
    return _scan_range(*a)


def _split(total: int, parts: int) -> list[tuple[int, int]]:
    if total == 0:
        return []
    parts = min(parts, total)
    size, extra = divmod(total, parts)
    out, start = [], 0
    for i in range(parts):
        stop = start + size + (i < extra)
        out.append((start, stop))
        start = stop
    return out


def model_to_v_line(formula: Formula, model) -> str:
    """DIMACS-style ``v`` line: every variable of V(F) with its sign, then 0."""
    model = frozenset(model)
    lits = [str(x if x in model else -x) for x in formula.sorted_variables]
    return "v " + " ".join(lits + ["0"])
