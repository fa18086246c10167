"""Instance generators for linear regular formulas with known parameters.

Every generator certifies its output with the classifier before returning it.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional

from . import classifier as cl
from .errors import BudgetExhausted, InconsistentParameters, LincnfError, NonIntegralSize, NotPrime
from .formula import Formula, build_formula
from .identities import parameters_to_size


class CertificationError(LincnfError):
    """A generator produced something other than what it advertises (a bug)."""


def _certify(formula: Formula, **expected) -> Formula:
    report = cl.classify(formula)
    got = {"k": report.k, "l": report.l, "d": report.d}
    wrong = {key: (got[key], val) for key, val in expected.items() if got[key] != val}
    if not report.linear or not report.monotone or wrong:
        raise CertificationError(f"generated formula fails certification: {wrong or report.linear}")
    return formula


def _is_prime(q: int) -> bool:
    if q < 2:
        return False
    f = 2
    while f * f <= q:
        if q % f == 0:
            return False
        f += 1
    return True


def _normalize(v, q):
    """Scale a nonzero vector over GF(q) so its first nonzero coordinate is 1."""
    for a in v:
        if a:
            inv = pow(a, q - 2, q)
            return tuple(x * inv % q for x in v)
    raise ValueError("zero vector")


def gen_projective_plane(q: int) -> Formula:
    """Lines of PG(2, q) over the prime field GF(q) as clauses on its points.

    Points are numbered 1..q^2+q+1 in lexicographic order of their normalized
    homogeneous coordinates; lines are listed in the same order of their
    normalized dual coordinates. A point lies on a line iff their dot product
    vanishes mod q.
    """
    if not _is_prime(q):
        raise NotPrime(f"q={q} is not prime; only prime fields are supported")
    vecs = sorted(
        {_normalize((a, b, c), q) for a in range(q) for b in range(q) for c in range(q) if a or b or c}
    )
    index = {p: i + 1 for i, p in enumerate(vecs)}
    clauses = [
        [index[p] for p in vecs if sum(x * y for x, y in zip(p, line)) % q == 0]
        for line in vecs
    ]
    return _certify(build_formula(clauses), k=q + 1, l=q + 1, d=0)


FANO = ((1, 2, 3), (1, 4, 5), (1, 6, 7), (2, 4, 6), (2, 5, 7), (3, 4, 7), (3, 5, 6))


def fano() -> Formula:
    """The Fano plane in its textbook labeling."""
    return build_formula(FANO)


def gen_cycle(t: int) -> Formula:
    """The even cycle with 2t vertices as 2-clauses {i, i+1}."""
    if t < 2:
        raise InconsistentParameters(f"t must be >= 2, got {t}")
    size = 2 * t
    clauses = [[i, i % size + 1] for i in range(1, size + 1)]
    return _certify(build_formula(clauses), k=2, l=2, d=2 * t - 3)


def gen_disjoint_blocks(m: int, k: int) -> Formula:
    if m < 1 or k < 1:
        raise InconsistentParameters(f"need m >= 1 and k >= 1, got m={m}, k={k}")
    clauses = [list(range(i * k + 1, (i + 1) * k + 1)) for i in range(m)]
    return _certify(build_formula(clauses), k=k, l=1, d=m - 1)


@dataclass
class SearchStats:
    nodes: int = 0
    restarts: int = 0
    exhausted: bool = False


class _Cutoff(Exception):
    pass


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class _ConfigurationSearch:
    """Depth-first search over row-sorted incidence structures.

    Rows are chosen in lexicographic order and variables must first appear
    in increasing order; the lexicographically least labeling of any
    solution satisfies both, so these restrictions lose nothing. Each row
    starts with the smallest unsaturated variable, since rows after it can
    only start higher.
    """

    def __init__(self, k, l, m, n, rng=None):
        self.k, self.l, self.m, self.n = k, l, m, n
        self.rng = rng
        self.counts = [0] * (n + 1)
        self.met = [0] * (n + 1)  # bitmask of variables already sharing a row with v
        self.rows: list[tuple[int, ...]] = []
        self.nodes = 0
        self.limit = 0

    def run(self, limit) -> bool:
        self.nodes = 0
        self.limit = limit
        return self._place(0)

    def _open_mask(self):
        mask = 0
        for v in range(1, self.n + 1):
            if self.counts[v] < self.l:
                mask |= 1 << v
        return mask

    def _partners_suffice(self, open_mask) -> bool:
        # every unsaturated variable still needs (l - count) more rows, hence
        # that many times (k - 1) partners it has not met yet
        need_per_row = self.k - 1
        for v in _bits(open_mask):
            free = (open_mask & ~self.met[v] & ~(1 << v)).bit_count()
            if free < (self.l - self.counts[v]) * need_per_row:
                return False
        return True

    def _rows(self, first, open_mask, max_used, prev):
        """Admissible rows starting with ``first``, each >= prev."""
        k = self.k
        prefix = [first]
        limit_fresh = max(max_used, first) + 1

        def grow(cand, fresh, tied):
            if len(prefix) == k:
                yield tuple(prefix)
                return
            pos = len(prefix)
            need = k - pos
            options = [v for v in _bits(cand) if v <= fresh and v <= self.n - need + 1]
            if tied:
                options = [v for v in options if v >= prev[pos]]
            if self.rng is not None:
                self.rng.shuffle(options)
            for v in options:
                prefix.append(v)
                higher = cand & ~self.met[v] & ~((1 << (v + 1)) - 1)
                yield from grow(higher, max(fresh, v + 1),
                                tied and v == prev[pos])
                prefix.pop()

        cand = open_mask & ~self.met[first] & ~((1 << (first + 1)) - 1)
        tied = bool(prev) and prev[0] == first
        yield from grow(cand, limit_fresh, tied)

    def _place(self, r) -> bool:
        self.nodes += 1
        if self.nodes > self.limit:
            raise _Cutoff
        if r == self.m:
            return True
        open_mask = self._open_mask()
        if not open_mask or not self._partners_suffice(open_mask):
            return False
        first = (open_mask & -open_mask).bit_length() - 1
        prev = self.rows[-1] if self.rows else ()
        max_used = max((row[-1] for row in self.rows), default=0)
        if first > max_used + 1:
            return False
        for row in self._rows(first, open_mask, max_used, prev):
            if self.k >= 2 and row == prev:
                continue
            self._apply(row, +1)
            if self._place(r + 1):
                return True
            self._apply(row, -1)
        return False

    def _apply(self, row, sign):
        mask = 0
        for u in row:
            mask |= 1 << u
        for u in row:
            self.counts[u] += sign
            if sign > 0:
                self.met[u] |= mask & ~(1 << u)
            else:
                self.met[u] &= ~mask
        if sign > 0:
            self.rows.append(row)
        else:
            self.rows.pop()


def gen_dlcnf_search(
    k: int, l: int, d: int, budget: int = 1_000_000, seed: Optional[int] = None,
    stats: Optional[SearchStats] = None,
) -> Optional[Formula]:
    """Backtracking search for a monotone k-uniform, l-regular, d-disjointed linear formula.

    Only integrality of m and n is required. The congruence k = 1+d (mod l)
    is what x-satisfiability needs, not existence (the Fano plane violates
    it), so it is not enforced here.

    With ``seed=None`` this is a single lexicographic depth-first search and
    the result is the lexicographically least instance. With a seed the
    candidate rows are tried in shuffled order, restarting with a growing
    node cutoff; the output is deterministic for a given seed.

    Returns the formula, or None when a search tree was exhausted without a
    solution (proof of nonexistence). Raises BudgetExhausted when ``budget``
    nodes in total did not settle the question.
    """
    try:
        size = parameters_to_size(k, l, d)
    except NonIntegralSize as exc:
        raise InconsistentParameters(str(exc)) from None
    if budget < 1:
        raise ValueError("budget must be >= 1")
    stats = stats if stats is not None else SearchStats()
    stats.nodes = stats.restarts = 0
    stats.exhausted = False

    rng = None if seed is None else random.Random(seed)
    cutoff = budget if rng is None else 64
    while True:
        search = _ConfigurationSearch(k, l, size.m, size.n, rng)
        run_limit = min(cutoff, budget - stats.nodes)
        try:
            found = search.run(run_limit)
        except _Cutoff:
            stats.nodes += run_limit
            if stats.nodes >= budget:
                raise BudgetExhausted(
                    f"search for k={k}, l={l}, d={d} used its budget of {budget} nodes"
                ) from None
            stats.restarts += 1
            cutoff *= 2
            continue
        stats.nodes += search.nodes
        break
    if not found:
        stats.exhausted = True
        return None
    return _certify(build_formula(search.rows), k=k, l=l, d=d)


def gen_random_linear(
    target_n: int, k_min: int, k_max: int, seed: int, max_clauses: Optional[int] = None,
    max_failures: int = 100,
) -> Formula:
    """Greedy random linear formula over variables 1..target_n.

    Draws a clause size in [k_min, k_max] and a random variable set; keeps
    it if it shares at most one variable with every clause so far and is
    not a repeat. Stops after ``max_failures`` consecutive rejections or at
    ``max_clauses`` clauses.
    """
    if not 1 <= k_min <= k_max <= target_n:
        raise InconsistentParameters(
            f"need 1 <= k_min <= k_max <= target_n, got {k_min}, {k_max}, {target_n}"
        )
    rng = random.Random(seed)
    clauses: list[frozenset[int]] = []
    pool = range(1, target_n + 1)
    failures = 0
    while failures < max_failures and (max_clauses is None or len(clauses) < max_clauses):
        size = rng.randint(k_min, k_max)
        cand = frozenset(rng.sample(pool, size))
        if any(len(cand & c) > 1 or cand == c for c in clauses):
            failures += 1
            continue
        failures = 0
        clauses.append(cand)
    formula = build_formula([sorted(c) for c in clauses])
    if not cl.is_linear(formula):
        raise CertificationError("random generator produced a non-linear formula")
    return formula


def class_comment(k, l, d, seed) -> str:
    return f"class k={k} l={l} d={d} seed={seed}"
