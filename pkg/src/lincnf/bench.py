"""Benchmark sweeps: candidate counts C(n, m/l) against the n^sqrt(n) envelope.

Rows are deterministic except for the ``*_seconds`` columns.
"""

from __future__ import annotations

import csv
import io
import math
import time
from dataclasses import asdict, dataclass, fields
from fractions import Fraction
from typing import Iterable, Iterator, Optional

from . import classifier as cl
from . import generators as gen
from .dimacs import format_rational
from .errors import BudgetExhausted, InconsistentParameters, TooLarge
from .formula import Formula
from .identities import BOUND_SLACK, ml_upper_bound, xsat_prescreen
from .xsat import brute_force_xsat, weight_restricted_xsat


@dataclass
class BenchRecord:
    instance: str
    n: int
    m: int
    k: Optional[int]
    l: Optional[int]
    d: Optional[int]
    mean_d: Fraction
    m_over_l: Fraction
    prescreen: str
    candidate_count: Optional[int]
    ln_candidate_count: Optional[float]
    ln_n_pow_sqrt_n: float
    upper_bound: Optional[float]
    within_upper_bound: Optional[bool]
    oracle_status: str = ""
    oracle_count: Optional[int] = None
    restricted_status: str = ""
    restricted_count: Optional[int] = None
    restricted_candidates: Optional[int] = None
    agree: Optional[bool] = None
    oracle_seconds: Optional[float] = None
    restricted_seconds: Optional[float] = None


TIMING_COLUMNS = ("oracle_seconds", "restricted_seconds")
COLUMNS = tuple(f.name for f in fields(BenchRecord))


def projective_family(qs: Iterable[int]) -> Iterator[tuple[str, Formula]]:
    for q in qs:
        yield f"pg2-{q}", gen.gen_projective_plane(q)


def cycle_family(ts: Iterable[int]) -> Iterator[tuple[str, Formula]]:
    for t in ts:
        yield f"cycle-{t}", gen.gen_cycle(t)


def blocks_family(ms: Iterable[int], ks: Iterable[int]) -> Iterator[tuple[str, Formula]]:
    ks = list(ks)
    for m in ms:
        for k in ks:
            yield f"blocks-{m}x{k}", gen.gen_disjoint_blocks(m, k)


def search_family(ks: Iterable[int], l: int, d: int, budget: int) -> Iterator[tuple[str, Formula]]:
    """Search outputs for each k; parameter sets without integral sizes or
    without an instance within budget are skipped."""
    for k in ks:
        try:
            f = gen.gen_dlcnf_search(k, l, d, budget=budget)
        except (InconsistentParameters, BudgetExhausted):
            continue
        if f is not None:
            yield f"search-k{k}-l{l}-d{d}", f


def _ln_binomial(n: int, w: int) -> float:
    return math.lgamma(n + 1) - math.lgamma(w + 1) - math.lgamma(n - w + 1)


def bench_record(
    name: str, formula: Formula, solve: bool = False, budget: Optional[int] = None,
    oracle_max_n: int = 20,
) -> BenchRecord:
    report = cl.classify(formula)
    n, m, l = formula.n, formula.m, report.l
    if l is None or not formula.is_monotone:
        raise ValueError(f"{name}: bench instances must be monotone and regular")
    screen = xsat_prescreen(formula)
    m_over_l = Fraction(m, l)
    count = ln_count = None
    if screen.passed:
        count = math.comb(n, m // l)
        ln_count = _ln_binomial(n, m // l)
    upper = within = None
    if report.linear:
        d_bound = report.d if report.d is not None else report.mean_disjointedness
        upper = ml_upper_bound(n, l, d_bound)
        within = m / l <= upper + BOUND_SLACK
    rec = BenchRecord(
        instance=name, n=n, m=m, k=report.k, l=l, d=report.d,
        mean_d=report.mean_disjointedness, m_over_l=m_over_l,
        prescreen=str(screen), candidate_count=count, ln_candidate_count=ln_count,
        ln_n_pow_sqrt_n=math.sqrt(n) * math.log(n),
        upper_bound=upper, within_upper_bound=within,
    )
    if solve:
        t0 = time.perf_counter()
        restricted = weight_restricted_xsat(formula, budget=budget)
        rec.restricted_seconds = time.perf_counter() - t0
        rec.restricted_status = restricted.status.value
        rec.restricted_count = restricted.model_count
        rec.restricted_candidates = restricted.candidates_examined
        if n <= oracle_max_n:
            t0 = time.perf_counter()
            try:
                oracle = brute_force_xsat(formula, budget=budget)
            except TooLarge:
                oracle = None
            rec.oracle_seconds = time.perf_counter() - t0
            if oracle is not None:
                rec.oracle_status = oracle.status.value
                rec.oracle_count = oracle.model_count
                rec.agree = (
                    oracle.status == restricted.status
                    and oracle.model_count == restricted.model_count
                    and oracle.first_model == restricted.first_model
                )
    return rec


def run_bench(instances, solve=False, budget=None, oracle_max_n=20) -> list[BenchRecord]:
    return [bench_record(name, f, solve, budget, oracle_max_n) for name, f in instances]


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, float):
        return repr(round(value, 12))
    return str(value)


def records_to_csv(records: Iterable[BenchRecord], include_timing: bool = True) -> str:
    cols = [c for c in COLUMNS if include_timing or c not in TIMING_COLUMNS]
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(cols)
    for rec in records:
        row = asdict(rec)
        w.writerow([_cell(row[c]) for c in cols])
    return buf.getvalue()
