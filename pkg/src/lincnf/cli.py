"""Command-line front end: ``lincnf {analyze,solve,generate,bench,verify}``.

Exit codes: 0 success, 1 generator/usage failure, 2 parse error,
3 identity violation, 4 solver precondition violation.
"""

from __future__ import annotations

import argparse
import logging
import os
import random
import sys
from fractions import Fraction

from . import bench
from . import classifier as cl
from . import generators as gen
from .dimacs import dumps_report, parse_dimacs, write_dimacs
from .errors import (
    BudgetExhausted,
    ClassPreconditionError,
    DimacsError,
    FormulaError,
    LincnfError,
    TooLarge,
)
from .formula import Formula, stats
from .identities import bounds_report, identity_suite, xsat_prescreen
from .xsat import brute_force_xsat, model_to_v_line, weight_restricted_xsat

log = logging.getLogger("lincnf")

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_IDENTITY, EXIT_PRECONDITION = 0, 1, 2, 3, 4


class ParseFailure(Exception):
    pass


def _default_budget():
    raw = os.environ.get("LINCNF_BUDGET")
    return int(raw) if raw else None


def _load(path) -> Formula:
    try:
        with open(path, "rb") as fh:
            data = fh.read()
        _, formula = parse_dimacs(data)
    except OSError as exc:
        raise ParseFailure(f"{path}: {exc.strerror}") from None
    except (DimacsError, FormulaError) as exc:
        raise ParseFailure(f"{path}: {exc}") from None
    return formula


def analysis_report(formula: Formula, max_d=None, max_mean_d=None) -> tuple[dict, bool]:
    """The JSON analysis report and whether every applicable identity held."""
    report = cl.classify(formula, max_d=max_d, max_mean_d=max_mean_d)
    out = {"m": formula.m, "n": formula.n}
    out.update(report.to_dict())
    if formula.m:
        s = stats(formula)
        out["stats"] = {
            "kBar": s.k_bar, "k2Bar": s.k2_bar, "lBar": s.l_bar, "l2Bar": s.l2_bar,
            "dBar": report.mean_disjointedness,
        }
        if report.mean_independence is not None:
            out["stats"]["vBar"] = report.mean_independence
    identities = identity_suite(formula)
    out["identities"] = [r.to_dict() for r in identities]
    if not report.linear:
        out["identitiesSkipped"] = "NotLinear"
    if report.monotone and report.l is not None:
        out["prescreen"] = str(xsat_prescreen(formula))
    bounds = bounds_report(formula, report)
    if bounds is not None:
        out["bounds"] = bounds
    return out, all(r.holds for r in identities)


def cmd_analyze(args) -> int:
    formula = _load(args.path)
    max_mean_d = Fraction(args.max_mean_d) if args.max_mean_d is not None else None
    report, ok = analysis_report(formula, args.max_d, max_mean_d)
    print(dumps_report(report))
    if not ok:
        print("identity violation: this is an implementation bug", file=sys.stderr)
        return EXIT_IDENTITY
    return EXIT_OK


def _result_dict(formula, result):
    d = result.to_dict()
    if result.first_model is not None:
        d["vLine"] = model_to_v_line(formula, result.first_model)
    return d


def cmd_solve(args) -> int:
    formula = _load(args.path)
    budget = args.budget if args.budget is not None else _default_budget()
    out = {}
    try:
        if args.method in ("oracle", "both"):
            out["oracle"] = brute_force_xsat(formula, budget=budget)
        if args.method in ("restricted", "both"):
            out["restricted"] = weight_restricted_xsat(formula, budget=budget, workers=args.workers)
    except (ClassPreconditionError, TooLarge) as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        witness = _precondition_witness(formula)
        if witness:
            print(witness, file=sys.stderr)
        return EXIT_PRECONDITION
    doc = {name: _result_dict(formula, r) for name, r in out.items()}
    if len(out) == 2:
        a, b = out["oracle"], out["restricted"]
        doc["agree"] = (
            a.status == b.status and a.model_count == b.model_count and a.first_model == b.first_model
        )
    print(dumps_report(doc))
    return EXIT_OK


def _precondition_witness(formula) -> str:
    report = cl.classify(formula)
    if report.monotone_witness is not None:
        i, lit = report.monotone_witness
        return f"witness: clause {i} contains negative literal {lit}"
    if formula.n and report.l is None:
        a, b = report.regularity.witness
        return f"witness: l({a})={formula.occurrence(a)}, l({b})={formula.occurrence(b)}"
    return ""


def cmd_generate(args) -> int:
    kind = args.kind
    try:
        if kind == "projective":
            f = gen.gen_projective_plane(_need(args, "q"))
        elif kind == "cycle":
            f = gen.gen_cycle(_need(args, "t"))
        elif kind == "blocks":
            f = gen.gen_disjoint_blocks(_need(args, "m"), _need(args, "k"))
        elif kind == "search":
            budget = args.budget or _default_budget() or 1_000_000
            f = gen.gen_dlcnf_search(_need(args, "k"), _need(args, "l"), _need(args, "d"),
                                     budget=budget, seed=args.seed)
            if f is None:
                print("no instance exists: search space exhausted", file=sys.stderr)
                return EXIT_FAIL
        elif kind == "random":
            f = gen.gen_random_linear(_need(args, "n"), args.k_min or 1, args.k_max or args.k_min or 1,
                                      seed=args.seed or 0, max_clauses=args.m)
        else:  # argparse restricts choices
            raise AssertionError(kind)
    except (LincnfError, ValueError) as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL
    report = cl.classify(f)
    fmt = lambda v: "-" if v is None else v  # noqa: E731
    comments = [gen.class_comment(fmt(report.k), fmt(report.l), fmt(report.d), fmt(args.seed)),
                f"generator {kind}"]
    data = write_dimacs(f, comments=comments)
    if args.out:
        with open(args.out, "wb") as fh:
            fh.write(data)
    else:
        sys.stdout.write(data.decode("ascii"))
    return EXIT_OK


def _need(args, name):
    value = getattr(args, name)
    if value is None:
        raise ValueError(f"--{name} is required for --kind={args.kind}")
    return value


def cmd_bench(args) -> int:
    budget = args.budget if args.budget is not None else _default_budget()
    if args.family == "projective":
        instances = bench.projective_family(args.q or [2, 3])
    elif args.family == "cycle":
        instances = bench.cycle_family(range(2, (args.t_max or 4) + 1))
    elif args.family == "blocks":
        instances = bench.blocks_family(range(1, (args.m_max or 3) + 1), range(1, (args.k_max or 3) + 1))
    else:
        instances = bench.search_family(args.k or range(1, 7), args.l or 2, args.d or 0,
                                        budget=args.search_budget)
    try:
        records = bench.run_bench(instances, solve=args.solve, budget=budget)
    except LincnfError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL
    text = bench.records_to_csv(records, include_timing=not args.no_timing)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def fuzz_formulas(count: int, seed: int, max_clauses: int = 40):
    """Deterministic stream of random linear formulas for identity fuzzing."""
    rng = random.Random(seed)
    for i in range(count):
        target_n = rng.randint(1, 30)
        k_max = rng.randint(1, min(target_n, 6))
        k_min = rng.randint(1, k_max)
        sub_seed = rng.getrandbits(64)
        yield f"fuzz-{i}", gen.gen_random_linear(target_n, k_min, k_max, sub_seed, max_clauses=max_clauses)


def cmd_verify(args) -> int:
    if args.path:
        try:
            items = [(args.path, _load(args.path))]
        except ParseFailure as exc:
            print(exc, file=sys.stderr)
            return EXIT_PARSE
    elif args.fuzz:
        items = fuzz_formulas(args.fuzz, args.seed)
    else:
        print("give a file or --fuzz=N", file=sys.stderr)
        return EXIT_FAIL
    failures = checked = 0
    for name, f in items:
        if not cl.is_linear(f):
            print(f"{name}: NotLinear, identity checks skipped", file=sys.stderr)
            continue
        for r in identity_suite(f):
            checked += 1
            if not r.holds:
                failures += 1
                print(f"{name}: {r.name} FAILED {dumps_report(r.to_dict())}")
    print(f"identities checked: {checked}, failed: {failures}")
    return EXIT_OK if failures == 0 else EXIT_IDENTITY


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="lincnf", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="classify a DIMACS file and check identities")
    a.add_argument("path")
    a.add_argument("--max-d", type=int)
    a.add_argument("--max-mean-d", type=str, help="rational bound, e.g. 3/2")
    a.set_defaults(func=cmd_analyze)

    s = sub.add_parser("solve", help="decide and count XSAT models")
    s.add_argument("path")
    s.add_argument("--method", choices=["oracle", "restricted", "both"], default="both")
    s.add_argument("--budget", type=int)
    s.add_argument("--workers", type=int, default=1)
    s.set_defaults(func=cmd_solve)

    g = sub.add_parser("generate", help="write a certified instance as DIMACS")
    g.add_argument("--kind", required=True, choices=["projective", "cycle", "blocks", "search", "random"])
    for name in ("k", "l", "d", "q", "t", "m", "n", "k-min", "k-max", "seed", "budget"):
        g.add_argument(f"--{name}", type=int)
    g.add_argument("--out")
    g.set_defaults(func=cmd_generate)

    b = sub.add_parser("bench", help="CSV sweep of candidate counts and solver timings")
    b.add_argument("--family", required=True, choices=["projective", "cycle", "blocks", "search"])
    b.add_argument("--q", type=int, nargs="+")
    b.add_argument("--t-max", type=int)
    b.add_argument("--m-max", type=int)
    b.add_argument("--k-max", type=int)
    b.add_argument("--k", type=int, nargs="+")
    b.add_argument("--l", type=int)
    b.add_argument("--d", type=int)
    b.add_argument("--search-budget", type=int, default=1_000_000)
    b.add_argument("--solve", action="store_true", help="run both solvers and time them")
    b.add_argument("--budget", type=int)
    b.add_argument("--no-timing", action="store_true", help="drop the *_seconds columns")
    b.add_argument("--out")
    b.set_defaults(func=cmd_bench)

    v = sub.add_parser("verify", help="run the identity suite on a file or on random formulas")
    v.add_argument("path", nargs="?")
    v.add_argument("--fuzz", type=int)
    v.add_argument("--seed", type=int, default=0)
    v.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s", stream=sys.stderr)
    try:
        return args.func(args)
    except ParseFailure as exc:
        print(exc, file=sys.stderr)
        return EXIT_PARSE
    except BudgetExhausted as exc:
        print(f"BudgetExhausted: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
