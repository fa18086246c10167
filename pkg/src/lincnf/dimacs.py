"""DIMACS CNF reading/writing and the JSON report encoding."""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .errors import (
    ClauseCountMismatch,
    DuplicateVariableInClause,
    MalformedClause,
    MalformedHeader,
    VariableOutOfDeclaredRange,
    ZeroLiteral,
)
from .formula import Formula, build_formula

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class DimacsDocument:
    declared_variables: int
    declared_clauses: int
    clauses: tuple[tuple[int, ...], ...]
    comments: tuple[str, ...] = ()
    warnings: tuple[str, ...] = field(default=(), compare=False)


def parse_dimacs(data: bytes | str) -> tuple[DimacsDocument, Formula]:
    """Parse DIMACS CNF text into a document and a validated formula.

    Comment lines are kept (without the leading ``c`` and one space).
    Clauses may span lines; each one ends at a ``0``. A trailing clause
    with no terminating ``0`` is accepted, as many tools emit it.
    """
    if isinstance(data, bytes):
        try:
            text = data.decode("ascii")
        except UnicodeDecodeError as exc:
            raise MalformedHeader(f"input is not ASCII: {exc}") from None
    else:
        text = data

    comments: list[str] = []
    header = None
    clauses: list[list[int]] = []
    clause_lines: list[int] = []
    current: list[int] = []
    current_line = None

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line[0] == "c":
            comments.append(line[2:] if line.startswith("c ") else line[1:])
            continue
        if line[0] == "%":  # SATLIB end marker
            break
        if line[0] == "p":
            if header is not None:
                raise MalformedHeader("second header line", lineno)
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise MalformedHeader(f"expected 'p cnf <n> <m>', got {line!r}", lineno)
            try:
                n_decl, m_decl = int(parts[2]), int(parts[3])
            except ValueError:
                raise MalformedHeader(f"non-integer counts in {line!r}", lineno) from None
            if n_decl < 0 or m_decl < 0:
                raise MalformedHeader(f"negative counts in {line!r}", lineno)
            header = (n_decl, m_decl)
            continue
        if header is None:
            raise MalformedHeader("clause data before 'p cnf' header", lineno)
        for tok in line.split():
            try:
                lit = int(tok)
            except ValueError:
                raise MalformedClause(f"bad token {tok!r}", lineno) from None
            if current_line is None:
                current_line = lineno
            if lit == 0:
                clauses.append(current)
                clause_lines.append(current_line)
                current, current_line = [], None
                continue
            if abs(lit) > header[0]:
                raise VariableOutOfDeclaredRange(
                    f"variable {abs(lit)} exceeds declared count {header[0]}", lineno
                )
            current.append(lit)
    if current:
        clauses.append(current)
        clause_lines.append(current_line)

    if header is None:
        raise MalformedHeader("missing 'p cnf' header")
    n_decl, m_decl = header
    if len(clauses) != m_decl:
        raise ClauseCountMismatch(f"header declares {m_decl} clauses, found {len(clauses)}")

    try:
        formula = build_formula(clauses, allow_empty_clause=True)
    except (DuplicateVariableInClause, ZeroLiteral) as exc:
        exc.args = (f"line {clause_lines[exc.clause_index]}: {exc.args[0]}",)
        raise

    warnings = []
    unused = n_decl - formula.n
    if unused > 0:
        msg = f"{unused} declared variable(s) do not occur in any clause"
        log.warning(msg)
        warnings.append(msg)

    doc = DimacsDocument(
        declared_variables=n_decl,
        declared_clauses=m_decl,
        clauses=tuple(tuple(c) for c in clauses),
        comments=tuple(comments),
        warnings=tuple(warnings),
    )
    return doc, formula


def read_dimacs(path) -> tuple[DimacsDocument, Formula]:
    with open(path, "rb") as fh:
        return parse_dimacs(fh.read())


def write_dimacs(formula: Formula, declared_n: int | None = None, comments=()) -> bytes:
    """Serialize ``formula``; comments go before the header.

    >>> write_dimacs(build_formula([[1, -2]]))
    b'p cnf 2 1\\n1 -2 0\\n'
    """
    n = max(formula.variables, default=0) if declared_n is None else declared_n
    lines = [f"c {c}" if c else "c" for c in comments]
    lines.append(f"p cnf {n} {formula.m}")
    lines.extend(" ".join([*map(str, c.literals), "0"]) for c in formula.clauses)
    return ("\n".join(lines) + "\n").encode("ascii")


def format_rational(q: Fraction | int) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def parse_rational(s: str) -> Fraction:
    return Fraction(s)


def _jsonable(obj: Any) -> Any:
    if isinstance(obj, bool) or obj is None:
        return obj
    if isinstance(obj, Fraction):
        return format_rational(obj)
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = sorted(obj) if isinstance(obj, (set, frozenset)) else obj
        return [_jsonable(v) for v in items]
    return obj


def dumps_report(report: dict) -> str:
    """Encode a report dict; Fractions become ``"p/q"`` strings."""
    return json.dumps(_jsonable(report), indent=2, sort_keys=False)
