"""
Arguments, document builders and text formatting shared by the commands.
"""

import sys
import time
from contextlib import contextmanager
from typing import Iterator, Optional

from qep.core.entropy import LinearForm
from qep.core.lp import PivotRule
from qep.core.parser import build_query, format_rational, render, render_constraint, render_expression
from qep.models.certificate import ProofCertificate
from qep.models.hints import CheckResult, HintReport
from qep.models.query import Query
from qep.schemas.document import (
    CertificatePayload,
    CheckPayload,
    HintPayload,
    OutputDocument,
    QueryEcho,
    Term,
    Timing,
    rational,
)
from qep.services.elemental import describe_row, generate_elemental


def add_query_arguments(p) -> None:
    p.add_argument(
        "inequality",
        help="The inequality, e.g. 'I(A;B|C) >= 0' or 'S(A|B) >= 0'.",
    )
    p.add_argument(
        "-c", "--constraint",
        action="append",
        default=[],
        metavar="EQ",
        help="An equality constraint such as 'I(A;C|B) = 0'. Repeatable.",
    )
    p.add_argument(
        "--parties",
        help="Comma-separated party roster, e.g. A,B,C. Defaults to the "
             "parties mentioned in the inequality and constraints; required "
             "when those name fewer than two parties, as in '0 >= 0'.",
    )
    add_common_arguments(p)


def add_common_arguments(p) -> None:
    p.add_argument(
        "--json",
        action="store_true",
        help="Print a JSON document instead of text."
    )
    p.add_argument(
        "--max-parties",
        type=int,
        default=None,
        metavar="N",
        help="Override QEP_MAX_PARTIES for this invocation."
    )
    p.add_argument(
        "--pivot",
        choices=[rule.value for rule in PivotRule],
        default=None,
        help="Simplex pivot rule (default from QEP_PIVOT_RULE)."
    )


def split_parties(text: Optional[str]) -> Optional[list[str]]:
    if not text:
        return None
    return [name.strip() for name in text.split(",") if name.strip()]


def pivot_rule(args) -> Optional[PivotRule]:
    return PivotRule(args.pivot) if args.pivot else None


def load_query(args) -> Query:
    return build_query(
        args.inequality,
        args.constraint,
        parties=split_parties(args.parties),
        max_parties=args.max_parties,
    )


class Stopwatch:
    elapsed_us: int = 0

    def timing(self) -> Timing:
        return Timing(elapsed_us=self.elapsed_us)


@contextmanager
def stopwatch() -> Iterator[Stopwatch]:
    watch = Stopwatch()
    start = time.perf_counter_ns()
    try:
        yield watch
    finally:
        watch.elapsed_us = (time.perf_counter_ns() - start) // 1000


def emit(text: str) -> None:
    sys.stdout.write(text.rstrip("\n") + "\n")


def query_echo(query: Query) -> QueryEcho:
    return QueryEcho(
        inequality=render(query.b),
        constraints=[render_constraint(form) for form in query.constraints],
        parties=list(query.context.parties),
    )


def certificate_payload(query: Query, certificate: ProofCertificate) -> CertificatePayload:
    system = generate_elemental(query.context)
    return CertificatePayload(
        y=[
            Term(index=i, row=describe_row(system.rows[i]), coeff=rational(value))
            for i, value in enumerate(certificate.y) if value
        ],
        mu=[
            Term(index=j, row=render_constraint(query.constraints[j]), coeff=rational(value))
            for j, value in enumerate(certificate.mu) if value
        ],
        l1_weight=rational(certificate.l1_weight),
        term_count=certificate.term_count,
    )


def vector_payload(form: LinearForm) -> list[str]:
    return [rational(value) for value in form.coeffs]


def hint_payload(report: HintReport) -> HintPayload:
    return HintPayload(
        tight_equalities=list(report.tight_equalities),
        constraint_equalities=list(report.constraint_equalities),
        bounds=report.bound_conditions,
        optimal_value=rational(report.optimal_value),
        predicted_violation=render_expression(report.predicted_violation),
        lambda_=[rational(value) for value in report.lambda_star],
        l1_weight=rational(report.l1_weight),
        s_star=vector_payload(report.s_star) if report.s_star is not None else None,
        diagnostics=list(report.diagnostics),
    )


def check_payload(result: CheckResult) -> CheckPayload:
    return CheckPayload(
        in_cone=result.in_cone,
        tight_equalities_hold=result.tight_equalities_hold,
        constraints_hold=result.constraints_hold,
        bounds_hold=result.bounds_hold,
        value=rational(result.value),
        violated_rows=list(result.violated_rows),
    )


def format_vector(form: LinearForm) -> str:
    context = form.context
    return ", ".join(
        f"S({context.label(subset)})={format_rational(form[subset])}" for subset in context.subsets()
    )


def format_hints(report: HintReport, title: str = "Counterexample hints") -> str:
    lines = [f"{title} (bounded optimum {format_rational(report.optimal_value)}):"]
    lines.append("  an entropic vector s satisfying")
    lines += [f"    {text}" for text in report.tight_equalities]
    lines += [f"    {text}" for text in report.constraint_equalities]
    lines.append(f"    {report.bound_conditions}")
    lines.append(f"  has b·s = {render_expression(report.predicted_violation)} < 0.")
    lines += [f"  note: {text}" for text in report.diagnostics]
    return "\n".join(lines)


def write_document(document: OutputDocument) -> None:
    emit(document.to_json())
