"""
Command line interface for the ``check`` command.
"""

import logging

from argparse import RawDescriptionHelpFormatter

from qep.core.errors import NothingToRefuteError
from qep.core.parser import format_rational, parse_vector, render
from qep.schemas.document import OutputDocument
from qep.services.refute import check_vector, hints
from qep.cli.common import (
    add_query_arguments,
    check_payload,
    emit,
    hint_payload,
    load_query,
    pivot_rule,
    query_echo,
    stopwatch,
    write_document,
)

logger = logging.getLogger(__name__)

HELP = "Check whether an entropic vector violates an inequality."

DESCRIPTION = HELP + """

The vector is either 2^n - 1 comma-separated rationals in canonical
coordinate order (S(A), S(B), S(A,B), S(C), ...) or a list of
assignments such as "S(A)=1, S(B)=1, S(A,C)=1". Unlisted coordinates
are zero.
"""

EPILOG = """
Examples:

  qep check "S(A|B) >= 0" 1,1,0,0,1,1,0 --parties A,B,C
"""


def add_parser_check(parser):
    """Add a ``check`` command to the parser."""
    p = parser.add_parser(
        "check", help=HELP, description=DESCRIPTION, epilog=EPILOG, formatter_class=RawDescriptionHelpFormatter,
    )
    add_query_arguments(p)
    p.add_argument(
        "vector",
        help="The entropic vector to check.",
    )
    p.add_argument(
        "--no-hints",
        action="store_true",
        help="Skip the hint solve; the tight equalities are then not checked.",
    )
    p.set_defaults(func=execute)


def _failures(result) -> list[str]:
    out = []
    if not result.in_cone:
        rows = ", ".join(str(i) for i in result.violated_rows)
        out.append(f"violates elemental rows {rows}")
    if not result.tight_equalities_hold:
        out.append("misses a tight equality")
    if not result.constraints_hold:
        out.append("violates a constraint")
    if not result.bounds_hold:
        out.append("fails the single-party bounds")
    if result.value >= 0:
        out.append(f"b·s = {format_rational(result.value)} is not negative")
    return out


def execute(args) -> int:
    """Executes the ``check`` command."""
    query = load_query(args)
    s = parse_vector(args.vector, query.context)
    report = None
    with stopwatch() as watch:
        if not args.no_hints:
            try:
                report = hints(query, pivot_rule(args))
            except NothingToRefuteError:
                logger.info("inequality is provable; checking without hints")
        result = check_vector(query, s, report)

    status = "confirmed" if result.confirmed else "not_confirmed"
    if args.json:
        document = OutputDocument(
            command="check",
            query=query_echo(query),
            status=status,
            check=check_payload(result),
            timing=watch.timing(),
        )
        if report is not None:
            document.hints = hint_payload(report)
        write_document(document)
        return 0 if result.confirmed else 1

    if result.confirmed:
        emit(f"Confirmed: the vector violates {render(query.b)}")
        emit(f"b·s = {format_rational(result.value)}")
        return 0
    emit(f"Not confirmed for {render(query.b)}:")
    for text in _failures(result):
        emit(f"  {text}")
    return 1
