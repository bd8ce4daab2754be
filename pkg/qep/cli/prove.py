"""
Command line interface for the ``prove`` command.
"""

from argparse import RawDescriptionHelpFormatter

from qep.core.parser import render
from qep.schemas.document import OutputDocument
from qep.services.prover import prove, render_proof
from qep.services.refute import hints, shortest_hints
from qep.cli.common import (
    add_query_arguments,
    certificate_payload,
    emit,
    format_hints,
    format_vector,
    hint_payload,
    load_query,
    pivot_rule,
    query_echo,
    stopwatch,
    vector_payload,
    write_document,
)

HELP = "Decide whether an inequality follows from SSA and WM."

EPILOG = """
Examples:

  qep prove "I(A;C|B) >= 0"
  qep prove "S(A|B) >= 0" --parties A,B,C --hints
  qep prove "I(C;D) >= I(A,B;C)" -c "I(A;C|B)=0" -c "I(B;C|A)=0" -c "I(A;B|D)=0"

Exit status is 0 when provable and 1 when not.
"""


def add_parser_prove(parser):
    """Add a ``prove`` command to the parser."""
    p = parser.add_parser(
        "prove", help=HELP, description=HELP, epilog=EPILOG, formatter_class=RawDescriptionHelpFormatter,
    )
    add_query_arguments(p)
    p.add_argument(
        "--hints",
        action="store_true",
        help="On a negative verdict, also solve the bounded problem and print "
             "the equalities a violating state must satisfy.",
    )
    p.add_argument(
        "--shortest-hints",
        action="store_true",
        help="With --hints, also print the ℓ1-smallest hint system.",
    )
    p.set_defaults(func=execute)


def execute(args) -> int:
    """Executes the ``prove`` command."""
    query = load_query(args)
    rule = pivot_rule(args)
    report = shortest = None
    with stopwatch() as watch:
        verdict = prove(query, rule)
        if not verdict.provable and (args.hints or args.shortest_hints):
            report = hints(query, rule)
            if args.shortest_hints and any(report.lambda_star):
                shortest = shortest_hints(query, report.lambda_star, rule)

    if args.json:
        document = OutputDocument(
            command="prove",
            query=query_echo(query),
            status=verdict.status.value,
            timing=watch.timing(),
        )
        if verdict.provable:
            document.certificate = certificate_payload(query, verdict.certificate)
        else:
            document.ray = vector_payload(verdict.ray.s_star)
            if report is not None:
                document.hints = hint_payload(report)
            if shortest is not None:
                document.shortest_hints = hint_payload(shortest)
        write_document(document)
        return 0 if verdict.provable else 1

    if verdict.provable:
        emit(f"Provable: {render(query.b)}")
        emit(render_proof(verdict.certificate))
        return 0

    emit(f"Not provable by SSA and WM: {render(query.b)}")
    emit(f"Violating direction: {format_vector(verdict.ray.s_star)}")
    if report is not None:
        emit(format_hints(report))
    if shortest is not None:
        emit(format_hints(shortest, title="Shortest counterexample hints"))
    return 1
