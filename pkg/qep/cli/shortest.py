"""
Command line interface for the ``shortest`` command.
"""

from argparse import RawDescriptionHelpFormatter

from qep.core.errors import NotProvableError
from qep.core.parser import format_rational, render
from qep.schemas.document import OutputDocument
from qep.services.prover import render_proof
from qep.services.shortest import shortest_proof
from qep.cli.common import (
    add_query_arguments,
    certificate_payload,
    emit,
    load_query,
    pivot_rule,
    query_echo,
    stopwatch,
    write_document,
)

HELP = "Find a proof of minimal ℓ1 weight."

EPILOG = """
Examples:

  qep shortest "S(A,B,C) - S(A|B,C) - S(B|A,C) - S(C|A,B) >= 0"
"""


def add_parser_shortest(parser):
    """Add a ``shortest`` command to the parser."""
    p = parser.add_parser(
        "shortest", help=HELP, description=HELP, epilog=EPILOG, formatter_class=RawDescriptionHelpFormatter,
    )
    add_query_arguments(p)
    p.set_defaults(func=execute)


def execute(args) -> int:
    """Executes the ``shortest`` command."""
    query = load_query(args)
    try:
        with stopwatch() as watch:
            result = shortest_proof(query, pivot_rule(args))
    except NotProvableError as exc:
        if not args.json:
            raise
        write_document(OutputDocument(
            command="shortest",
            query=query_echo(query),
            status="not_provable",
            message=exc.detail,
        ))
        return exc.exit_code

    if args.json:
        write_document(OutputDocument(
            command="shortest",
            query=query_echo(query),
            status="provable",
            certificate=certificate_payload(query, result.certificate),
            timing=watch.timing(),
        ))
        return 0

    emit(f"Shortest proof of {render(query.b)}")
    emit(f"(ℓ1 weight {format_rational(result.l1_weight)}, {result.term_count} terms):")
    emit(render_proof(result.certificate))
    return 0
