"""
Command line interface for the ``elemental`` command.
"""

from argparse import RawDescriptionHelpFormatter

from qep.core.entropy import SystemContext
from qep.core.errors import InputError
from qep.core.parser import render
from qep.schemas.document import ElementalRowPayload, OutputDocument
from qep.services.elemental import describe_row, generate_basic, generate_elemental
from qep.cli.common import add_common_arguments, emit, split_parties, vector_payload, write_document

HELP = "List the elemental SSA and WM inequalities for n parties."

EPILOG = """
Examples:

  qep elemental -n 3
  qep elemental --parties X,Y,Z --json
  qep elemental -n 3 --basic
"""


def add_parser_elemental(parser):
    """Add an ``elemental`` command to the parser."""
    p = parser.add_parser(
        "elemental", help=HELP, description=HELP, epilog=EPILOG, formatter_class=RawDescriptionHelpFormatter,
    )
    p.add_argument(
        "-n",
        type=int,
        default=None,
        help="Number of parties, named A, B, C, ...",
    )
    p.add_argument(
        "--parties",
        help="Comma-separated party roster; overrides -n.",
    )
    p.add_argument(
        "--basic",
        action="store_true",
        help="List every distinct basic SSA/WM instance instead.",
    )
    add_common_arguments(p)
    p.set_defaults(func=execute)


def _context(args) -> SystemContext:
    names = split_parties(args.parties)
    if names:
        return SystemContext.from_parties(names, args.max_parties)
    if args.n is None:
        raise InputError("give the number of parties with -n or a roster with --parties")
    return SystemContext.default(args.n, args.max_parties)


def execute(args) -> int:
    """Executes the ``elemental`` command."""
    context = _context(args)
    if args.basic:
        rows = [
            ElementalRowPayload(
                index=i, kind="basic", description=render(form), coefficients=vector_payload(form)
            )
            for i, form in enumerate(generate_basic(context))
        ]
    else:
        rows = [
            ElementalRowPayload(
                index=i,
                kind=row.kind.value,
                description=describe_row(row),
                coefficients=vector_payload(row.form),
            )
            for i, row in enumerate(generate_elemental(context).rows)
        ]

    if args.json:
        write_document(OutputDocument(
            command="elemental",
            parties=list(context.parties),
            m=len(rows),
            k=context.k,
            rows=rows,
        ))
        return 0

    for row in rows:
        emit(f"{row.index}: {row.description}")
    return 0
