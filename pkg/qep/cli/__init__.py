from argparse import ArgumentParser, RawDescriptionHelpFormatter

from qep.cli import check, elemental, prove, shortest

PROG = "qep"


def build_parser() -> ArgumentParser:
    parser = ArgumentParser(
        prog=PROG,
        description="Prove or refute linear von-Neumann entropy inequalities.",
        formatter_class=RawDescriptionHelpFormatter,
    )
    parser.add_argument(
        "-v", "--verbose",
        action="count",
        default=0,
        help="Log progress to stderr (-v info, -vv debug).",
    )
    commands = parser.add_subparsers(dest="command", metavar="command")
    commands.required = True
    prove.add_parser_prove(commands)
    shortest.add_parser_shortest(commands)
    check.add_parser_check(commands)
    elemental.add_parser_elemental(commands)
    return parser
