import logging
import sys
from typing import Optional, Sequence

from qep.cli import build_parser
from qep.core.errors import InternalError, ParseError, QepError
from qep.core.log import configure_logging

logger = logging.getLogger(__name__)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2

    configure_logging(args.verbose)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"qep: parse error: {exc.caret()}", file=sys.stderr)
        return exc.exit_code
    except QepError as exc:
        logger.debug("%s raised", type(exc).__name__, exc_info=True)
        print(f"qep: {exc.detail}", file=sys.stderr)
        return exc.exit_code
    except Exception:
        logger.exception("internal error")
        return InternalError.exit_code


if __name__ == "__main__":
    sys.exit(main())
