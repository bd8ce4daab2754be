import logging
import sys

from qep.core.config import get_settings

LOG_FORMAT = "%(levelname)-5.5s [%(name)s] %(message)s"
DATE_FORMAT = "%H:%M:%S"


def configure_logging(verbosity: int = 0) -> None:
    """Route the ``qep`` loggers to stderr; stdout is reserved for documents."""
    settings = get_settings()
    if verbosity >= 2:
        level = logging.DEBUG
    elif verbosity == 1:
        level = logging.INFO
    else:
        level = logging.getLevelName(settings.QEP_LOG_LEVEL.upper())
        if not isinstance(level, int):
            level = logging.WARNING

    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter(LOG_FORMAT, datefmt=DATE_FORMAT))

    logger = logging.getLogger("qep")
    logger.handlers.clear()
    logger.addHandler(handler)
    logger.setLevel(level)
    logger.propagate = False
