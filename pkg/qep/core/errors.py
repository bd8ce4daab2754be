"""
Exception hierarchy for the prover.

Every error carries the process exit code the CLI reports for it:
2 for bad input, 1 for "nothing to do" outcomes on a valid query,
3 for engine failures.
"""

from typing import Optional


class QepError(Exception):
    exit_code: int = 3

    def __init__(self, detail: str):
        super().__init__(detail)
        self.detail = detail


class InputError(QepError):
    exit_code = 2


class ParseError(InputError):
    def __init__(self, detail: str, text: str = "", position: Optional[int] = None):
        self.text = text
        self.position = position
        if position is not None:
            detail = f"{detail} at position {position}"
        super().__init__(detail)

    def caret(self) -> str:
        """Two-line diagnostic pointing at the offending character."""
        if self.position is None or not self.text:
            return self.detail
        return f"{self.detail}\n  {self.text}\n  {' ' * self.position}^"


class ContextError(InputError):
    pass


class NotProvableError(QepError):
    exit_code = 1


class NothingToRefuteError(QepError):
    exit_code = 1


class InternalError(QepError):
    exit_code = 3


class LpResourceError(InternalError):
    pass


class CertificateError(InternalError):
    pass


class InconsistentHintError(InternalError):
    pass
