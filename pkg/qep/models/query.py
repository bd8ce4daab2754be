from dataclasses import dataclass

from qep.core.entropy import LinearForm, SystemContext
from qep.core.errors import ContextError


@dataclass(frozen=True)
class Query:
    """An inequality ``b⊤s >= 0`` under equality constraints ``Qs = 0``."""

    context: SystemContext
    b: LinearForm
    constraints: tuple[LinearForm, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "constraints", tuple(self.constraints))
        for form in (self.b, *self.constraints):
            if form.context != self.context:
                raise ContextError("all forms of a query must share its context")

    @property
    def q(self) -> int:
        return len(self.constraints)
