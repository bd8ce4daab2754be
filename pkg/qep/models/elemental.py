from dataclasses import dataclass
from enum import Enum
from functools import cached_property

from qep.core.entropy import LinearForm, SystemContext


class RowKind(str, Enum):
    SSA = "SSA"
    WM = "WM"


@dataclass(frozen=True)
class ElementalRow:
    """One elemental inequality ``form·s >= 0`` and the instance it came from.

    SSA rows use ``i < j`` and the conditioning mask ``cond``
    (I = {i} ∪ K, J = {j} ∪ K). WM rows use the shared party ``k`` and the
    masks ``left`` (I) and ``right`` (J) with I ∩ J = {k}.
    """

    kind: RowKind
    form: LinearForm
    i: int = -1
    j: int = -1
    cond: int = 0
    k: int = -1
    left: int = 0
    right: int = 0


@dataclass(frozen=True)
class ElementalSystem:
    context: SystemContext
    rows: tuple[ElementalRow, ...]

    @property
    def m(self) -> int:
        return len(self.rows)

    @cached_property
    def matrix(self) -> tuple[LinearForm, ...]:
        return tuple(row.form for row in self.rows)
