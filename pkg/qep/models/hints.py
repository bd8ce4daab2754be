from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from qep.core.entropy import LinearForm, SystemContext


@dataclass(frozen=True)
class BoundMatrix:
    """W = [I | 0]: row x selects the single-party coordinate S({x})."""

    context: SystemContext
    rows: tuple[LinearForm, ...]


@dataclass(frozen=True)
class HintReport:
    optimal_value: Fraction
    tight_rows: tuple[int, ...]
    tight_equalities: tuple[str, ...]
    constraint_equalities: tuple[str, ...]
    bound_conditions: str
    predicted_violation: LinearForm
    y_star: tuple[Fraction, ...]
    mu_star: tuple[Fraction, ...]
    lambda_star: tuple[Fraction, ...]
    s_star: Optional[LinearForm] = None
    diagnostics: tuple[str, ...] = ()

    @property
    def l1_weight(self) -> Fraction:
        return sum(self.y_star, Fraction(0)) + sum((abs(v) for v in self.mu_star), Fraction(0))


@dataclass(frozen=True)
class CheckResult:
    in_cone: bool
    tight_equalities_hold: bool
    constraints_hold: bool
    bounds_hold: bool
    value: Fraction
    violated_rows: tuple[int, ...] = ()

    @property
    def confirmed(self) -> bool:
        return (
            self.in_cone
            and self.tight_equalities_hold
            and self.constraints_hold
            and self.bounds_hold
            and self.value < 0
        )
