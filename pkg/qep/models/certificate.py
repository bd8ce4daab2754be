from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional

from qep.core.entropy import LinearForm


class VerdictStatus(str, Enum):
    PROVABLE = "provable"
    NOT_PROVABLE = "not_provable"


@dataclass(frozen=True)
class ProofCertificate:
    """``y⊤G - mu⊤Q = b⊤`` with ``y >= 0``.

    ``terms`` pairs each nonzero y entry with its elemental row description;
    ``constraint_terms`` pairs each nonzero mu entry with the rendered constraint.
    """

    y: tuple[Fraction, ...]
    mu: tuple[Fraction, ...] = ()
    terms: tuple[tuple[Fraction, str], ...] = ()
    constraint_terms: tuple[tuple[Fraction, str], ...] = ()

    @property
    def l1_weight(self) -> Fraction:
        return sum(self.y, Fraction(0)) + sum((abs(v) for v in self.mu), Fraction(0))

    @property
    def term_count(self) -> int:
        return sum(1 for v in self.y if v)


@dataclass(frozen=True)
class ViolatingRay:
    s_star: LinearForm


@dataclass(frozen=True)
class Verdict:
    status: VerdictStatus
    certificate: Optional[ProofCertificate] = None
    ray: Optional[ViolatingRay] = None

    def __post_init__(self):
        if self.status is VerdictStatus.PROVABLE and (self.certificate is None or self.ray is not None):
            raise ValueError("a provable verdict carries a certificate and no ray")
        if self.status is VerdictStatus.NOT_PROVABLE and (self.ray is None or self.certificate is not None):
            raise ValueError("a not-provable verdict carries a ray and no certificate")

    @property
    def provable(self) -> bool:
        return self.status is VerdictStatus.PROVABLE


@dataclass(frozen=True)
class ShortestProofResult:
    certificate: ProofCertificate
    l1_weight: Fraction
    term_count: int
