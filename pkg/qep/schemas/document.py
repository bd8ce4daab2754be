from fractions import Fraction
from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field

SCHEMA_VERSION = 1

Status = Literal["provable", "not_provable", "confirmed", "not_confirmed"]


def rational(value: Fraction) -> str:
    """Exact ``p/q`` text; the denominator is always written, even when it is 1."""
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


class QueryEcho(BaseModel):
    inequality: str
    constraints: list[str] = []
    parties: list[str]


class Term(BaseModel):
    index: int
    row: str
    coeff: str


class CertificatePayload(BaseModel):
    y: list[Term]
    mu: list[Term] = []
    l1_weight: str
    term_count: int


class HintPayload(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    tight_equalities: list[str]
    constraint_equalities: list[str] = []
    bounds: str
    optimal_value: str
    predicted_violation: str
    lambda_: list[str] = Field(alias="lambda")
    l1_weight: str
    s_star: Optional[list[str]] = None
    diagnostics: list[str] = []


class CheckPayload(BaseModel):
    in_cone: bool
    tight_equalities_hold: bool
    constraints_hold: bool
    bounds_hold: bool
    value: str
    violated_rows: list[int] = []


class ElementalRowPayload(BaseModel):
    index: int
    kind: str
    description: str
    coefficients: list[str]


class Timing(BaseModel):
    elapsed_us: int


class OutputDocument(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    schema_version: int = SCHEMA_VERSION
    command: Literal["prove", "shortest", "check", "elemental"]
    query: Optional[QueryEcho] = None
    status: Optional[Status] = None
    certificate: Optional[CertificatePayload] = None
    hints: Optional[HintPayload] = None
    shortest_hints: Optional[HintPayload] = None
    ray: Optional[list[str]] = None
    check: Optional[CheckPayload] = None
    parties: Optional[list[str]] = None
    m: Optional[int] = None
    k: Optional[int] = None
    rows: Optional[list[ElementalRowPayload]] = None
    message: Optional[str] = None
    timing: Optional[Timing] = None

    def to_json(self) -> str:
        return self.model_dump_json(by_alias=True, exclude_none=True, indent=2)

    @classmethod
    def from_json(cls, text: str) -> "OutputDocument":
        return cls.model_validate_json(text)
