from qep.models.query import Query
from qep.models.elemental import ElementalRow, ElementalSystem, RowKind
from qep.models.certificate import ProofCertificate, ShortestProofResult, Verdict, VerdictStatus, ViolatingRay
from qep.models.hints import BoundMatrix, CheckResult, HintReport

__all__ = [
    "Query",
    "ElementalRow", "ElementalSystem", "RowKind",
    "ProofCertificate", "ShortestProofResult", "Verdict", "VerdictStatus", "ViolatingRay",
    "BoundMatrix", "CheckResult", "HintReport",
]
