"""
ℓ1-minimal proof certificates.

The fewest-terms proof is a cardinality problem; it is relaxed to
``min 1⊤y + 1⊤t`` subject to ``y⊤G - mu⊤Q = target⊤``, ``-t <= mu <= t``,
``y, t >= 0``. The reported certificate is ℓ1-optimal; nothing is claimed
about the number of nonzero terms beyond reporting it.
"""

import logging
from fractions import Fraction
from typing import Optional

from qep.core.entropy import LinearForm
from qep.core.errors import CertificateError, NotProvableError
from qep.core.lp import Domain, LpOutcome, LpProblem, LpRow, LpStatus, PivotRule, Relation, solve
from qep.models.certificate import ShortestProofResult
from qep.models.elemental import ElementalSystem
from qep.models.query import Query
from qep.services.elemental import generate_elemental
from qep.services.prover import build_certificate, certificate_rows, verify_certificate

logger = logging.getLogger(__name__)

ZERO = Fraction(0)
ONE = Fraction(1)


def l1_problem(system: ElementalSystem, query: Query, target: LinearForm) -> LpProblem:
    m, q = system.m, query.q
    rows = certificate_rows(system, query, target, extra_vars=q)
    for j in range(q):
        upper = [ZERO] * (m + 2 * q)
        upper[m + q + j] = ONE
        upper[m + j] = -ONE
        lower = list(upper)
        lower[m + j] = ONE
        rows.append(LpRow(tuple(upper), Relation.GE))
        rows.append(LpRow(tuple(lower), Relation.GE))
    return LpProblem(
        objective=(ONE,) * m + (ZERO,) * q + (ONE,) * q,
        rows=tuple(rows),
        domains=(Domain.NONNEG,) * m + (Domain.FREE,) * q + (Domain.NONNEG,) * q,
    )


def solve_l1(
    system: ElementalSystem,
    query: Query,
    target: LinearForm,
    pivot_rule: Optional[PivotRule] = None,
) -> Optional[LpOutcome]:
    """Optimal ℓ1 outcome, or None when no certificate for ``target`` exists."""
    outcome = solve(l1_problem(system, query, target), pivot_rule)
    if outcome.status is LpStatus.INFEASIBLE:
        return None
    if outcome.status is not LpStatus.OPTIMAL:
        raise CertificateError(f"ℓ1 proof LP returned {outcome.status.value}")
    return outcome


def shortest_proof(query: Query, pivot_rule: Optional[PivotRule] = None) -> ShortestProofResult:
    system = generate_elemental(query.context)
    m, q = system.m, query.q
    outcome = solve_l1(system, query, query.b, pivot_rule)
    if outcome is None:
        raise NotProvableError("not provable, no proof to shorten")

    certificate = build_certificate(system, query, outcome.point[:m], outcome.point[m:m + q])
    if not verify_certificate(query, certificate):
        raise CertificateError("shortest proof certificate failed exact verification")
    if certificate.l1_weight != outcome.value:
        raise CertificateError(f"ℓ1 weight {certificate.l1_weight} differs from the LP optimum {outcome.value}")
    logger.info("shortest proof: weight %s with %d terms", certificate.l1_weight, certificate.term_count)
    return ShortestProofResult(certificate, certificate.l1_weight, certificate.term_count)
