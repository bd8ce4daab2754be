"""
Deciding whether ``b⊤s >= 0`` holds on the von-Neumann cone under ``Qs = 0``.

The decision solves one feasibility LP in the certificate variables:
find y >= 0 and free mu with ``y⊤G - mu⊤Q = b⊤``. A feasible point is the
proof; when the system is infeasible its Farkas multipliers, negated, are a
vector s* with ``Gs* >= 0``, ``Qs* = 0`` and ``b⊤s* < 0``.
"""

import logging
from fractions import Fraction
from math import gcd, lcm
from typing import Optional, Sequence

from qep.core.entropy import LinearForm, combine
from qep.core.errors import CertificateError, InternalError
from qep.core.lp import Domain, LpProblem, LpRow, LpStatus, PivotRule, Relation, solve
from qep.core.parser import format_rational, render_constraint
from qep.models.certificate import ProofCertificate, Verdict, VerdictStatus, ViolatingRay
from qep.models.elemental import ElementalSystem
from qep.models.query import Query
from qep.services.elemental import describe_row, generate_elemental

logger = logging.getLogger(__name__)

ZERO = Fraction(0)


def certificate_rows(
    system: ElementalSystem,
    query: Query,
    target: LinearForm,
    extra_vars: int = 0,
    extra_columns: Sequence[LinearForm] = (),
) -> list[LpRow]:
    """One equality row per coordinate: ``sum_i y_i G_i - sum_j mu_j Q_j = target``.

    Columns are y (one per elemental row), then mu (one per constraint),
    then ``extra_columns`` as given, then ``extra_vars`` zero columns.
    """
    rows = []
    for c in range(query.context.k):
        coeffs = [form.coeffs[c] for form in system.matrix]
        coeffs += [-form.coeffs[c] for form in query.constraints]
        coeffs += [form.coeffs[c] for form in extra_columns]
        coeffs += [ZERO] * extra_vars
        rows.append(LpRow(tuple(coeffs), Relation.EQ, target.coeffs[c]))
    return rows


def build_certificate(
    system: ElementalSystem,
    query: Query,
    y: Sequence[Fraction],
    mu: Sequence[Fraction],
) -> ProofCertificate:
    terms = tuple((value, describe_row(row)) for value, row in zip(y, system.rows) if value)
    constraint_terms = tuple(
        (value, render_constraint(form)) for value, form in zip(mu, query.constraints) if value
    )
    return ProofCertificate(tuple(y), tuple(mu), terms, constraint_terms)


def certificate_identity(system: ElementalSystem, query: Query, certificate: ProofCertificate) -> LinearForm:
    """``y⊤G - mu⊤Q`` as a linear form."""
    return combine(
        query.context,
        [*zip(certificate.y, system.matrix), *((-v, form) for v, form in zip(certificate.mu, query.constraints))],
    )


def verify_certificate(query: Query, certificate: ProofCertificate) -> bool:
    """Exact check of ``y >= 0`` and ``y⊤G - mu⊤Q = b⊤``, independent of the LP engine."""
    system = generate_elemental(query.context)
    if len(certificate.y) != system.m or len(certificate.mu) != query.q:
        return False
    if any(value < 0 for value in certificate.y):
        return False
    return certificate_identity(system, query, certificate) == query.b


def primitive(form: LinearForm) -> LinearForm:
    """Positive rescaling of ``form`` to coprime integer coefficients."""
    if form.is_zero():
        return form
    denominators = lcm(*(c.denominator for c in form.coeffs))
    scaled = [c * denominators for c in form.coeffs]
    divisor = gcd(*(int(c) for c in scaled))
    return LinearForm(form.context, tuple(c / divisor for c in scaled))


def is_violating_ray(system: ElementalSystem, query: Query, s: LinearForm) -> bool:
    if any(row.dot(s) < 0 for row in system.matrix):
        return False
    if any(form.dot(s) != 0 for form in query.constraints):
        return False
    return query.b.dot(s) < 0


def prove(query: Query, pivot_rule: Optional[PivotRule] = None) -> Verdict:
    system = generate_elemental(query.context)
    m = system.m
    if query.b.is_zero():
        certificate = ProofCertificate((ZERO,) * m, (ZERO,) * query.q)
        return Verdict(VerdictStatus.PROVABLE, certificate=certificate)

    problem = LpProblem(
        objective=(ZERO,) * (m + query.q),
        rows=tuple(certificate_rows(system, query, query.b)),
        domains=(Domain.NONNEG,) * m + (Domain.FREE,) * query.q,
    )
    outcome = solve(problem, pivot_rule)

    if outcome.status is LpStatus.OPTIMAL:
        certificate = build_certificate(system, query, outcome.point[:m], outcome.point[m:])
        if not verify_certificate(query, certificate):
            raise CertificateError("proof certificate failed exact verification")
        logger.info("provable with %d elemental terms", certificate.term_count)
        return Verdict(VerdictStatus.PROVABLE, certificate=certificate)

    if outcome.status is LpStatus.INFEASIBLE:
        ray = primitive(LinearForm(query.context, tuple(-u for u in outcome.farkas)))
        if not is_violating_ray(system, query, ray):
            raise CertificateError("violating ray failed exact verification")
        logger.info("not provable; violating ray found after %d pivots", outcome.pivots)
        return Verdict(VerdictStatus.NOT_PROVABLE, ray=ViolatingRay(ray))

    raise InternalError("certificate feasibility LP reported an unbounded objective")


def primal_status(query: Query, pivot_rule: Optional[PivotRule] = None) -> VerdictStatus:
    """Decide by minimizing ``b⊤s`` over ``Gs >= 0, Qs = 0`` directly."""
    system = generate_elemental(query.context)
    rows = [LpRow(form.coeffs, Relation.GE) for form in system.matrix]
    rows += [LpRow(form.coeffs, Relation.EQ) for form in query.constraints]
    problem = LpProblem(query.b.coeffs, tuple(rows), (Domain.FREE,) * query.context.k)
    outcome = solve(problem, pivot_rule)
    if outcome.status is LpStatus.OPTIMAL and outcome.value == 0:
        return VerdictStatus.PROVABLE
    if outcome.status is LpStatus.UNBOUNDED:
        return VerdictStatus.NOT_PROVABLE
    raise InternalError(f"primal LP returned {outcome.status.value} with value {outcome.value}")


def render_proof(certificate: ProofCertificate) -> str:
    """One ``coeff · [inequality]`` line per term; the lines sum to ``b⊤s >= 0``."""
    lines = [f"{format_rational(value)} · [{text}]" for value, text in certificate.terms]
    lines += [
        f"{format_rational(-value)} · [using constraint {text}]"
        for value, text in certificate.constraint_terms
    ]
    if not lines:
        return "0 >= 0 (trivial)"
    return "\n".join(lines)
