"""
Counterexample hints for inequalities that are not provable.

Bounding the single-party entropies (``Ws <= 1``) makes
``min b⊤s`` over ``Gs >= 0, Qs = 0`` finite. It is solved through its dual,
whose optimal multipliers satisfy
``b⊤ = y*⊤G - mu*⊤Q - λ*⊤W``, so any entropic vector s' with
``G_i s' = 0`` for every i with ``y*_i > 0``, ``Qs' = 0`` and
``0 < Ws' <= 1`` has ``b⊤s' = -λ*⊤Ws' < 0``.
"""

import logging
from fractions import Fraction
from typing import Optional, Sequence

from qep.core.entropy import LinearForm, combine
from qep.core.errors import CertificateError, ContextError, InconsistentHintError, InternalError, NothingToRefuteError
from qep.core.lp import Domain, LpProblem, LpStatus, PivotRule, solve
from qep.core.parser import render_equality
from qep.models.elemental import ElementalSystem
from qep.models.hints import BoundMatrix, CheckResult, HintReport
from qep.models.query import Query
from qep.services.elemental import generate_elemental
from qep.services.prover import certificate_rows
from qep.services.shortest import solve_l1

logger = logging.getLogger(__name__)

ZERO = Fraction(0)
ONE = Fraction(1)


def bound_matrix(query: Query) -> BoundMatrix:
    context = query.context
    rows = tuple(LinearForm.unit(context, context.singleton(x)) for x in range(context.n))
    return BoundMatrix(context, rows)


def _bound_conditions(bounds: BoundMatrix) -> str:
    context = bounds.context
    entries = ", ".join(f"S({name})" for name in context.parties)
    return f"0 <= {entries} <= 1, at least one > 0"


def _report(
    system: ElementalSystem,
    query: Query,
    bounds: BoundMatrix,
    y: Sequence[Fraction],
    mu: Sequence[Fraction],
    lam: Sequence[Fraction],
    s_star: Optional[LinearForm],
) -> HintReport:
    context = query.context
    identity = combine(
        context,
        [
            *zip(y, system.matrix),
            *((-v, form) for v, form in zip(mu, query.constraints)),
            *((-v, form) for v, form in zip(lam, bounds.rows)),
        ],
    )
    if identity != query.b:
        raise CertificateError("hint multipliers do not reproduce the inequality")

    diagnostics = []
    if not any(lam):
        logger.warning("bound multipliers vanished on a non-provable query")
        diagnostics.append("λ* = 0: the hint system does not force a violation")

    tight_rows = tuple(i for i, value in enumerate(y) if value)
    return HintReport(
        optimal_value=-sum(lam, ZERO),
        tight_rows=tight_rows,
        tight_equalities=tuple(render_equality(system.rows[i].form) for i in tight_rows),
        constraint_equalities=tuple(render_equality(form) for form in query.constraints),
        bound_conditions=_bound_conditions(bounds),
        predicted_violation=combine(context, ((-v, form) for v, form in zip(lam, bounds.rows))),
        y_star=tuple(y),
        mu_star=tuple(mu),
        lambda_star=tuple(lam),
        s_star=s_star,
        diagnostics=tuple(diagnostics),
    )


def hint_problem(system: ElementalSystem, query: Query, bounds: BoundMatrix) -> LpProblem:
    """``min 1⊤λ`` over ``y⊤G - mu⊤Q - λ⊤W = b⊤`` with y, λ >= 0.

    This is the dual of ``min b⊤s`` over ``Gs >= 0, Qs = 0, Ws <= 1``; it has
    one row per coordinate instead of one per elemental row.
    """
    m, q, n = system.m, query.q, query.context.n
    rows = certificate_rows(system, query, query.b, extra_columns=[-form for form in bounds.rows])
    return LpProblem(
        objective=(ZERO,) * (m + q) + (ONE,) * n,
        rows=tuple(rows),
        domains=(Domain.NONNEG,) * m + (Domain.FREE,) * q + (Domain.NONNEG,) * n,
    )


def hints(query: Query, pivot_rule: Optional[PivotRule] = None) -> HintReport:
    system = generate_elemental(query.context)
    bounds = bound_matrix(query)
    m, q = system.m, query.q
    outcome = solve(hint_problem(system, query, bounds), pivot_rule)

    if outcome.status is not LpStatus.OPTIMAL:
        raise InternalError(f"hint multiplier LP returned {outcome.status.value}")
    if outcome.value == 0:
        raise NothingToRefuteError("the inequality is provable; nothing to refute")

    point = outcome.point
    s_star = LinearForm(query.context, tuple(-u for u in outcome.duals))
    report = _report(system, query, bounds, point[:m], point[m:m + q], point[m + q:], s_star)
    if report.optimal_value != -outcome.value or query.b.dot(s_star) != report.optimal_value:
        raise CertificateError("bounded optimum differs from -λ*⊤1")
    logger.info("refutation hints: value %s, %d tight rows", report.optimal_value, len(report.tight_rows))
    return report


def shortest_hints(
    query: Query,
    lambda_star: Sequence[Fraction],
    pivot_rule: Optional[PivotRule] = None,
) -> HintReport:
    """ℓ1-smallest [y, mu] with ``b⊤ + λ*⊤W = y⊤G - mu⊤Q`` for a fixed λ*."""
    system = generate_elemental(query.context)
    bounds = bound_matrix(query)
    m, q = system.m, query.q
    lam = tuple(Fraction(v) for v in lambda_star)
    if len(lam) != query.context.n:
        raise ContextError(f"λ* needs {query.context.n} entries, got {len(lam)}")
    if any(v < 0 for v in lam):
        raise InconsistentHintError("λ* must be nonnegative")
    if not any(lam):
        raise NothingToRefuteError("λ* = 0 leaves nothing to refute")

    target = combine(query.context, [(ONE, query.b), *zip(lam, bounds.rows)])
    outcome = solve_l1(system, query, target, pivot_rule)
    if outcome is None:
        raise InconsistentHintError("no hint multipliers exist for the given λ*")
    return _report(system, query, bounds, outcome.point[:m], outcome.point[m:m + q], lam, None)


def check_vector(query: Query, s: LinearForm, report: Optional[HintReport] = None) -> CheckResult:
    if s.context != query.context:
        raise ContextError("the vector and the query use different contexts")
    system = generate_elemental(query.context)
    values = [row.dot(s) for row in system.matrix]
    violated = tuple(i for i, value in enumerate(values) if value < 0)
    tight_hold = report is None or all(values[i] == 0 for i in report.tight_rows)
    singles = [s[query.context.singleton(x)] for x in range(query.context.n)]
    return CheckResult(
        in_cone=not violated,
        tight_equalities_hold=tight_hold,
        constraints_hold=all(form.dot(s) == 0 for form in query.constraints),
        bounds_hold=all(0 <= v <= 1 for v in singles) and any(v > 0 for v in singles),
        value=query.b.dot(s),
        violated_rows=violated,
    )
