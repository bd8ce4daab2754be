import logging
import random
from dataclasses import replace
from fractions import Fraction
from itertools import combinations

import pytest

from qep.core.config import get_settings
from qep.core.errors import LpResourceError
from qep.core.lp import (
    Domain,
    LpProblem,
    LpRow,
    LpStatus,
    PivotRule,
    Relation,
    check_certificate,
    solve,
)

F = Fraction


def problem(objective, rows, domains=None):
    domains = domains or (Domain.NONNEG,) * len(objective)
    return LpProblem(tuple(objective), tuple(LpRow(tuple(a), rel, rhs) for a, rel, rhs in rows), tuple(domains))


@pytest.mark.parametrize("rule", list(PivotRule))
def test_optimal(rule):
    p = problem((-1, -1), [((1, 1), Relation.LE, 4), ((1, 0), Relation.LE, 3)])
    outcome = solve(p, rule)
    assert outcome.status is LpStatus.OPTIMAL
    assert outcome.value == -4
    assert all(d <= 0 for d in outcome.duals)
    assert check_certificate(p, outcome)


def test_equality_rows():
    p = problem((1, 1), [((1, 1), Relation.EQ, 2), ((1, -1), Relation.EQ, 0)])
    outcome = solve(p)
    assert outcome.point == (1, 1)
    assert outcome.value == 2


def test_free_variables():
    p = problem((1,), [((1,), Relation.GE, -3)], (Domain.FREE,))
    outcome = solve(p)
    assert outcome.status is LpStatus.OPTIMAL
    assert outcome.point == (-3,)
    assert outcome.duals == (1,)


def test_free_variable_unbounded_below():
    p = problem((1, 0), [((0, 1), Relation.LE, 5)], (Domain.FREE, Domain.NONNEG))
    outcome = solve(p)
    assert outcome.status is LpStatus.UNBOUNDED
    assert outcome.ray[0] < 0


def test_infeasible():
    p = problem((0,), [((1,), Relation.GE, 2), ((1,), Relation.LE, 1)])
    outcome = solve(p)
    assert outcome.status is LpStatus.INFEASIBLE
    assert outcome.farkas[0] >= 0 >= outcome.farkas[1]
    assert 2 * outcome.farkas[0] + outcome.farkas[1] > 0


def test_unbounded():
    p = problem((-1, 0), [((1, -1), Relation.LE, 1)])
    outcome = solve(p)
    assert outcome.status is LpStatus.UNBOUNDED
    assert check_certificate(p, outcome)


@pytest.mark.parametrize("rule", list(PivotRule))
def test_degenerate_cycling_example(rule):
    p = problem(
        (F(-3, 4), 150, F(-1, 50), 6),
        [
            ((F(1, 4), -60, F(-1, 25), 9), Relation.LE, 0),
            ((F(1, 2), -90, F(-1, 50), 3), Relation.LE, 0),
            ((0, 0, 1, 0), Relation.LE, 1),
        ],
    )
    outcome = solve(p, rule)
    assert outcome.status is LpStatus.OPTIMAL
    assert outcome.value == F(-1, 20)
    assert check_certificate(p, outcome)


def test_lex_rule_switches_to_bland_after_driving_out_an_artificial(caplog):
    caplog.set_level(logging.DEBUG, logger="qep.core.lp")
    p = problem((0, 1), [((1, 0), Relation.EQ, 1), ((1, 1), Relation.EQ, 1)])
    outcome = solve(p, PivotRule.LEX)
    assert outcome.status is LpStatus.OPTIMAL
    assert outcome.point == (1, 0)
    assert outcome.value == 0
    assert check_certificate(p, outcome)
    assert "continues with Bland" in caplog.text


def test_slack_basis_needs_no_phase_one_pivots():
    p = problem((0, 0), [((1, -1), Relation.GE, 0), ((1, 1), Relation.LE, 2)])
    outcome = solve(p)
    assert outcome.status is LpStatus.OPTIMAL
    assert outcome.pivots == 0
    assert outcome.point == (0, 0)
    assert check_certificate(p, outcome)


def test_pivot_cap():
    p = problem((1,), [((1,), Relation.GE, 1)])
    with pytest.raises(LpResourceError):
        solve(p, max_pivots=0)


def test_pivot_cap_from_env(monkeypatch):
    monkeypatch.setenv("QEP_MAX_PIVOTS", "0")
    get_settings.cache_clear()
    with pytest.raises(LpResourceError):
        solve(problem((1,), [((1,), Relation.GE, 1)]))


def test_tampered_certificates_are_rejected():
    p = problem((-1, -1), [((1, 1), Relation.LE, 4), ((1, 0), Relation.LE, 3)])
    outcome = solve(p)
    assert not check_certificate(p, replace(outcome, value=outcome.value - 1))
    assert not check_certificate(p, replace(outcome, duals=tuple(-d for d in outcome.duals)))
    assert not check_certificate(p, replace(outcome, status=LpStatus.INFEASIBLE))


def _dot(a, b):
    return sum((x * y for x, y in zip(a, b)), F(0))


def _solve_square(matrix, rhs):
    n = len(matrix)
    a = [list(map(F, row)) + [F(r)] for row, r in zip(matrix, rhs)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            return None
        a[col], a[pivot] = a[pivot], a[col]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col] / a[col][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [a[i][n] / a[i][i] for i in range(n)]


def _halfspaces(p):
    """The feasible set as ``a·x <= b`` rows, nonnegativity included."""
    out = []
    for row in p.rows:
        if row.relation in (Relation.LE, Relation.EQ):
            out.append((row.coeffs, row.rhs))
        if row.relation in (Relation.GE, Relation.EQ):
            out.append((tuple(-a for a in row.coeffs), -row.rhs))
    for v in range(p.num_vars):
        out.append((tuple(F(-1) if i == v else F(0) for i in range(p.num_vars)), F(0)))
    return out


def _vertices(halfspaces, n, pinned=()):
    for active in combinations(halfspaces, n - len(pinned)):
        rows = list(active) + list(pinned)
        x = _solve_square([a for a, _ in rows], [b for _, b in rows])
        if x is not None and all(_dot(a, x) <= b for a, b in halfspaces):
            yield x


def vertex_oracle(p):
    """Status and value of a nonnegative LP by brute-force vertex enumeration."""
    n = p.num_vars
    halfspaces = _halfspaces(p)
    vertices = list(_vertices(halfspaces, n))
    if not vertices:
        return LpStatus.INFEASIBLE, None
    cone = [(a, F(0)) for a, _ in halfspaces]
    rays = _vertices(cone, n, pinned=[((F(1),) * n, F(1))])
    if any(_dot(p.objective, r) < 0 for r in rays):
        return LpStatus.UNBOUNDED, None
    return LpStatus.OPTIMAL, min(_dot(p.objective, x) for x in vertices)


def _random_problem(rng):
    n = rng.randint(1, 4)
    rows = [
        (
            tuple(rng.randint(-3, 3) for _ in range(n)),
            rng.choice(list(Relation)),
            rng.randint(-4, 6),
        )
        for _ in range(rng.randint(1, 5))
    ]
    return problem(tuple(rng.randint(-3, 3) for _ in range(n)), rows)


def test_random_problems_match_vertex_oracle():
    rng = random.Random(20240611)
    seen = set()
    for trial in range(200):
        p = _random_problem(rng)
        rule = PivotRule.BLAND if trial % 2 else PivotRule.LEX
        outcome = solve(p, rule)
        status, value = vertex_oracle(p)
        assert outcome.status is status, (trial, p)
        if status is LpStatus.OPTIMAL:
            assert outcome.value == value, (trial, p)
        seen.add(status)
    assert seen == set(LpStatus)
