"""
Exact two-phase simplex over the rationals.

Problems are ``min c⊤x`` over rows ``a⊤x (>=|<=|=) b`` with each variable
either free or nonnegative. Every outcome carries a certificate:

* Optimal: primal point plus one dual multiplier per row
  (>= rows nonnegative, <= rows nonpositive, = rows free), with
  c⊤x equal to the dual objective.
* Unbounded: a feasible point plus a ray along which c⊤x strictly decreases.
* Infeasible: Farkas multipliers u (same sign convention as duals) with
  u⊤A vanishing on free variables, nonpositive on nonnegative ones, and
  u⊤b > 0.

``solve`` re-verifies its certificate through ``check_certificate``
before returning, so a result is either certified or an error.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import lcm
from typing import Optional, Sequence

from qep.core.config import get_settings
from qep.core.errors import CertificateError, LpResourceError

logger = logging.getLogger(__name__)

ZERO = Fraction(0)
ONE = Fraction(1)


class Relation(str, Enum):
    GE = ">="
    LE = "<="
    EQ = "="


class Domain(str, Enum):
    FREE = "free"
    NONNEG = "nonneg"


class LpStatus(str, Enum):
    OPTIMAL = "optimal"
    UNBOUNDED = "unbounded"
    INFEASIBLE = "infeasible"


class PivotRule(str, Enum):
    BLAND = "bland"
    LEX = "lex"


@dataclass(frozen=True)
class LpRow:
    coeffs: tuple[Fraction, ...]
    relation: Relation
    rhs: Fraction = ZERO

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(Fraction(a) for a in self.coeffs))
        object.__setattr__(self, "relation", Relation(self.relation))
        object.__setattr__(self, "rhs", Fraction(self.rhs))

    def activity(self, x: Sequence[Fraction]) -> Fraction:
        return sum((a * v for a, v in zip(self.coeffs, x) if a and v), ZERO)


@dataclass(frozen=True)
class LpProblem:
    objective: tuple[Fraction, ...]
    rows: tuple[LpRow, ...]
    domains: tuple[Domain, ...]

    def __post_init__(self):
        object.__setattr__(self, "objective", tuple(Fraction(c) for c in self.objective))
        object.__setattr__(self, "rows", tuple(self.rows))
        object.__setattr__(self, "domains", tuple(Domain(d) for d in self.domains))
        if len(self.domains) != len(self.objective):
            raise ValueError("one domain per variable is required")
        for i, row in enumerate(self.rows):
            if len(row.coeffs) != len(self.objective):
                raise ValueError(f"row {i} has {len(row.coeffs)} coefficients, expected {len(self.objective)}")

    @property
    def num_vars(self) -> int:
        return len(self.objective)


@dataclass(frozen=True)
class LpOutcome:
    status: LpStatus
    value: Optional[Fraction] = None
    point: Optional[tuple[Fraction, ...]] = None
    duals: Optional[tuple[Fraction, ...]] = None
    ray: Optional[tuple[Fraction, ...]] = None
    farkas: Optional[tuple[Fraction, ...]] = None
    pivots: int = 0


class _Tableau:
    """Fraction-free tableau in standard form ``A'x' = b', x' >= 0, b' >= 0``.

    Each row is scaled to integers and the tableau holds ``D·B⁻¹[A' | b']``
    with ``D = |det B|``, so every entry stays an integer and each pivot
    divides exactly by the previous ``D``.

    Columns: structural copies of the variables (free ones split into a
    positive and a negative part), one slack or surplus per inequality
    row, then one artificial for each row whose slack cannot start the
    basis. ``unit[i]`` is the starting basic column of row i; its column in
    the tableau is column i of ``D·B⁻¹``, which is where row duals and
    Farkas multipliers are read from. Artificials never re-enter.
    """

    def __init__(self, problem: LpProblem, rule: PivotRule, max_pivots: int):
        self.problem = problem
        self.rule = rule
        self.max_pivots = max_pivots
        self.pivots = 0

        m = len(problem.rows)
        self.m = m
        self.var_cols: list[list[tuple[int, int]]] = []
        ncols = 0
        for domain in problem.domains:
            cols = [(ncols, 1)]
            ncols += 1
            if domain is Domain.FREE:
                cols.append((ncols, -1))
                ncols += 1
            self.var_cols.append(cols)

        self.sigma: list[int] = []
        self.scale: list[int] = []
        slack_cols: dict[int, int] = {}
        artificial_rows: list[int] = []
        for i, row in enumerate(problem.rows):
            if row.relation is Relation.EQ:
                sign, artificial = (-1 if row.rhs < 0 else 1), True
            elif row.relation is Relation.GE:
                sign = -1 if row.rhs <= 0 else 1
                artificial = sign > 0
            else:
                sign = 1 if row.rhs >= 0 else -1
                artificial = sign < 0
            if row.relation is not Relation.EQ:
                slack_cols[i] = ncols
                ncols += 1
            if artificial:
                artificial_rows.append(i)
            self.sigma.append(sign)
            self.scale.append(lcm(row.rhs.denominator, *(a.denominator for a in row.coeffs)))
        self.n_struct = ncols
        art_cols = {i: ncols + pos for pos, i in enumerate(artificial_rows)}
        self.width = ncols + len(artificial_rows)
        self.unit = [art_cols[i] if i in art_cols else slack_cols[i] for i in range(m)]

        self.T: list[list[int]] = []
        for i, row in enumerate(problem.rows):
            factor = self.sigma[i] * self.scale[i]
            line = [0] * (self.width + 1)
            for v, cols in enumerate(self.var_cols):
                a = row.coeffs[v]
                if a:
                    a = int(a * factor)
                    for col, sign in cols:
                        line[col] = a * sign
            if i in slack_cols:
                surplus = row.relation is Relation.GE
                line[slack_cols[i]] = -self.sigma[i] if surplus else self.sigma[i]
            if i in art_cols:
                line[art_cols[i]] = 1
            line[-1] = int(row.rhs * factor)
            self.T.append(line)
        self.basis = list(self.unit)
        self.D = 1
        self.Z: list[int] = [0] * (self.width + 1)

    def _load_costs(self, cost: Sequence[int]) -> None:
        Z = [self.D * c for c in cost] + [0]
        for i, line in enumerate(self.T):
            cb = cost[self.basis[i]]
            if cb:
                Z = [z - cb * x for z, x in zip(Z, line)]
        self.Z = Z

    def _pivot(self, r: int, c: int) -> None:
        self.pivots += 1
        if self.pivots > self.max_pivots:
            raise LpResourceError(f"pivot limit of {self.max_pivots} exceeded")
        prow = self.T[r]
        p, d = prow[c], self.D

        def update(line: list[int]) -> list[int]:
            f = line[c]
            if f:
                return [(x * p - f * y) // d for x, y in zip(line, prow)]
            if p != d:
                return [x * p // d for x in line]
            return line

        self.T = [prow if i == r else update(line) for i, line in enumerate(self.T)]
        self.Z = update(self.Z)
        self.D = p
        if p < 0:
            self.T = [[-x for x in line] for line in self.T]
            self.Z = [-x for x in self.Z]
            self.D = -p
        self.basis[r] = c

    def _entering(self) -> Optional[int]:
        Z = self.Z
        if self.rule is PivotRule.BLAND:
            for j in range(self.n_struct):
                if Z[j] < 0:
                    return j
            return None
        best = None
        for j in range(self.n_struct):
            if Z[j] < 0 and (best is None or Z[j] < Z[best]):
                best = j
        return best

    def _leaving(self, c: int) -> Optional[int]:
        best: Optional[tuple[int, int]] = None
        tied: list[int] = []
        for i, line in enumerate(self.T):
            a = line[c]
            if a > 0:
                if best is None:
                    best, tied = (line[-1], a), [i]
                    continue
                lhs, rhs = line[-1] * best[1], best[0] * a
                if lhs < rhs:
                    best, tied = (line[-1], a), [i]
                elif lhs == rhs:
                    tied.append(i)
        if not tied:
            return None
        if len(tied) == 1:
            return tied[0]
        if self.rule is PivotRule.LEX:

            def lex_key(i: int):
                line = self.T[i]
                a = line[c]
                return tuple(Fraction(line[u], a) for u in self.unit), self.basis[i]

            return min(tied, key=lex_key)
        return min(tied, key=lambda i: self.basis[i])

    def _run(self) -> Optional[int]:
        """Pivot to optimality; returns the entering column of an unbounded ray, if any."""
        while True:
            c = self._entering()
            if c is None:
                return None
            r = self._leaving(c)
            if r is None:
                return c
            self._pivot(r, c)

    def _row_multipliers(self, cost: Sequence[int], cost_scale: int = 1) -> tuple[Fraction, ...]:
        out = []
        for i, u in enumerate(self.unit):
            y = cost[u] - Fraction(self.Z[u], self.D)
            out.append(y * self.sigma[i] * self.scale[i] / cost_scale)
        return tuple(out)

    def _to_original(self, x_std: Sequence[Fraction]) -> tuple[Fraction, ...]:
        out = []
        for cols in self.var_cols:
            value = ZERO
            for col, sign in cols:
                value += x_std[col] if sign > 0 else -x_std[col]
            out.append(value)
        return tuple(out)

    def _basic_solution(self) -> list[Fraction]:
        x = [ZERO] * self.width
        for i, col in enumerate(self.basis):
            x[col] = Fraction(self.T[i][-1], self.D)
        return x

    def solve(self) -> LpOutcome:
        problem = self.problem

        phase1 = [0] * self.n_struct + [1] * (self.width - self.n_struct)
        self._load_costs(phase1)
        self._run()
        logger.debug("phase 1 finished after %d pivots", self.pivots)
        if self.Z[-1] < 0:
            return LpOutcome(LpStatus.INFEASIBLE, farkas=self._row_multipliers(phase1), pivots=self.pivots)

        drive_outs = 0
        for i in range(self.m):
            if self.basis[i] >= self.n_struct:
                line = self.T[i]
                for j in range(self.n_struct):
                    if line[j]:
                        self._pivot(i, j)
                        drive_outs += 1
                        break
        # a drive-out pivot may break lex-positivity of [b | B⁻¹]
        if drive_outs and self.rule is PivotRule.LEX:
            logger.debug("%d artificials driven out; phase 2 continues with Bland's rule", drive_outs)
            self.rule = PivotRule.BLAND

        cost_scale = lcm(*(c.denominator for c in problem.objective))
        phase2 = [0] * self.width
        for v, cols in enumerate(self.var_cols):
            weight = int(problem.objective[v] * cost_scale)
            for col, sign in cols:
                phase2[col] = weight * sign
        self._load_costs(phase2)
        entering = self._run()
        logger.debug("phase 2 finished after %d pivots in total", self.pivots)

        point = self._to_original(self._basic_solution())
        if entering is not None:
            direction = [ZERO] * self.width
            direction[entering] = ONE
            for i, col in enumerate(self.basis):
                direction[col] -= Fraction(self.T[i][entering], self.D)
            return LpOutcome(
                LpStatus.UNBOUNDED,
                point=point,
                ray=self._to_original(direction),
                pivots=self.pivots,
            )

        value = sum((c * x for c, x in zip(problem.objective, point) if c and x), ZERO)
        return LpOutcome(
            LpStatus.OPTIMAL,
            value=value,
            point=point,
            duals=self._row_multipliers(phase2, cost_scale),
            pivots=self.pivots,
        )


def solve(
    problem: LpProblem,
    pivot_rule: Optional[PivotRule] = None,
    max_pivots: Optional[int] = None,
) -> LpOutcome:
    settings = get_settings()
    rule = PivotRule(pivot_rule or settings.QEP_PIVOT_RULE)
    cap = max_pivots if max_pivots is not None else settings.QEP_MAX_PIVOTS
    logger.debug(
        "solving LP with %d variables and %d rows (rule=%s)",
        problem.num_vars, len(problem.rows), rule.value,
    )
    outcome = _Tableau(problem, rule, cap).solve()
    if not check_certificate(problem, outcome):
        raise CertificateError(f"LP {outcome.status.value} certificate failed exact verification")
    return outcome


def _dot(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    return sum((x * y for x, y in zip(a, b) if x and y), ZERO)


def _is_feasible(problem: LpProblem, x: Sequence[Fraction]) -> bool:
    if len(x) != problem.num_vars:
        return False
    for value, domain in zip(x, problem.domains):
        if domain is Domain.NONNEG and value < 0:
            return False
    for row in problem.rows:
        act = row.activity(x)
        if row.relation is Relation.GE and act < row.rhs:
            return False
        if row.relation is Relation.LE and act > row.rhs:
            return False
        if row.relation is Relation.EQ and act != row.rhs:
            return False
    return True


def _multiplier_signs_ok(problem: LpProblem, u: Sequence[Fraction]) -> bool:
    if len(u) != len(problem.rows):
        return False
    for value, row in zip(u, problem.rows):
        if row.relation is Relation.GE and value < 0:
            return False
        if row.relation is Relation.LE and value > 0:
            return False
    return True


def _combination(problem: LpProblem, u: Sequence[Fraction]) -> list[Fraction]:
    combo = [ZERO] * problem.num_vars
    for weight, row in zip(u, problem.rows):
        if weight:
            for v, a in enumerate(row.coeffs):
                if a:
                    combo[v] += weight * a
    return combo


def check_certificate(problem: LpProblem, outcome: LpOutcome) -> bool:
    """Re-verify ``outcome`` against ``problem`` from scratch, exactly."""
    if outcome.status is LpStatus.OPTIMAL:
        if outcome.point is None or outcome.duals is None or outcome.value is None:
            return False
        if not _is_feasible(problem, outcome.point):
            return False
        if not _multiplier_signs_ok(problem, outcome.duals):
            return False
        combo = _combination(problem, outcome.duals)
        for c, a, domain in zip(problem.objective, combo, problem.domains):
            reduced = c - a
            if domain is Domain.FREE and reduced != 0:
                return False
            if domain is Domain.NONNEG and reduced < 0:
                return False
        primal = _dot(problem.objective, outcome.point)
        dual = _dot(outcome.duals, [row.rhs for row in problem.rows])
        return primal == outcome.value == dual

    if outcome.status is LpStatus.UNBOUNDED:
        if outcome.point is None or outcome.ray is None:
            return False
        if not _is_feasible(problem, outcome.point) or len(outcome.ray) != problem.num_vars:
            return False
        for value, domain in zip(outcome.ray, problem.domains):
            if domain is Domain.NONNEG and value < 0:
                return False
        for row in problem.rows:
            act = row.activity(outcome.ray)
            if row.relation is Relation.GE and act < 0:
                return False
            if row.relation is Relation.LE and act > 0:
                return False
            if row.relation is Relation.EQ and act != 0:
                return False
        return _dot(problem.objective, outcome.ray) < 0

    if outcome.status is LpStatus.INFEASIBLE:
        if outcome.farkas is None or not _multiplier_signs_ok(problem, outcome.farkas):
            return False
        combo = _combination(problem, outcome.farkas)
        for a, domain in zip(combo, problem.domains):
            if domain is Domain.FREE and a != 0:
                return False
            if domain is Domain.NONNEG and a > 0:
                return False
        return _dot(outcome.farkas, [row.rhs for row in problem.rows]) > 0

    return False
