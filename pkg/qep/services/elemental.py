"""
Elemental (minimal) and basic SSA/WM inequality systems.

The elemental set for n parties:

* SSA rows ``S(iK) + S(jK) - S(ijK) - S(K) >= 0`` for every pair i < j and
  every K avoiding both (K may be empty),
* WM rows ``S(I) + S(J) - S(I\\J) - S(J\\I) >= 0`` with I ∩ J = {k},
  I ∪ J = all parties and party k+1 (cyclically, so n wraps to 1) in I.

That gives 2^(n-2)·n(n+1)/2 rows; SSA rows come first ordered by
(i, j, K mask), then WM rows ordered by (k, I mask).
"""

import logging
from fractions import Fraction
from functools import lru_cache
from typing import Iterable

from qep.core.config import get_settings
from qep.core.entropy import LinearForm, SubsetId, SystemContext
from qep.core.errors import ContextError
from qep.models.elemental import ElementalRow, ElementalSystem, RowKind

logger = logging.getLogger(__name__)


def elemental_row_count(n: int) -> int:
    return (1 << (n - 2)) * n * (n + 1) // 2


def _form(context: SystemContext, plus: Iterable[int], minus: Iterable[int]) -> LinearForm:
    coeffs = [Fraction(0)] * context.k
    for mask in plus:
        if mask:
            coeffs[mask - 1] += 1
    for mask in minus:
        if mask:
            coeffs[mask - 1] -= 1
    return LinearForm(context, tuple(coeffs))


def _submasks(mask: int) -> list[int]:
    """All submasks of ``mask`` (including 0) in increasing order."""
    out = []
    sub = mask
    while True:
        out.append(sub)
        if sub == 0:
            break
        sub = (sub - 1) & mask
    return sorted(out)


def ssa_row(context: SystemContext, i: int, j: int, cond: int) -> ElementalRow:
    left = (1 << i) | cond
    right = (1 << j) | cond
    form = _form(context, (left, right), (left | right, cond))
    return ElementalRow(RowKind.SSA, form, i=i, j=j, cond=cond)


def wm_row(context: SystemContext, k: int, left: int, right: int) -> ElementalRow:
    form = _form(context, (left, right), (left & ~right, right & ~left))
    return ElementalRow(RowKind.WM, form, k=k, left=left, right=right)


@lru_cache(maxsize=32)
def _build(context: SystemContext) -> ElementalSystem:
    n = context.n
    full = context.k
    rows: list[ElementalRow] = []
    for i in range(n):
        for j in range(i + 1, n):
            for cond in _submasks(full & ~(1 << i) & ~(1 << j)):
                rows.append(ssa_row(context, i, j, cond))
    for k in range(n):
        nxt = (k + 1) % n
        base = (1 << k) | (1 << nxt)
        free = full & ~base
        for extra in _submasks(free):
            left = base | extra
            right = (1 << k) | (free & ~extra)
            rows.append(wm_row(context, k, left, right))
    rows.sort(key=lambda row: (row.kind is RowKind.WM, row.i, row.j, row.cond, row.k, row.left))
    logger.debug("generated %d elemental rows for %d parties", len(rows), n)
    return ElementalSystem(context, tuple(rows))


def generate_elemental(context: SystemContext) -> ElementalSystem:
    budget = get_settings().QEP_MAX_ELEMENTAL_ROWS
    m = elemental_row_count(context.n)
    if m > budget:
        raise ContextError(f"context too large: {m} elemental rows exceed the budget of {budget}")
    return _build(context)


def generate_basic(context: SystemContext) -> tuple[LinearForm, ...]:
    """Every distinct nonzero SSA and WM instance over nonempty I, J."""
    cap = get_settings().QEP_BASIC_MAX_PARTIES
    if context.n > cap:
        raise ContextError(f"context too large: basic inequalities are limited to {cap} parties")
    seen: set[tuple[Fraction, ...]] = set()
    rows: list[LinearForm] = []

    def add(form: LinearForm) -> None:
        if not form.is_zero() and form.coeffs not in seen:
            seen.add(form.coeffs)
            rows.append(form)

    for left in range(1, context.k + 1):
        for right in range(left, context.k + 1):
            add(_form(context, (left, right), (left | right, left & right)))
    for left in range(1, context.k + 1):
        for right in range(left, context.k + 1):
            add(_form(context, (left, right), (left & ~right, right & ~left)))
    return tuple(rows)


def describe_row(row: ElementalRow) -> str:
    context = row.form.context
    if row.kind is RowKind.SSA:
        a, b = context.parties[row.i], context.parties[row.j]
        if row.cond:
            return f"I({a};{b}|{context.label(SubsetId(row.cond))}) >= 0"
        return f"I({a};{b}) >= 0"
    parts = [
        f"S({context.label(SubsetId(row.left))})",
        f"+ S({context.label(SubsetId(row.right))})",
    ]
    for mask in (row.left & ~row.right, row.right & ~row.left):
        if mask:
            parts.append(f"- S({context.label(SubsetId(mask))})")
    return " ".join(parts) + " >= 0"
