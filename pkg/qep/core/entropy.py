"""
The entropic space of an n-party system.

A ``SystemContext`` fixes the party roster; every nonempty subset of the
roster is one coordinate (the empty subset has entropy zero and is never
stored). ``LinearForm`` is an exact rational vector over those coordinates
and is used both for inequality coefficient vectors and for entropic
vectors themselves.
"""

import re
from dataclasses import dataclass
from fractions import Fraction
from string import ascii_uppercase
from typing import Iterable, Iterator, Mapping, Optional, Union

from qep.core.config import get_settings
from qep.core.errors import ContextError

PARTY_NAME = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")

Scalar = Union[int, Fraction]


@dataclass(frozen=True)
class SubsetId:
    mask: int

    def __post_init__(self):
        if self.mask < 1:
            raise ContextError("the empty subset is not a coordinate")

    def members(self) -> tuple[int, ...]:
        return tuple(i for i in range(self.mask.bit_length()) if self.mask >> i & 1)


def subset_union(a: SubsetId, b: SubsetId) -> SubsetId:
    return SubsetId(a.mask | b.mask)


def coordinate_of(subset: SubsetId) -> int:
    return subset.mask - 1


@dataclass(frozen=True)
class SystemContext:
    parties: tuple[str, ...]

    def __post_init__(self):
        if len(self.parties) < 2:
            raise ContextError(f"at least 2 parties are required, got {len(self.parties)}")
        for name in self.parties:
            if not PARTY_NAME.match(name):
                raise ContextError(f"invalid party name {name!r}")
        if len(set(self.parties)) != len(self.parties):
            raise ContextError("party names must be unique")
        if list(self.parties) != sorted(self.parties):
            raise ContextError("parties must be in canonical (sorted) order")

    @classmethod
    def from_parties(cls, names: Iterable[str], max_parties: Optional[int] = None) -> "SystemContext":
        parties = tuple(sorted(set(names)))
        limit = max_parties if max_parties is not None else get_settings().QEP_MAX_PARTIES
        if len(parties) > limit:
            raise ContextError(f"{len(parties)} parties exceed the limit of {limit}")
        return cls(parties)

    @classmethod
    def default(cls, n: int, max_parties: Optional[int] = None) -> "SystemContext":
        """Context with parties named A, B, C, ..."""
        if n < 2:
            raise ContextError(f"at least 2 parties are required, got {n}")
        names = ascii_uppercase[:n] if n <= 26 else [f"P{i + 1:02d}" for i in range(n)]
        return cls.from_parties(names, max_parties)

    @property
    def n(self) -> int:
        return len(self.parties)

    @property
    def k(self) -> int:
        return (1 << self.n) - 1

    @property
    def full(self) -> SubsetId:
        return SubsetId(self.k)

    def index_of(self, name: str) -> int:
        try:
            return self.parties.index(name)
        except ValueError:
            raise ContextError(f"party {name!r} is not in the context {','.join(self.parties)}")

    def subset(self, names: Iterable[str]) -> SubsetId:
        mask = 0
        for name in names:
            mask |= 1 << self.index_of(name)
        return SubsetId(mask)

    def subsets(self) -> Iterator[SubsetId]:
        for mask in range(1, self.k + 1):
            yield SubsetId(mask)

    def singleton(self, party: int) -> SubsetId:
        return SubsetId(1 << party)

    def label(self, subset: SubsetId) -> str:
        return ",".join(self.parties[i] for i in subset.members())


@dataclass(frozen=True)
class LinearForm:
    context: SystemContext
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.context.k:
            raise ContextError(f"expected {self.context.k} coefficients, got {len(self.coeffs)}")
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))

    @classmethod
    def zero(cls, context: SystemContext) -> "LinearForm":
        return cls(context, (Fraction(0),) * context.k)

    @classmethod
    def from_terms(cls, context: SystemContext, terms: Mapping[SubsetId, Scalar]) -> "LinearForm":
        coeffs = [Fraction(0)] * context.k
        for subset, value in terms.items():
            if subset.mask > context.k:
                raise ContextError(f"subset mask {subset.mask} is outside the context")
            coeffs[coordinate_of(subset)] += value
        return cls(context, tuple(coeffs))

    @classmethod
    def unit(cls, context: SystemContext, subset: SubsetId) -> "LinearForm":
        return cls.from_terms(context, {subset: 1})

    def _same_context(self, other: "LinearForm") -> None:
        if self.context != other.context:
            raise ContextError(
                f"context mismatch: {','.join(self.context.parties)} vs {','.join(other.context.parties)}"
            )

    def __getitem__(self, subset: SubsetId) -> Fraction:
        return self.coeffs[coordinate_of(subset)]

    def __add__(self, other: "LinearForm") -> "LinearForm":
        self._same_context(other)
        return LinearForm(self.context, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "LinearForm") -> "LinearForm":
        self._same_context(other)
        return LinearForm(self.context, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "LinearForm":
        return LinearForm(self.context, tuple(-a for a in self.coeffs))

    def scale(self, alpha: Scalar) -> "LinearForm":
        return LinearForm(self.context, tuple(alpha * a for a in self.coeffs))

    def __mul__(self, alpha: Scalar) -> "LinearForm":
        return self.scale(alpha)

    __rmul__ = __mul__

    def dot(self, other: "LinearForm") -> Fraction:
        self._same_context(other)
        return sum((a * b for a, b in zip(self.coeffs, other.coeffs) if a and b), Fraction(0))

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def terms(self) -> Iterator[tuple[SubsetId, Fraction]]:
        """Nonzero (subset, coefficient) pairs in canonical coordinate order."""
        for index, value in enumerate(self.coeffs):
            if value:
                yield SubsetId(index + 1), value

    def support_size(self) -> int:
        return sum(1 for c in self.coeffs if c)


def evaluate(form: LinearForm, point: LinearForm) -> Fraction:
    """b⊤s for an inequality ``form`` at the entropic vector ``point``."""
    return form.dot(point)


def combine(context: SystemContext, weighted: Iterable[tuple[Scalar, LinearForm]]) -> LinearForm:
    coeffs = [Fraction(0)] * context.k
    for weight, form in weighted:
        if not weight:
            continue
        if form.context != context:
            raise ContextError("context mismatch in linear combination")
        for index, value in enumerate(form.coeffs):
            if value:
                coeffs[index] += weight * value
    return LinearForm(context, tuple(coeffs))
