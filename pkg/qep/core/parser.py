"""
Surface syntax for entropy expressions.

    query := expr rel expr
    rel   := ">=" | "<=" | "="
    expr  := ["-"] term { ("+" | "-") term }
    term  := [ coeff [ "*" ] ] atom
    coeff := INT | INT "/" INT | DECIMAL
    atom  := "S(" list [ "|" list ] ")" | "I(" list ";" list [ "|" list ] ")"
    list  := NAME { "," NAME }

A side may also be the literal ``0``. Any other constant is rejected:
entropy inequalities here are homogeneous.

Parsing happens in two steps: the text is reduced to a map from party-name
sets to coefficients, then bound to a ``SystemContext`` (given, or inferred
as the sorted set of names seen).
"""

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from qep.core.entropy import LinearForm, SubsetId, SystemContext
from qep.core.errors import ContextError, ParseError
from qep.models.query import Query

NAME = re.compile(r"[A-Za-z][A-Za-z0-9_]*")
NUMBER = re.compile(r"\d+(?:\.\d+)?|\.\d+")
RELATIONS = (">=", "<=", "=")
PUNCT = {"(", ")", ",", ";", "|", "+", "-", "*", "/"}

Terms = dict[frozenset[str], Fraction]


@dataclass(frozen=True)
class Token:
    kind: str  # NAME, NUMBER, REL, PUNCT, END
    value: str
    pos: int


def tokenize(text: str) -> list[Token]:
    tokens: list[Token] = []
    pos = 0
    while pos < len(text):
        ch = text[pos]
        if ch.isspace():
            pos += 1
            continue
        if text.startswith((">=", "<="), pos):
            tokens.append(Token("REL", text[pos:pos + 2], pos))
            pos += 2
            continue
        if ch in "<>":
            raise ParseError(f"unknown relation {ch!r}", text, pos)
        if ch == "=":
            if text.startswith(("==", "=>", "=<"), pos):
                raise ParseError(f"unknown relation {text[pos:pos + 2]!r}", text, pos)
            tokens.append(Token("REL", "=", pos))
            pos += 1
            continue
        m = NAME.match(text, pos)
        if m:
            tokens.append(Token("NAME", m.group(), pos))
            pos = m.end()
            continue
        m = NUMBER.match(text, pos)
        if m:
            tokens.append(Token("NUMBER", m.group(), pos))
            pos = m.end()
            continue
        if ch in PUNCT:
            tokens.append(Token("PUNCT", ch, pos))
            pos += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", text, pos)
    tokens.append(Token("END", "", len(text)))
    return tokens


def _accumulate(terms: Terms, parties: Iterable[str], coeff: Fraction) -> None:
    key = frozenset(parties)
    if not key:
        return
    value = terms.get(key, Fraction(0)) + coeff
    if value:
        terms[key] = value
    else:
        terms.pop(key, None)


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.index = 0
        self.names: set[str] = set()

    @property
    def ct(self) -> Token:
        return self.tokens[self.index]

    def advance(self) -> Token:
        token = self.tokens[self.index]
        if token.kind != "END":
            self.index += 1
        return token

    def error(self, detail: str, token: Optional[Token] = None) -> ParseError:
        token = token or self.ct
        return ParseError(detail, self.text, token.pos)

    def is_punct(self, value: str) -> bool:
        return self.ct.kind == "PUNCT" and self.ct.value == value

    def expect(self, value: str) -> Token:
        if not self.is_punct(value):
            found = self.ct.value or "end of input"
            raise self.error(f"expected {value!r}, found {found!r}")
        return self.advance()

    def parse_query(self) -> tuple[Terms, str, Terms]:
        if self.ct.kind == "REL":
            raise self.error("empty side")
        left = self.parse_expr()
        if self.ct.kind != "REL":
            found = self.ct.value or "end of input"
            raise self.error(f"expected a relation (>=, <=, =), found {found!r}")
        rel = self.advance().value
        if self.ct.kind in ("END", "REL"):
            raise self.error("empty side")
        right = self.parse_expr()
        if self.ct.kind != "END":
            raise self.error(f"unexpected {self.ct.value!r}")
        return left, rel, right

    def parse_expr(self) -> Terms:
        terms: Terms = {}
        sign = Fraction(1)
        if self.is_punct("-"):
            self.advance()
            sign = Fraction(-1)
        elif self.is_punct("+"):
            raise self.error("unexpected '+'")
        self.parse_term(terms, sign)
        while self.is_punct("+") or self.is_punct("-"):
            sign = Fraction(1) if self.advance().value == "+" else Fraction(-1)
            self.parse_term(terms, sign)
        return terms

    def parse_coeff(self) -> Fraction:
        token = self.advance()
        if "." in token.value:
            return Fraction(token.value)
        value = Fraction(int(token.value))
        if self.is_punct("/"):
            self.advance()
            if self.ct.kind != "NUMBER" or "." in self.ct.value:
                raise self.error("expected an integer denominator")
            denom = int(self.advance().value)
            if denom == 0:
                raise self.error("zero denominator", token)
            value /= denom
        return value

    def parse_term(self, terms: Terms, sign: Fraction) -> None:
        start = self.ct
        coeff = Fraction(1)
        has_coeff = False
        if self.ct.kind == "NUMBER":
            coeff = self.parse_coeff()
            has_coeff = True
            if self.is_punct("*"):
                self.advance()
                if self.ct.kind != "NAME":
                    raise self.error("expected an entropy term after '*'")
        if self.ct.kind != "NAME":
            if has_coeff:
                if coeff == 0:
                    return
                raise self.error("constant terms are not allowed (inequalities must be homogeneous)", start)
            found = self.ct.value or "end of input"
            raise self.error(f"expected a term, found {found!r}")
        self.parse_atom(terms, sign * coeff)

    def parse_list(self) -> frozenset[str]:
        if self.ct.kind != "NAME":
            found = self.ct.value or "end of input"
            raise self.error(f"expected a party name, found {found!r}")
        names = [self.advance().value]
        while self.is_punct(","):
            self.advance()
            if self.ct.kind != "NAME":
                raise self.error("expected a party name after ','")
            names.append(self.advance().value)
        self.names.update(names)
        return frozenset(names)

    def parse_atom(self, terms: Terms, coeff: Fraction) -> None:
        head = self.advance()
        if head.value not in ("S", "I"):
            raise self.error(f"unknown function {head.value!r}; expected S(...) or I(...)", head)
        self.expect("(")
        if head.value == "S":
            x = self.parse_list()
            z: frozenset[str] = frozenset()
            if self.is_punct("|"):
                self.advance()
                z = self.parse_list()
            self.expect(")")
            _accumulate(terms, x | z, coeff)
            _accumulate(terms, z, -coeff)
            return
        x = self.parse_list()
        self.expect(";")
        y = self.parse_list()
        z = frozenset()
        if self.is_punct("|"):
            self.advance()
            z = self.parse_list()
        self.expect(")")
        _accumulate(terms, x | z, coeff)
        _accumulate(terms, y | z, coeff)
        _accumulate(terms, x | y | z, -coeff)
        _accumulate(terms, z, -coeff)


@dataclass(frozen=True)
class ParsedRelation:
    terms: Terms
    relation: str
    names: frozenset[str]
    text: str


def parse_relation(text: str) -> ParsedRelation:
    """Parse ``text`` to (left - right) terms, its relation and the names seen."""
    parser = _Parser(text)
    left, rel, right = parser.parse_query()
    terms = dict(left)
    for key, value in right.items():
        _accumulate(terms, key, -value)
    if rel == "<=":
        terms = {key: -value for key, value in terms.items()}
    return ParsedRelation(terms, rel, frozenset(parser.names), text)


def bind(parsed: ParsedRelation, context: SystemContext) -> LinearForm:
    unknown = sorted(parsed.names - set(context.parties))
    if unknown:
        raise ContextError(
            f"parties {','.join(unknown)} in {parsed.text!r} are not in the context {','.join(context.parties)}"
        )
    return LinearForm.from_terms(context, {context.subset(key): value for key, value in parsed.terms.items()})


def parse_inequality(text: str, context: Optional[SystemContext] = None) -> LinearForm:
    parsed = parse_relation(text)
    if parsed.relation == "=":
        raise ParseError(f"expected an inequality (>= or <=) in {text!r}, found '='")
    return bind(parsed, context or SystemContext.from_parties(parsed.names))


def parse_constraint(text: str, context: Optional[SystemContext] = None) -> LinearForm:
    parsed = parse_relation(text)
    if parsed.relation != "=":
        raise ParseError(f"expected an equality constraint in {text!r}, found {parsed.relation!r}")
    return bind(parsed, context or SystemContext.from_parties(parsed.names))


def format_rational(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def _render_side(context: SystemContext, terms: Sequence[tuple[SubsetId, Fraction]]) -> str:
    if not terms:
        return "0"
    parts = []
    for position, (subset, value) in enumerate(terms):
        magnitude = abs(value)
        atom = f"S({context.label(subset)})"
        body = atom if magnitude == 1 else f"{format_rational(magnitude)} {atom}"
        if position == 0:
            parts.append(f"-{body}" if value < 0 else body)
        else:
            parts.append(f"{'-' if value < 0 else '+'} {body}")
    return " ".join(parts)


def render_expression(form: LinearForm) -> str:
    return _render_side(form.context, list(form.terms()))


def render(form: LinearForm) -> str:
    """Canonical ``... >= 0`` text that re-parses to ``form`` in its context."""
    return f"{render_expression(form)} >= 0"


def render_constraint(form: LinearForm) -> str:
    return f"{render_expression(form)} = 0"


def render_equality(form: LinearForm) -> str:
    """``form·s = 0`` with the positive terms on the left and the negated negative terms on the right."""
    terms = list(form.terms())
    left = [(s, v) for s, v in terms if v > 0]
    right = [(s, -v) for s, v in terms if v < 0]
    return f"{_render_side(form.context, left)} = {_render_side(form.context, right)}"


def parse_vector(text: str, context: SystemContext) -> LinearForm:
    """An entropic vector as k comma-separated rationals or ``S(X)=v`` assignments."""
    if "=" in text:
        coeffs = [Fraction(0)] * context.k
        pattern = re.compile(r"\s*S\(([^)]*)\)\s*=\s*([^,]+?)\s*(?:,|$)")
        pos = 0
        stripped = text.strip()
        while pos < len(stripped):
            m = pattern.match(stripped, pos)
            if not m:
                raise ParseError("malformed assignment", stripped, pos)
            names = [name.strip() for name in m.group(1).split(",") if name.strip()]
            if not names:
                raise ParseError("empty subset in assignment", stripped, pos)
            try:
                value = Fraction(m.group(2))
            except (ValueError, ZeroDivisionError):
                raise ParseError(f"invalid rational {m.group(2)!r}", stripped, m.start(2))
            coeffs[context.subset(names).mask - 1] = value
            pos = m.end()
        return LinearForm(context, tuple(coeffs))

    items = [item.strip() for item in text.split(",")]
    if len(items) != context.k:
        raise ContextError(
            f"vector has {len(items)} entries but the context {','.join(context.parties)} needs {context.k}"
        )
    values = []
    for item in items:
        try:
            values.append(Fraction(item))
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"invalid rational {item!r}", text, text.find(item))
    return LinearForm(context, tuple(values))


def build_query(
    inequality: str,
    constraints: Sequence[str] = (),
    parties: Optional[Sequence[str]] = None,
    max_parties: Optional[int] = None,
) -> Query:
    """Parse an inequality and its constraints into one ``Query``.

    The context is ``parties`` when given, otherwise the sorted union of
    every name in the inequality and the constraints.
    """
    head = parse_relation(inequality)
    if head.relation == "=":
        raise ParseError(f"expected an inequality (>= or <=) in {inequality!r}, found '='")
    tail = []
    for text in constraints:
        parsed = parse_relation(text)
        if parsed.relation != "=":
            raise ParseError(f"expected an equality constraint in {text!r}, found {parsed.relation!r}")
        tail.append(parsed)
    if parties:
        context = SystemContext.from_parties(parties, max_parties)
        if len(context.parties) != len(parties):
            raise ContextError("duplicate names in the party roster")
    else:
        names = set(head.names)
        for parsed in tail:
            names |= parsed.names
        if len(names) < 2:
            raise ContextError(
                f"the query names {len(names)} part{'y' if len(names) == 1 else 'ies'}; "
                "at least 2 are required, so give the party roster explicitly"
            )
        context = SystemContext.from_parties(names, max_parties)
    return Query(context, bind(head, context), tuple(bind(parsed, context) for parsed in tail))
