"""Formulas of the two-layer language: a propositional core plus the
intention operator ``I`` (core arguments only) and the global box ``#``.

Surface syntax (ASCII)::

    formula := iff
    iff     := imp ("<->" imp)*
    imp     := or ("->" imp)?          right associative
    or      := and ("|" and)*
    and     := unary ("&" unary)*
    unary   := "~" unary | "#" unary | "I" unary | atomic
    atomic  := "T" | IDENT | "(" formula ")"

``->`` and ``<->`` are sugar and never reach the tree: ``a -> b`` is stored
as ``~a | b`` and ``a <-> b`` as ``(a -> b) & (b -> a)``.  The Unicode
symbols ``⊤ ⊥ ¬ ∧ ∨ → ↔ ⊞`` are accepted as aliases; ``⊥`` is ``~T``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator

__all__ = [
    "Formula", "Top", "Atom", "Not", "Or", "And", "Nec", "Intend",
    "TOP", "BOT", "implies", "iff", "conjoin",
    "ParseError", "LayeringError",
    "parse", "to_text", "variables", "overline", "is_core", "subformulas",
    "check_layering",
]

IDENT_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")
RESERVED = frozenset({"T", "I"})


class ParseError(ValueError):
    """Malformed formula text."""

    def __init__(self, position: int, expected: str, text: str = ""):
        self.position = position
        self.expected = expected
        self.text = text
        super().__init__(f"at position {position}: expected {expected}")


class LayeringError(ValueError):
    """An intention operator scopes over a modal formula."""


class Formula:
    __slots__ = ()

    def __invert__(self) -> Formula:
        return Not(self)

    def __and__(self, other: Formula) -> Formula:
        return And(self, other)

    def __or__(self, other: Formula) -> Formula:
        return Or(self, other)

    def __str__(self) -> str:
        return to_text(self)


@dataclass(frozen=True, slots=True)
class Top(Formula):
    pass


@dataclass(frozen=True, slots=True)
class Atom(Formula):
    name: str

    def __post_init__(self):
        if not isinstance(self.name, str) or not IDENT_RE.match(self.name):
            raise ValueError(f"invalid atom name {self.name!r}")
        if self.name in RESERVED:
            raise ValueError(f"atom name {self.name!r} is reserved")


@dataclass(frozen=True, slots=True)
class Not(Formula):
    arg: Formula


@dataclass(frozen=True, slots=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True, slots=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True, slots=True)
class Nec(Formula):
    arg: Formula


@dataclass(frozen=True, slots=True)
class Intend(Formula):
    arg: Formula

    def __post_init__(self):
        check_layering(self.arg)


TOP = Top()
BOT = Not(TOP)


def implies(a: Formula, b: Formula) -> Formula:
    return Or(Not(a), b)


def iff(a: Formula, b: Formula) -> Formula:
    return And(implies(a, b), implies(b, a))


def conjoin(parts) -> Formula:
    """Right-associated conjunction; the empty conjunction is ``T``."""
    parts = list(parts)
    if not parts:
        return TOP
    out = parts[-1]
    for part in reversed(parts[:-1]):
        out = And(part, out)
    return out


def subformulas(phi: Formula) -> Iterator[Formula]:
    """Pre-order traversal, including ``phi`` itself."""
    stack = [phi]
    while stack:
        node = stack.pop()
        yield node
        if isinstance(node, (Or, And)):
            stack.append(node.right)
            stack.append(node.left)
        elif isinstance(node, (Not, Nec, Intend)):
            stack.append(node.arg)


def is_core(phi: Formula) -> bool:
    return not any(isinstance(node, (Nec, Intend)) for node in subformulas(phi))


def check_layering(phi: Formula) -> None:
    """Raise LayeringError unless ``phi`` belongs to the propositional core."""
    for node in subformulas(phi):
        if isinstance(node, (Nec, Intend)):
            op = "#" if isinstance(node, Nec) else "I"
            raise LayeringError(
                f"'{op}' inside the scope of I: {to_text(phi)}"
            )


def variables(phi: Formula) -> tuple[str, ...]:
    """Names of the atoms occurring in ``phi``, sorted."""
    return tuple(sorted({n.name for n in subformulas(phi) if isinstance(n, Atom)}))


def overline(phi: Formula) -> Formula:
    """The tautology ``(p | ~p) & (q | ~q) & ...`` over the atoms of ``phi``.

    Atoms appear in name order and the conjunction is right-associated, so
    two formulas with the same atoms get the same result.  No atoms gives ``T``.
    """
    return conjoin(Or(Atom(v), Not(Atom(v))) for v in variables(phi))


# -- printing ---------------------------------------------------------------

_OR, _AND, _UNARY = 1, 2, 3


def to_text(phi: Formula) -> str:
    """Render ``phi`` with minimal parentheses; ``parse`` inverts this."""
    return _show(phi, _OR)


def _show(phi: Formula, ctx: int) -> str:
    if isinstance(phi, Top):
        return "T"
    if isinstance(phi, Atom):
        return phi.name
    if isinstance(phi, Not):
        return "~" + _show(phi.arg, _UNARY)
    if isinstance(phi, Nec):
        return "#" + _show(phi.arg, _UNARY)
    if isinstance(phi, Intend):
        # the space keeps "I p" from lexing as the identifier "Ip"
        return "I " + _show(phi.arg, _UNARY)
    if isinstance(phi, Or):
        text = f"{_show(phi.left, _OR)} | {_show(phi.right, _AND)}"
        return f"({text})" if ctx > _OR else text
    if isinstance(phi, And):
        text = f"{_show(phi.left, _AND)} & {_show(phi.right, _UNARY)}"
        return f"({text})" if ctx > _AND else text
    raise TypeError(f"not a formula: {phi!r}")


# -- parsing ----------------------------------------------------------------

_ALIASES = {
    "⊤": "T", "¬": "~", "∧": "&", "∨": "|", "→": "->", "↔": "<->", "⊞": "#",
    "⊥": "⊥",
}
_TOKEN_RE = re.compile(
    r"\s*(?:(?P<op><->|->|[~#&|()])|(?P<ident>[A-Za-z][A-Za-z0-9_]*)"
    r"|(?P<uni>[⊤¬∧∨→↔⊞⊥]))"
)


def _tokenize(text: str) -> list[tuple[str, int]]:
    tokens = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(pos, "a token", text)
        start = m.start(m.lastgroup)
        tok = m.group(m.lastgroup)
        if m.lastgroup == "uni":
            tok = _ALIASES[tok]
        tokens.append((tok, start))
        pos = m.end()
    tokens.append(("", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self) -> str:
        return self.tokens[self.i][0]

    def pos(self) -> int:
        return self.tokens[self.i][1]

    def take(self, tok: str, expected: str) -> None:
        if self.peek() != tok:
            raise ParseError(self.pos(), expected, self.text)
        self.i += 1

    def formula(self) -> Formula:
        left = self.imp()
        while self.peek() == "<->":
            self.i += 1
            left = iff(left, self.imp())
        return left

    def imp(self) -> Formula:
        left = self.or_()
        if self.peek() == "->":
            self.i += 1
            return implies(left, self.imp())
        return left

    def or_(self) -> Formula:
        left = self.and_()
        while self.peek() == "|":
            self.i += 1
            left = Or(left, self.and_())
        return left

    def and_(self) -> Formula:
        left = self.unary()
        while self.peek() == "&":
            self.i += 1
            left = And(left, self.unary())
        return left

    def unary(self) -> Formula:
        tok = self.peek()
        if tok == "~":
            self.i += 1
            return Not(self.unary())
        if tok == "#":
            self.i += 1
            return Nec(self.unary())
        if tok == "I":
            self.i += 1
            arg = self.unary()
            return Intend(arg)
        return self.atomic()

    def atomic(self) -> Formula:
        tok = self.peek()
        if tok == "(":
            self.i += 1
            inner = self.formula()
            self.take(")", "')'")
            return inner
        if tok == "T":
            self.i += 1
            return TOP
        if tok == "⊥":
            self.i += 1
            return BOT
        if tok and IDENT_RE.match(tok):
            self.i += 1
            return Atom(tok)
        raise ParseError(self.pos(), "an atom, 'T', '(' or a unary operator", self.text)


def parse(text: str) -> Formula:
    """Parse surface syntax into a Formula.

    Raises ParseError on malformed input and LayeringError when ``I``
    scopes over ``I`` or ``#``.
    """
    parser = _Parser(text)
    phi = parser.formula()
    if parser.peek() != "":
        raise ParseError(parser.pos(), "end of input", text)
    return phi
