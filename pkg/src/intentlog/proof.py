"""Hilbert-style derivations in the axiom system for intention.

Axioms, as schemas over core formulas ``a``, ``b`` (under ``I``) and arbitrary
formulas ``x``, ``y`` (under ``#``)::

    ax1   I T
    ax2   I a -> I over(a)
    ax3   I a -> ~I ~a
    ax4   (I a & I b) <-> I (a & b)
    ax5   #(b -> a) -> ((I b & I over(a)) -> I a)
    s5k   #(x -> y) -> (#x -> #y)
    s5t   #x -> x
    s55   ~#x -> #~#x

where ``over(a)`` is :func:`intentlog.formula.overline`.  Rules are modus
ponens and necessitation; ``taut`` admits any propositional tautology, with
modal subformulas read as letters.

Derivation files carry one step per line::

    <index>. <formula> ; <justification>

with justification one of ``premise``, ``taut``, ``ax1`` .. ``ax5``,
``s5k``, ``s5t``, ``s55``, ``mp i j`` (line j is ``line i -> this``) or
``nec i``.  Blank lines and lines starting with ``%`` are ignored.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from importlib import resources
from typing import Iterable

from .formula import (
    And, Atom, Formula, Intend, Nec, Not, Or, Top, TOP, ParseError, implies, iff,
    overline, parse, to_text,
)

__all__ = [
    "Justification", "Line", "Derivation", "CheckFailure", "ResourceLimit",
    "SCHEMA_KINDS", "KINDS", "matches_axiom", "is_tautology", "check_derivation",
    "parse_derivation", "format_derivation", "canned_lemmas",
]

SCHEMA_KINDS = ("ax1", "ax2", "ax3", "ax4", "ax5", "s5k", "s5t", "s55")
KINDS = ("premise", "taut") + SCHEMA_KINDS + ("mp", "nec")
MAX_LETTERS = 20


class ResourceLimit(RuntimeError):
    pass


class CheckFailure(Exception):
    """The first bad line of a derivation and a short machine-readable reason."""

    def __init__(self, line: int, reason: str, detail: str = ""):
        self.line = line
        self.reason = reason
        self.detail = detail
        msg = f"line {line}: {reason}" if line else reason
        super().__init__(f"{msg} ({detail})" if detail else msg)


@dataclass(frozen=True)
class Justification:
    kind: str
    refs: tuple[int, ...] = ()

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown justification {self.kind!r}")
        arity = {"mp": 2, "nec": 1}.get(self.kind, 0)
        if len(self.refs) != arity:
            raise ValueError(f"{self.kind} takes {arity} line reference(s)")

    def __str__(self) -> str:
        return " ".join([self.kind, *map(str, self.refs)])


@dataclass(frozen=True)
class Line:
    index: int
    formula: Formula
    justification: Justification


@dataclass(frozen=True)
class Derivation:
    lines: tuple[Line, ...]

    @property
    def conclusion(self) -> Formula | None:
        return self.lines[-1].formula if self.lines else None


# -- schema matching ------------------------------------------------------------

@dataclass(frozen=True)
class _Meta:
    name: str


def _match(schema, phi: Formula, env: dict) -> bool:
    if isinstance(schema, _Meta):
        bound = env.get(schema.name)
        if bound is None:
            env[schema.name] = phi
            return True
        return bound == phi
    if type(schema) is not type(phi):
        return False
    if isinstance(schema, (Top,)):
        return True
    if isinstance(schema, Atom):
        return schema == phi
    if isinstance(schema, (Not, Nec, Intend)):
        return _match(schema.arg, phi.arg, env)
    return _match(schema.left, phi.left, env) and _match(schema.right, phi.right, env)


def _I(arg) -> Intend:
    # schema-side I node: metavariables would fail the layering check
    node = object.__new__(Intend)
    object.__setattr__(node, "arg", arg)
    return node


_A, _B, _X, _Y, _OA = _Meta("a"), _Meta("b"), _Meta("x"), _Meta("y"), _Meta("over_a")

_SCHEMAS = {
    "ax1": _I(TOP),
    "ax2": implies(_I(_A), _I(_OA)),
    "ax3": implies(_I(_A), Not(_I(Not(_A)))),
    "ax4": iff(And(_I(_A), _I(_B)), _I(And(_A, _B))),
    "ax5": implies(Nec(implies(_B, _A)), implies(And(_I(_B), _I(_OA)), _I(_A))),
    "s5k": implies(Nec(implies(_X, _Y)), implies(Nec(_X), Nec(_Y))),
    "s5t": implies(Nec(_X), _X),
    "s55": implies(Not(Nec(_X)), Nec(Not(Nec(_X)))),
}


def matches_axiom(phi: Formula, kind: str) -> bool:
    """Whether ``phi`` is an instance of the named axiom schema."""
    if kind not in _SCHEMAS:
        raise ValueError(f"{kind!r} is not an axiom schema")
    env: dict = {}
    if not _match(_SCHEMAS[kind], phi, env):
        return False
    if "over_a" in env:
        return env["over_a"] == overline(env["a"])
    return True


# -- tautologies ----------------------------------------------------------------

def _letters(phi: Formula, out: dict) -> None:
    if isinstance(phi, (Atom, Nec, Intend)):
        out.setdefault(phi, len(out))
    elif isinstance(phi, Not):
        _letters(phi.arg, out)
    elif isinstance(phi, (And, Or)):
        _letters(phi.left, out)
        _letters(phi.right, out)


def is_tautology(phi: Formula) -> bool:
    """Truth-table check with atoms and maximal modal subformulas as letters.

    Each letter is a bit column over all 2**n rows, so the whole table is
    evaluated in one pass of integer operations.  More than ``MAX_LETTERS``
    letters raises ResourceLimit.
    """
    letters: dict[Formula, int] = {}
    _letters(phi, letters)
    n = len(letters)
    if n > MAX_LETTERS:
        raise ResourceLimit(f"{n} letters exceeds the limit of {MAX_LETTERS}")
    rows = 1 << n
    full = (1 << rows) - 1
    columns = {}
    for letter, i in letters.items():
        # row r gives letter i the value of bit i of r: runs of 2**i ones
        # alternating with runs of zeros, replicated by a repunit multiplier
        half = 1 << i
        period = half << 1
        unit = ((1 << half) - 1) << half
        columns[letter] = unit * (full // ((1 << period) - 1))

    def ev(f: Formula) -> int:
        if isinstance(f, Top):
            return full
        if f in columns:
            return columns[f]
        if isinstance(f, Not):
            return full ^ ev(f.arg)
        if isinstance(f, Or):
            return ev(f.left) | ev(f.right)
        if isinstance(f, And):
            return ev(f.left) & ev(f.right)
        raise TypeError(f"not a formula: {f!r}")

    return ev(phi) == full


# -- checking ---------------------------------------------------------------------

def check_derivation(
    d: Derivation,
    premises: Iterable[Formula] = (),
    goal: Formula | None = None,
) -> None:
    """Check every line of ``d``; raise CheckFailure at the first bad one.

    Necessitation only applies to lines that do not depend on premises.  When
    ``goal`` is given the last line must equal it.
    """
    premises = set(premises)
    if not d.lines:
        raise CheckFailure(0, "no lines")
    formulas: dict[int, Formula] = {}
    uses_premise: dict[int, bool] = {}
    for n, line in enumerate(d.lines, start=1):
        if line.index != n:
            raise CheckFailure(line.index, "index", f"expected {n}")
        just = line.justification
        phi = line.formula
        for ref in just.refs:
            if not 1 <= ref < n:
                raise CheckFailure(n, "reference", f"line {ref} is not an earlier line")
        kind = just.kind
        dep = False
        if kind == "premise":
            if phi not in premises:
                raise CheckFailure(n, "premise", "not among the premises")
            dep = True
        elif kind == "taut":
            try:
                ok = is_tautology(phi)
            except ResourceLimit as exc:
                raise CheckFailure(n, "resource limit", str(exc)) from None
            if not ok:
                raise CheckFailure(n, "taut", "not a propositional tautology")
        elif kind in SCHEMA_KINDS:
            if not matches_axiom(phi, kind):
                raise CheckFailure(n, "schema", f"not an instance of {kind}")
        elif kind == "mp":
            i, j = just.refs
            major = formulas[j]
            if not (isinstance(major, Or) and isinstance(major.left, Not)):
                raise CheckFailure(n, "MP shape", f"line {j} is not an implication")
            if major.left.arg != formulas[i] or major.right != phi:
                raise CheckFailure(n, "MP mismatch", f"line {j} is not line {i} -> line {n}")
            dep = uses_premise[i] or uses_premise[j]
        elif kind == "nec":
            (i,) = just.refs
            if phi != Nec(formulas[i]):
                raise CheckFailure(n, "nec shape", f"expected #(line {i})")
            if uses_premise[i]:
                raise CheckFailure(n, "nec on premise", f"line {i} depends on premises")
        formulas[n] = phi
        uses_premise[n] = dep
    if goal is not None and d.lines[-1].formula != goal:
        raise CheckFailure(len(d.lines), "goal", "last line is not the goal")


# -- text format --------------------------------------------------------------------

_LINE_RE = re.compile(r"\s*(\d+)\s*\.\s*(.*)\Z")


def _parse_justification(text: str, lineno: int) -> Justification:
    words = text.lower().split()
    if not words:
        raise CheckFailure(lineno, "syntax", "missing justification")
    kind, *rest = words
    try:
        refs = tuple(int(r) for r in rest)
        return Justification(kind, refs)
    except ValueError as exc:
        raise CheckFailure(lineno, "syntax", str(exc)) from None


def parse_derivation(text: str) -> Derivation:
    """Read the line-per-step text format; raise CheckFailure(reason='syntax')."""
    lines = []
    for raw in text.splitlines():
        stripped = raw.strip()
        if not stripped or stripped.startswith("%"):
            continue
        m = _LINE_RE.match(stripped)
        if m is None or ";" not in m.group(2):
            raise CheckFailure(len(lines) + 1, "syntax", f"cannot read {stripped!r}")
        index = int(m.group(1))
        body, _, just = m.group(2).rpartition(";")
        try:
            phi = parse(body)
        except (ParseError, ValueError) as exc:
            raise CheckFailure(index, "syntax", str(exc)) from None
        lines.append(Line(index, phi, _parse_justification(just, index)))
    return Derivation(tuple(lines))


def format_derivation(d: Derivation) -> str:
    return "".join(
        f"{line.index}. {to_text(line.formula)} ; {line.justification}\n" for line in d.lines
    )


_CANNED = {
    "overline-conj": "overline_conj.txt",
    "overline-conj-split": "overline_conj_split.txt",
    "overline-weaken": "overline_weaken.txt",
    "disjunction": "disjunction.txt",
}


def canned_lemmas() -> list[tuple[str, Derivation]]:
    """Shipped derivations of instances of the derivable schemas."""
    base = resources.files("intentlog") / "data" / "derivations"
    return [
        (name, parse_derivation((base / fname).read_text(encoding="utf-8")))
        for name, fname in _CANNED.items()
    ]
