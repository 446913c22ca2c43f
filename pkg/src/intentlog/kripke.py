"""Problem-sensitive Kripke models: worlds, a serial conative relation, a
problems model, an assignment of problems to worlds, and a valuation.

Model files are JSON documents of the form::

    {"worlds": ["w"], "relation": [["w", "w"]], "atoms": ["p", "q"],
     "valuation": {"p": ["w"], "q": ["w"]},
     "problems": ["a", "b", "c"], "fusion": {"a|b": "c", "a|c": "c", "b|c": "c"},
     "solves": {"p": ["a", "c"], "q": ["b", "c"]}, "assignment": {"w": "a"}}

Fusion keys name an unordered pair as ``"x|y"``; idempotent pairs may be
omitted.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping

from . import problems as _problems
from .formula import And, Atom, Formula, Intend, Nec, Not, Or, Top, subformulas
from .problems import ProblemsModel, Violation

__all__ = [
    "KripkeModel", "ModelError", "UnknownWorld", "UndeclaredAtom",
    "validate_model", "evaluate", "valid_on_model", "extension",
    "model_from_dict", "model_to_dict", "load_model", "dump_model",
    "make_model", "undeclared_atoms",
]


class ModelError(ValueError):
    """A model file or structure that fails validation."""

    def __init__(self, violations: list[Violation]):
        self.violations = list(violations)
        super().__init__("; ".join(map(str, self.violations)))


class UnknownWorld(LookupError):
    pass


class UndeclaredAtom(LookupError):
    pass


@dataclass(frozen=True, eq=False)
class KripkeModel:
    worlds: tuple[str, ...]
    relation: frozenset[tuple[str, str]]
    problems: ProblemsModel
    assignment: Mapping[str, str]
    valuation: Mapping[str, frozenset[str]]
    atoms: tuple[str, ...] = ()
    _succ: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        # normalise inputs; declared atoms are the union of every place an atom is named
        set_ = object.__setattr__
        set_(self, "worlds", tuple(self.worlds))
        set_(self, "relation", frozenset(tuple(e) for e in self.relation))
        set_(self, "assignment", dict(self.assignment))
        set_(self, "valuation", {a: frozenset(ws) for a, ws in self.valuation.items()})
        declared = set(self.atoms) | set(self.valuation) | set(self.problems.solves)
        set_(self, "atoms", tuple(sorted(declared)))
        succ: dict[str, set[str]] = {w: set() for w in self.worlds}
        for u, v in self.relation:
            succ.setdefault(u, set()).add(v)
        set_(self, "_succ", {w: frozenset(vs) for w, vs in succ.items()})

    @property
    def world_set(self) -> frozenset[str]:
        return frozenset(self.worlds)

    def successors(self, w: str) -> frozenset[str]:
        self._check_world(w)
        return self._succ[w]

    def truth_set(self, atom: str) -> frozenset[str]:
        return self.valuation.get(atom, frozenset())

    def _check_world(self, w: str) -> None:
        if w not in self._succ or w not in self.world_set:
            raise UnknownWorld(w)


def validate_model(m: KripkeModel) -> list[Violation]:
    out: list[Violation] = []
    ws = m.world_set
    if not m.worlds:
        out.append(Violation("nonempty-worlds"))
    if len(ws) != len(m.worlds):
        out.append(Violation("duplicate-world"))
    for u, v in sorted(m.relation):
        for x in (u, v):
            if x not in ws:
                out.append(Violation("relation-unknown-world", (u, v)))
                break
    for w in m.worlds:
        if not (m._succ.get(w, frozenset()) & ws):
            out.append(Violation("seriality", (w,)))
    for w in m.worlds:
        if w not in m.assignment:
            out.append(Violation("assignment-totality", (w,)))
    pset = set(m.problems.problems)
    for w, a in sorted(m.assignment.items()):
        if w not in ws:
            out.append(Violation("assignment-unknown-world", (w,)))
        if a not in pset:
            out.append(Violation("assignment-range", (w, a)))
    for atom, extension_ in sorted(m.valuation.items()):
        for w in sorted(extension_ - ws):
            out.append(Violation("valuation-unknown-world", (atom, w)))
    out.extend(_problems.validate(m.problems))
    return out


class _Evaluator:
    """Computes truth sets bottom-up, caching per subformula for one query."""

    def __init__(self, m: KripkeModel, strict: bool = False):
        self.m = m
        self.strict = strict
        self.cache: dict[Formula, frozenset[str]] = {}

    def ext(self, phi: Formula) -> frozenset[str]:
        hit = self.cache.get(phi)
        if hit is not None:
            return hit
        m = self.m
        W = m.world_set
        if isinstance(phi, Top):
            out = W
        elif isinstance(phi, Atom):
            if self.strict and phi.name not in m.atoms:
                raise UndeclaredAtom(phi.name)
            out = m.truth_set(phi.name) & W
        elif isinstance(phi, Not):
            out = W - self.ext(phi.arg)
        elif isinstance(phi, Or):
            out = self.ext(phi.left) | self.ext(phi.right)
        elif isinstance(phi, And):
            out = self.ext(phi.left) & self.ext(phi.right)
        elif isinstance(phi, Nec):
            out = W if self.ext(phi.arg) == W else frozenset()
        elif isinstance(phi, Intend):
            body = self.ext(phi.arg)
            out = frozenset(
                w for w in m.worlds
                if m._succ[w] <= body
                and _problems.solves_fast(m.problems, m.assignment[w], phi.arg)
            )
        else:
            raise TypeError(f"not a formula: {phi!r}")
        self.cache[phi] = out
        return out


def extension(m: KripkeModel, phi: Formula, strict: bool = False) -> frozenset[str]:
    """The set of worlds of ``m`` where ``phi`` holds.

    Atoms missing from the valuation are false everywhere and solve no
    problem; with ``strict`` they raise UndeclaredAtom instead.
    """
    return _Evaluator(m, strict).ext(phi)


def evaluate(m: KripkeModel, w: str, phi: Formula, strict: bool = False) -> bool:
    m._check_world(w)
    return w in extension(m, phi, strict)


def valid_on_model(m: KripkeModel, phi: Formula, strict: bool = False) -> bool:
    return extension(m, phi, strict) == m.world_set


def undeclared_atoms(m: KripkeModel, phi: Formula) -> list[str]:
    declared = set(m.atoms)
    return sorted({n.name for n in subformulas(phi) if isinstance(n, Atom)} - declared)


# -- JSON interchange ----------------------------------------------------------

def model_from_dict(doc: Mapping, close_upward: bool = False) -> KripkeModel:
    """Build (but do not validate) a model from the JSON document shape."""
    try:
        fusion = {}
        for key, value in doc.get("fusion", {}).items():
            parts = key.split("|")
            if len(parts) != 2:
                raise ModelError([Violation("fusion-key", (key,))])
            fusion[tuple(parts)] = value
        pm = ProblemsModel(doc["problems"], fusion, doc.get("solves", {}))
        if close_upward and not _problems.validate(
            ProblemsModel(pm.problems, pm.table, {})
        ):
            pm = _problems.upward_closure(pm)
        return KripkeModel(
            worlds=tuple(doc["worlds"]),
            relation=frozenset(tuple(e) for e in doc.get("relation", [])),
            problems=pm,
            assignment=dict(doc.get("assignment", {})),
            valuation={a: frozenset(ws) for a, ws in doc.get("valuation", {}).items()},
            atoms=tuple(doc.get("atoms", ())),
        )
    except KeyError as exc:
        raise ModelError([Violation("missing-field", (exc.args[0],))]) from None
    except (TypeError, AttributeError) as exc:
        raise ModelError([Violation("malformed", (str(exc),))]) from None


def model_to_dict(m: KripkeModel) -> dict:
    pm = m.problems
    fusion = {
        f"{a}|{b}": c for (a, b), c in sorted(pm.table.items()) if a != b
    }
    return {
        "worlds": list(m.worlds),
        "relation": [list(e) for e in sorted(m.relation)],
        "atoms": list(m.atoms),
        "valuation": {a: sorted(m.truth_set(a)) for a in m.atoms},
        "problems": list(pm.problems),
        "fusion": fusion,
        "solves": {a: sorted(pm.solvers(a)) for a in m.atoms},
        "assignment": {w: m.assignment[w] for w in m.worlds},
    }


def load_model(source, close_upward: bool = False) -> KripkeModel:
    """Read and validate a model file (path) or an already-parsed mapping.

    Raises ModelError carrying every violation.
    """
    if isinstance(source, Mapping):
        doc = source
    else:
        try:
            doc = json.loads(Path(source).read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            raise ModelError([Violation("json", (str(exc),))]) from None
    if not isinstance(doc, Mapping):
        raise ModelError([Violation("malformed", ("top level must be an object",))])
    m = model_from_dict(doc, close_upward=close_upward)
    violations = validate_model(m)
    if violations:
        raise ModelError(violations)
    return m


def dump_model(m: KripkeModel, indent: int | None = 2) -> str:
    return json.dumps(model_to_dict(m), indent=indent, ensure_ascii=False)


def make_model(
    worlds: Iterable[str],
    relation: Iterable[tuple[str, str]],
    problems: ProblemsModel,
    assignment: Mapping[str, str],
    valuation: Mapping[str, Iterable[str]],
    atoms: Iterable[str] = (),
) -> KripkeModel:
    """Keyword-friendly constructor that validates; raises ModelError."""
    m = KripkeModel(
        tuple(worlds), frozenset(relation), problems, dict(assignment),
        {a: frozenset(ws) for a, ws in valuation.items()}, tuple(atoms),
    )
    violations = validate_model(m)
    if violations:
        raise ModelError(violations)
    return m
