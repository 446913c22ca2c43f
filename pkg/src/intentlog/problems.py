"""Finite problems models: a join-semilattice of decision problems with a
solution assignment on atoms."""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from itertools import combinations, product
from typing import Iterable, Mapping

from .formula import And, Atom, Formula, Intend, Nec, Not, Or, Top, check_layering, variables

__all__ = [
    "ProblemsModel", "Violation", "UnknownProblem", "EmptyFusion",
    "validate", "leq", "fuse_all", "solution_set", "solves_recursive",
    "solves_fast", "upward_closure",
]


class UnknownProblem(LookupError):
    pass


class EmptyFusion(ValueError):
    pass


@dataclass(frozen=True)
class Violation:
    """One broken law: ``law`` names it, ``witnesses`` pins the offending items."""

    law: str
    witnesses: tuple = ()

    def __str__(self) -> str:
        return f"{self.law}: " + ", ".join(map(str, self.witnesses))


def _key(x: str, y: str) -> tuple[str, str]:
    return (x, y) if x <= y else (y, x)


class ProblemsModel:
    """``problems`` is a finite set of names; ``fusion`` maps unordered pairs
    (either a 2-tuple in any order or a ``frozenset``) to problems, where
    idempotent pairs may be left out; ``solves`` gives each atom its set of
    problems.

    Construction never raises on law violations; call ``validate``.
    """

    def __init__(
        self,
        problems: Iterable[str],
        fusion: Mapping,
        solves: Mapping[str, Iterable[str]] | None = None,
    ):
        self.problems: tuple[str, ...] = tuple(sorted(set(problems)))
        self._pset = frozenset(self.problems)
        self.table: dict[tuple[str, str], str] = {}
        self._conflicts: list[Violation] = []
        for raw, value in fusion.items():
            pair = sorted(raw)
            if len(pair) == 1:
                pair = pair * 2
            if len(pair) != 2:
                raise ValueError(f"fusion key must name two problems: {raw!r}")
            k = _key(*pair)
            if k in self.table and self.table[k] != value:
                self._conflicts.append(
                    Violation("commutativity", (k[0], k[1], self.table[k], value))
                )
                continue
            self.table[k] = value
        self.solves: dict[str, frozenset[str]] = {
            atom: frozenset(ps) for atom, ps in (solves or {}).items()
        }
        self._sol_cache: dict[Formula, frozenset[str]] = {}

    def __repr__(self) -> str:
        return f"ProblemsModel(problems={self.problems!r}, solves={self.solves!r})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, ProblemsModel):
            return NotImplemented
        return (self.problems, self.full_table(), self._solves_norm()) == (
            other.problems, other.full_table(), other._solves_norm()
        )

    def __hash__(self) -> int:
        return hash((self.problems, tuple(sorted(self.full_table().items()))))

    def _solves_norm(self):
        return {a: s for a, s in self.solves.items() if s}

    def full_table(self) -> dict[tuple[str, str], str]:
        table = {(a, a): a for a in self.problems}
        table.update(self.table)
        return table

    def check(self, a: str) -> str:
        if a not in self._pset:
            raise UnknownProblem(a)
        return a

    def fuse(self, a: str, b: str) -> str:
        self.check(a)
        self.check(b)
        k = _key(a, b)
        if k in self.table:
            return self.table[k]
        if a == b:
            return a
        raise KeyError(f"fusion undefined for {a} and {b}")

    def solvers(self, atom: str) -> frozenset[str]:
        """s(p); atoms the model does not mention solve nothing."""
        return self.solves.get(atom, frozenset())

    def up(self, a: str) -> frozenset[str]:
        return frozenset(b for b in self.problems if self.fuse(a, b) == b)


def validate(pm: ProblemsModel) -> list[Violation]:
    """Every violated law, in a stable order; empty means the model is sound."""
    out: list[Violation] = []
    if not pm.problems:
        return [Violation("nonempty")]
    out.extend(pm._conflicts)
    for (a, b), c in sorted(pm.table.items()):
        for x in (a, b):
            if x not in pm._pset:
                out.append(Violation("unknown-problem", (x,)))
        if c not in pm._pset:
            out.append(Violation("closure", (a, b, c)))
        if a == b and c != a:
            out.append(Violation("idempotence", (a, c)))
    for a, b in combinations(pm.problems, 2):
        if (a, b) not in pm.table:
            out.append(Violation("totality", (a, b)))
    for atom in sorted(pm.solves):
        for x in sorted(pm.solves[atom] - pm._pset):
            out.append(Violation("unknown-problem", (atom, x)))
    if out:
        # the remaining laws need a total, closed table
        return out
    for a, b, c in product(pm.problems, repeat=3):
        left = pm.fuse(pm.fuse(a, b), c)
        right = pm.fuse(a, pm.fuse(b, c))
        if left != right:
            out.append(Violation("associativity", (a, b, c, left, right)))
    for atom in sorted(pm.solves):
        sols = pm.solves[atom]
        for a in sorted(sols):
            for b in pm.problems:
                if b not in sols and pm.fuse(a, b) == b:
                    out.append(Violation("upward-closure", (atom, a, b)))
    return out


def leq(pm: ProblemsModel, a: str, b: str) -> bool:
    """Parthood: ``a <= b`` iff ``a + b == b``."""
    return pm.fuse(a, b) == b


def fuse_all(pm: ProblemsModel, problems: Iterable[str]) -> str:
    items = sorted(set(problems))
    if not items:
        raise EmptyFusion("the fusion of no problems is not defined")
    return reduce(pm.fuse, items)


def solution_set(pm: ProblemsModel, phi: Formula) -> frozenset[str]:
    """s(phi) computed clause by clause, without assuming upward closure."""
    cache = pm._sol_cache
    if phi in cache:
        return cache[phi]
    if isinstance(phi, Top):
        out = pm._pset
    elif isinstance(phi, Atom):
        out = pm.solvers(phi.name) & pm._pset
    elif isinstance(phi, Not):
        out = solution_set(pm, phi.arg)
    elif isinstance(phi, Or):
        out = solution_set(pm, phi.left) & solution_set(pm, phi.right)
    elif isinstance(phi, And):
        left = solution_set(pm, phi.left)
        right = solution_set(pm, phi.right)
        out = frozenset(pm.fuse(b, c) for b in left for c in right)
    elif isinstance(phi, (Nec, Intend)):
        check_layering(phi)
        raise AssertionError("unreachable")
    else:
        raise TypeError(f"not a formula: {phi!r}")
    cache[phi] = out
    return out


def solves_recursive(pm: ProblemsModel, a: str, phi: Formula) -> bool:
    pm.check(a)
    check_layering(phi)
    return a in solution_set(pm, phi)


def solves_fast(pm: ProblemsModel, a: str, phi: Formula) -> bool:
    """``a`` solves every atom of ``phi`` (always true when there are none).

    Agrees with ``solves_recursive`` on upward-closed models.
    """
    pm.check(a)
    check_layering(phi)
    return all(a in pm.solvers(v) for v in variables(phi))


def upward_closure(pm: ProblemsModel) -> ProblemsModel:
    """Copy of ``pm`` with every solve set replaced by its upward closure."""
    solves = {}
    for atom, sols in pm.solves.items():
        closed = set()
        for a in sols:
            closed |= pm.up(a) if a in pm._pset else {a}
        solves[atom] = closed
    return ProblemsModel(pm.problems, pm.table, solves)
