"""Bounded countermodel search.

Problems are the nonempty subsets of a generator set under union.  That is
always a valid semilattice, and a model over fewer generators embeds into it
with the same truths, so fixing the generator count at the bound loses
nothing.  Solve sets range over upward-closed sets only.

Enumeration order, outermost first: world count (ascending), valuation,
relation, solve sets, assignment.  Within each, subsets of worlds go by
bitmask and upward-closed sets by their minimal elements, with the empty set
last.  The first countermodel in that order is returned.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations, product

from . import generate
from .formula import Atom, Formula, Intend, Nec, Not, Or, iff, implies, to_text, variables
from .kripke import KripkeModel, evaluate, extension, model_to_dict, validate_model
from .problems import ProblemsModel
from .proof import ResourceLimit, is_tautology

__all__ = [
    "SearchBounds", "Countermodel", "find_countermodel",
    "PrincipleResult", "refute_closure_principles", "ResourceLimit",
]

GENERATORS = "abcdefgh"


@dataclass(frozen=True)
class SearchBounds:
    max_worlds: int
    max_generators: int
    atoms: tuple[str, ...]
    seed: int = 0
    budget: int = 10**6

    def __post_init__(self):
        object.__setattr__(self, "atoms", tuple(self.atoms))
        if self.max_worlds < 1 or self.max_generators < 1:
            raise ValueError("bounds must be positive")
        if not self.atoms:
            raise ValueError("at least one atom is required")
        if self.max_generators > 4:
            raise ValueError("at most 4 generators are supported")


@dataclass(frozen=True)
class Countermodel:
    model: KripkeModel
    world: str
    steps: int

    def to_dict(self) -> dict:
        return {"world": self.world, "steps": self.steps, "model": model_to_dict(self.model)}


def _subsets(items):
    items = list(items)
    for mask in range(1 << len(items)):
        yield frozenset(x for i, x in enumerate(items) if mask >> i & 1)


def _up_sets(pm: ProblemsModel) -> list[frozenset[str]]:
    """Upward-closed subsets, ordered by minimal elements; the empty set last."""
    order = {a: i for i, a in enumerate(sorted(pm.problems, key=lambda s: (len(s), s)))}
    found = {}
    for size in range(1, len(pm.problems) + 1):
        for anti in combinations(sorted(pm.problems, key=order.get), size):
            if any(x != y and pm.fuse(x, y) == y for x in anti for y in anti):
                continue
            up = frozenset().union(*(pm.up(a) for a in anti))
            found.setdefault(up, anti)
    ordered = sorted(found, key=lambda up: (len(found[up]), [order[a] for a in found[up]]))
    return ordered + [frozenset()]


def _atoms_for(phi: Formula, bounds: SearchBounds) -> tuple[str, ...]:
    extra = [v for v in variables(phi) if v not in bounds.atoms]
    return tuple(bounds.atoms) + tuple(extra)


def _confirm(m: KripkeModel, w: str, phi: Formula) -> bool:
    return not validate_model(m) and not evaluate(m, w, phi)


def find_countermodel(
    phi: Formula, bounds: SearchBounds, randomized: bool = False
) -> Countermodel | None:
    """First model (in canonical order) with a world falsifying ``phi``.

    Returns None once the bounded space is exhausted.  Raises ResourceLimit
    after ``bounds.budget`` candidate models.  With ``randomized``, samples
    random models over random semilattices instead, seeded by ``bounds.seed``.
    """
    atoms = _atoms_for(phi, bounds)
    if randomized:
        return _random_search(phi, bounds, atoms)
    base = generate.powerset_semilattice(GENERATORS[: bounds.max_generators])
    ups = _up_sets(base)
    steps = 0
    for n in range(1, bounds.max_worlds + 1):
        worlds = tuple(f"w{i}" for i in range(n))
        world_subsets = list(_subsets(worlds))
        successor_choices = [s for s in world_subsets if s]
        for vals in product(world_subsets, repeat=len(atoms)):
            valuation = dict(zip(atoms, vals))
            for succs in product(successor_choices, repeat=n):
                relation = frozenset((w, v) for w, vs in zip(worlds, succs) for v in vs)
                for sols in product(ups, repeat=len(atoms)):
                    pm = ProblemsModel(base.problems, base.table, dict(zip(atoms, sols)))
                    for fs in product(base.problems, repeat=n):
                        steps += 1
                        if steps > bounds.budget:
                            raise ResourceLimit(f"search budget of {bounds.budget} steps exhausted")
                        m = KripkeModel(worlds, relation, pm, dict(zip(worlds, fs)), valuation, atoms)
                        bad = m.world_set - extension(m, phi)
                        if bad:
                            w = min(bad, key=worlds.index)
                            if not _confirm(m, w, phi):
                                raise AssertionError("countermodel failed re-validation")
                            return Countermodel(m, w, steps)
    return None


def _random_search(phi, bounds, atoms) -> Countermodel | None:
    rng = random.Random(bounds.seed)
    for step in range(1, bounds.budget + 1):
        m = generate.random_model(rng, bounds.max_worlds, bounds.max_generators, atoms)
        bad = m.world_set - extension(m, phi)
        if bad:
            w = min(bad, key=m.worlds.index)
            if not _confirm(m, w, phi):
                raise AssertionError("countermodel failed re-validation")
            return Countermodel(m, w, step)
    return None


@dataclass
class PrincipleResult:
    number: int
    name: str
    schema: str
    instance: Formula
    reading: str
    premise: Formula | None = None
    premise_is_tautology: bool | None = None
    countermodel: Countermodel | None = field(default=None)

    @property
    def refuted(self) -> bool:
        ok_premise = self.premise is None or self.premise_is_tautology
        return bool(ok_premise and self.countermodel is not None)

    def to_dict(self) -> dict:
        return {
            "principle": self.number,
            "name": self.name,
            "schema": self.schema,
            "instance": to_text(self.instance),
            "premise": to_text(self.premise) if self.premise is not None else None,
            "premise_is_tautology": self.premise_is_tautology,
            "reading": self.reading,
            "refuted": self.refuted,
            "countermodel": self.countermodel.to_dict() if self.countermodel else None,
        }


def refute_closure_principles(bounds: SearchBounds) -> list[PrincipleResult]:
    """Search countermodels to one instance of each of the four closure
    principles, using the first two atoms of the bounds.

    The rule-form principles (1 and 3) are refuted on an instance whose
    premise is a propositional tautology (checked by truth table) while the
    conclusion fails on the returned model.
    """
    if len(bounds.atoms) < 2:
        raise ValueError("closure principles need two atoms")
    p, q = Atom(bounds.atoms[0]), Atom(bounds.atoms[1])
    taut_p = Or(p, Not(p))
    taut_q = Or(q, Not(q))
    results = [
        PrincipleResult(
            1, "closure under logical entailment",
            "if |= a -> b then |= I a -> I b",
            implies(Intend(p), Intend(Or(p, q))),
            "premise a -> b is a tautology; the conclusion fails on the model",
            premise=implies(p, Or(p, q)),
        ),
        PrincipleResult(
            2, "necessary entailment",
            "#(a -> b) -> (I a -> I b)",
            implies(Nec(implies(p, q)), implies(Intend(p), Intend(q))),
            "the instance is false at the returned world",
        ),
        PrincipleResult(
            3, "closure under logical equivalence",
            "if |= a <-> b then |= I a <-> I b",
            iff(Intend(taut_p), Intend(taut_q)),
            "premise a <-> b is a tautology; the conclusion fails on the model",
            premise=iff(taut_p, taut_q),
        ),
        PrincipleResult(
            4, "necessary equivalence",
            "#(a <-> b) -> (I a <-> I b)",
            implies(Nec(iff(p, q)), iff(Intend(p), Intend(q))),
            "the instance is false at the returned world",
        ),
    ]
    for r in results:
        if r.premise is not None:
            r.premise_is_tautology = is_tautology(r.premise)
        r.countermodel = find_countermodel(r.instance, bounds)
    return results
