"""Random formulas and models, for property tests and randomized search."""

from __future__ import annotations

import random
from itertools import combinations

from .formula import TOP, And, Atom, Formula, Intend, Nec, Not, Or
from .kripke import KripkeModel
from .problems import ProblemsModel

__all__ = [
    "random_core_formula", "random_formula", "random_semilattice",
    "random_problems_model", "random_model", "powerset_semilattice",
]


def random_core_formula(rng: random.Random, atoms, depth: int) -> Formula:
    """A core formula of depth at most ``depth`` over ``atoms``."""
    if depth <= 0 or rng.random() < 0.2:
        if rng.random() < 0.1:
            return TOP
        return Atom(rng.choice(atoms))
    op = rng.randrange(3)
    if op == 0:
        return Not(random_core_formula(rng, atoms, depth - 1))
    cls = Or if op == 1 else And
    return cls(
        random_core_formula(rng, atoms, depth - 1),
        random_core_formula(rng, atoms, depth - 1),
    )


def random_formula(rng: random.Random, atoms, depth: int) -> Formula:
    """A formula of the full language, depth at most ``depth``."""
    if depth <= 0 or rng.random() < 0.15:
        if rng.random() < 0.1:
            return TOP
        return Atom(rng.choice(atoms))
    op = rng.randrange(5)
    if op == 0:
        return Not(random_formula(rng, atoms, depth - 1))
    if op == 1:
        return Nec(random_formula(rng, atoms, depth - 1))
    if op == 2:
        return Intend(random_core_formula(rng, atoms, depth - 1))
    cls = Or if op == 3 else And
    return cls(random_formula(rng, atoms, depth - 1), random_formula(rng, atoms, depth - 1))


def _name(block: frozenset) -> str:
    return "".join(sorted(block))


def powerset_semilattice(generators) -> ProblemsModel:
    """Nonempty subsets of ``generators`` (single letters) under union.

    Problems are named by their sorted letters, so ``a | b`` fuse to ``ab``.
    """
    gens = sorted(generators)
    blocks = [frozenset(c) for k in range(1, len(gens) + 1) for c in combinations(gens, k)]
    return _union_model(blocks)


def _union_model(blocks) -> ProblemsModel:
    names = {b: _name(b) for b in blocks}
    fusion = {}
    for x, y in combinations(blocks, 2):
        fusion[(names[x], names[y])] = names[x | y]
    return ProblemsModel(names.values(), fusion, {})


def random_semilattice(rng: random.Random, max_generators: int = 3) -> ProblemsModel:
    """A random finite join-semilattice, realised as a union-closed family.

    Every finite join-semilattice arises this way, so the fusion tables are
    not limited to full powersets.
    """
    k = rng.randint(1, max_generators)
    letters = "abcdefgh"[:k]
    family: set[frozenset] = set()
    for _ in range(rng.randint(1, (1 << k) - 1)):
        size = rng.randint(1, k)
        family.add(frozenset(rng.sample(letters, size)))
    closed = set(family)
    changed = True
    while changed:
        changed = False
        for x, y in combinations(list(closed), 2):
            if x | y not in closed:
                closed.add(x | y)
                changed = True
    return _union_model(sorted(closed, key=lambda b: (len(b), sorted(b))))


def random_up_set(rng: random.Random, pm: ProblemsModel, density: float = 0.35):
    seeds = [a for a in pm.problems if rng.random() < density]
    out: set[str] = set()
    for a in seeds:
        out |= pm.up(a)
    return frozenset(out)


def random_problems_model(
    rng: random.Random, atoms=("p", "q", "r"), max_generators: int = 3
) -> ProblemsModel:
    """Random semilattice with an upward-closed solve set for each atom."""
    base = random_semilattice(rng, max_generators)
    solves = {p: random_up_set(rng, base) for p in atoms}
    return ProblemsModel(base.problems, base.table, solves)


def random_model(
    rng: random.Random,
    max_worlds: int = 4,
    max_generators: int = 3,
    atoms=("p", "q", "r"),
) -> KripkeModel:
    """A random valid problem-sensitive model."""
    n = rng.randint(1, max_worlds)
    worlds = tuple(f"w{i}" for i in range(n))
    relation = set()
    for w in worlds:
        succ = [v for v in worlds if rng.random() < 0.5] or [rng.choice(worlds)]
        relation.update((w, v) for v in succ)
    pm = random_problems_model(rng, atoms, max_generators)
    valuation = {p: frozenset(w for w in worlds if rng.random() < 0.5) for p in atoms}
    assignment = {w: rng.choice(pm.problems) for w in worlds}
    return KripkeModel(worlds, frozenset(relation), pm, assignment, valuation, tuple(atoms))
