"""Decision problems and subject matters as partitions of logical space, the
question-sensitive account of intention built on them, and the partition
induced by an atomic problem of a problem-sensitive model."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .formula import And, Atom, Formula, Not, Or, Top, check_layering
from .kripke import KripkeModel, extension

__all__ = [
    "Partition", "InvalidPartition", "DomainMismatch", "EmptyConativeSet",
    "subject_matter", "sm_parthood", "is_partial_solution",
    "bg_intends", "bg_intends_first_proposal", "pi_of_problem",
]


class InvalidPartition(ValueError):
    pass


class DomainMismatch(ValueError):
    pass


class EmptyConativeSet(ValueError):
    pass


def _order(cell) -> tuple:
    return min(cell)


@dataclass(frozen=True)
class Partition:
    """Nonempty pairwise-disjoint cells; the domain is their union.

    Cells are kept sorted by their least element so equal partitions compare
    equal structurally.
    """

    cells: tuple[frozenset, ...]

    def __init__(self, cells: Iterable[Iterable], domain: Iterable | None = None):
        frozen = [frozenset(c) for c in cells]
        seen: set = set()
        for c in frozen:
            if not c:
                raise InvalidPartition("empty cell")
            if c & seen:
                raise InvalidPartition(f"overlapping cells at {sorted(c & seen)}")
            seen |= c
        if domain is not None and seen != set(domain):
            raise InvalidPartition("cells do not cover the domain")
        object.__setattr__(self, "cells", tuple(sorted(frozen, key=_order)))

    @property
    def domain(self) -> frozenset:
        return frozenset().union(*self.cells)

    def __iter__(self):
        return iter(self.cells)

    def __len__(self) -> int:
        return len(self.cells)

    def __repr__(self) -> str:
        inner = ", ".join("{" + ", ".join(map(str, sorted(c))) + "}" for c in self.cells)
        return f"Partition({{{inner}}})"

    def block_of(self, x) -> frozenset:
        for c in self.cells:
            if x in c:
                return c
        raise KeyError(x)


def _union_of_cells(target: frozenset, q: Partition) -> bool:
    covered = frozenset().union(*(c for c in q.cells if c <= target))
    return covered == target


def subject_matter(m: KripkeModel, phi: Formula) -> Partition:
    """sm(phi): the partition of W that phi's atoms and connectives induce."""
    check_layering(phi)
    W = m.world_set
    return Partition(_sm(m, phi, W), W)


def _sm(m: KripkeModel, phi: Formula, W: frozenset) -> list[frozenset]:
    if isinstance(phi, Top):
        return [W]
    if isinstance(phi, Atom):
        yes = extension(m, phi)
        return [c for c in (yes, W - yes) if c]
    if isinstance(phi, Not):
        return _sm(m, phi.arg, W)
    if isinstance(phi, (And, Or)):
        left = _sm(m, phi.left, W)
        right = _sm(m, phi.right, W)
        return list({x & y for x in left for y in right if x & y})
    raise TypeError(f"not a core formula: {phi!r}")


def sm_parthood(q1: Partition, q2: Partition) -> bool:
    """``q1`` is part of ``q2``: every cell of q1 is a union of q2's cells."""
    if q1.domain != q2.domain:
        raise DomainMismatch("partitions over different domains")
    return all(_union_of_cells(c, q2) for c in q1.cells)


def is_partial_solution(worlds: Iterable, q: Partition) -> bool:
    target = frozenset(worlds)
    if not target <= q.domain:
        raise DomainMismatch("world set leaves the partition's domain")
    return _union_of_cells(target, q)


def _check_con(m: KripkeModel, con: Iterable, q: Partition) -> frozenset:
    con = frozenset(con)
    if not con:
        raise EmptyConativeSet("the conative set must be nonempty")
    if not con <= m.world_set or q.domain != m.world_set:
        raise DomainMismatch("conative set or decision problem outside W")
    return con


def bg_intends(m: KripkeModel, con: Iterable, q: Partition, phi: Formula) -> bool:
    """Question-sensitive intention: con forces phi and sm(phi) is part of q."""
    con = _check_con(m, con, q)
    check_layering(phi)
    return con <= extension(m, phi) and sm_parthood(subject_matter(m, phi), q)


def bg_intends_first_proposal(
    m: KripkeModel, con: Iterable, q: Partition, phi: Formula
) -> bool:
    """Variant where phi must itself be a partial solution to q."""
    con = _check_con(m, con, q)
    check_layering(phi)
    truth = extension(m, phi)
    return con <= truth and is_partial_solution(truth, q)


def pi_of_problem(m: KripkeModel, a: str) -> Partition:
    """The partition a problem induces: worlds share a cell iff they agree on
    every declared atom that ``a`` solves."""
    pm = m.problems
    pm.check(a)
    solved = [p for p in m.atoms if a in pm.solvers(p)]
    cells: dict[tuple, set] = {}
    for w in m.worlds:
        signature = tuple(w in m.truth_set(p) for p in solved)
        cells.setdefault(signature, set()).add(w)
    return Partition(cells.values(), m.world_set)
