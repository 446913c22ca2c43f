"""Shared strategies and small oracles for the test suite."""

import random

from hypothesis import strategies as st

from intentlog import generate
from intentlog.formula import TOP, And, Atom, Intend, Nec, Not, Or
from intentlog.kripke import load_model
from intentlog.cli import data_dir

ATOMS = ("p", "q", "r")


def shipped(name):
    return load_model(data_dir() / "models" / f"{name}.json")


def core_formulas(atoms=ATOMS, max_leaves=12):
    leaves = st.one_of(st.just(TOP), st.sampled_from(atoms).map(Atom))
    return st.recursive(
        leaves,
        lambda sub: st.one_of(
            sub.map(Not),
            st.tuples(sub, sub).map(lambda t: Or(*t)),
            st.tuples(sub, sub).map(lambda t: And(*t)),
        ),
        max_leaves=max_leaves,
    )


def formulas(atoms=ATOMS, max_leaves=12):
    leaves = st.one_of(
        st.just(TOP),
        st.sampled_from(atoms).map(Atom),
        core_formulas(atoms, 4).map(Intend),
    )
    return st.recursive(
        leaves,
        lambda sub: st.one_of(
            sub.map(Not),
            sub.map(Nec),
            st.tuples(sub, sub).map(lambda t: Or(*t)),
            st.tuples(sub, sub).map(lambda t: And(*t)),
        ),
        max_leaves=max_leaves,
    )


def models(max_worlds=4, max_generators=3, atoms=ATOMS):
    return st.integers(0, 2**32 - 1).map(
        lambda seed: generate.random_model(random.Random(seed), max_worlds, max_generators, atoms)
    )


def problems_models(max_generators=3, atoms=ATOMS):
    return st.integers(0, 2**32 - 1).map(
        lambda seed: generate.random_problems_model(random.Random(seed), atoms, max_generators)
    )
