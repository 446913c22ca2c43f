import json

import pytest
from hypothesis import given, settings

from helpers import core_formulas, formulas, models, shipped
from intentlog.formula import BOT, TOP, And, Atom, Intend, Not, Or, iff, implies, overline, parse
from intentlog.kripke import (
    KripkeModel, ModelError, UndeclaredAtom, UnknownWorld, dump_model, evaluate, extension,
    load_model, make_model, model_from_dict, model_to_dict, valid_on_model, validate_model,
)
from intentlog.proof import is_tautology


@pytest.fixture
def m_eq():
    return shipped("equivalent_atoms")


def test_equivalent_atoms_model_is_valid(m_eq):
    assert validate_model(m_eq) == []


def test_seriality_violation(m_eq):
    broken = KripkeModel(m_eq.worlds, frozenset(), m_eq.problems, m_eq.assignment, m_eq.valuation)
    assert [v.law for v in validate_model(broken)] == ["seriality"]


def test_assignment_totality(m_eq):
    broken = KripkeModel(m_eq.worlds, m_eq.relation, m_eq.problems, {}, m_eq.valuation)
    assert "assignment-totality" in [v.law for v in validate_model(broken)]


def test_make_model_raises(m_eq):
    with pytest.raises(ModelError) as info:
        make_model(["w"], [], m_eq.problems, {"w": "zz"}, {"p": ["v"]})
    laws = {v.law for v in info.value.violations}
    assert {"seriality", "assignment-range", "valuation-unknown-world"} <= laws


def test_eval_examples(m_eq):
    assert evaluate(m_eq, "w", parse("#(p <-> q) & I p"))
    assert not evaluate(m_eq, "w", parse("I q"))
    assert evaluate(m_eq, "w", parse("I T"))
    assert not valid_on_model(m_eq, parse("#(p<->q) -> (I p -> I q)"))
    assert extension(m_eq, Atom("p")) == {"w"}
    assert extension(m_eq, TOP) == {"w"}
    assert extension(m_eq, BOT) == set()


def test_unknown_world(m_eq):
    with pytest.raises(UnknownWorld):
        evaluate(m_eq, "v", TOP)


def test_undeclared_atoms(m_eq):
    z = Atom("z")
    assert extension(m_eq, z) == set()
    assert not evaluate(m_eq, "w", Intend(Or(z, Not(z))))
    with pytest.raises(UndeclaredAtom):
        extension(m_eq, z, strict=True)


def test_json_round_trip(m_eq, tmp_path):
    doc = model_to_dict(m_eq)
    path = tmp_path / "m.json"
    path.write_text(dump_model(m_eq))
    again = load_model(path)
    assert model_to_dict(again) == doc
    assert json.loads(path.read_text())["fusion"] == {"a|b": "c", "a|c": "c", "b|c": "c"}


def test_close_upward():
    doc = model_to_dict(shipped("equivalent_atoms"))
    doc["solves"] = {"p": ["a"], "q": ["b"]}
    with pytest.raises(ModelError):
        load_model(doc)
    m = load_model(doc, close_upward=True)
    assert m.problems.solvers("p") == {"a", "c"}


def test_load_reports_json_errors(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{nope")
    with pytest.raises(ModelError) as info:
        load_model(path)
    assert info.value.violations[0].law == "json"
    with pytest.raises(ModelError):
        model_from_dict({"worlds": ["w"]})


def test_hyperintensionality_witness(m_eq):
    phi = parse("#(p <-> q) & I p & ~I q")
    assert valid_on_model(m_eq, phi)


@settings(max_examples=200)
@given(models(), core_formulas(max_leaves=8), core_formulas(max_leaves=8))
def test_intention_laws(m, a, b):
    Ia, Ib = Intend(a), Intend(b)
    assert valid_on_model(m, iff(And(Ia, Ib), Intend(And(a, b))))
    assert valid_on_model(m, implies(And(Ia, Ib), Intend(Or(a, b))))
    assert valid_on_model(m, implies(Ia, Intend(overline(a))))
    assert valid_on_model(m, implies(Ia, Not(Intend(Not(a)))))


@given(models(), formulas(max_leaves=10))
def test_extension_matches_pointwise(m, phi):
    ext = extension(m, phi)
    assert ext == {w for w in m.worlds if evaluate(m, w, phi)}
    assert extension(m, Not(phi)) == m.world_set - ext


@given(models(max_worlds=1), core_formulas())
def test_tautology_agrees_with_one_world_reflexive_model(m, phi):
    # every model with one world is reflexive; letters are plain atoms here
    if is_tautology(phi):
        assert valid_on_model(m, phi)


@given(models())
def test_generated_models_are_valid(m):
    assert validate_model(m) == []
