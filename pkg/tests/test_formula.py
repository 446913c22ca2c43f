import pytest
from hypothesis import given

from helpers import core_formulas, formulas
from intentlog.formula import (
    BOT, TOP, And, Atom, Intend, LayeringError, Nec, Not, Or, ParseError, iff, implies,
    overline, parse, to_text, variables,
)
from intentlog.proof import is_tautology

p, q, r = Atom("p"), Atom("q"), Atom("r")


def test_parse_basic():
    assert parse("I p") == Intend(p)
    assert parse("I (p -> q)") == Intend(Or(Not(p), q))
    assert parse("T") == TOP
    assert parse("~T") == BOT


def test_parse_rejects_modal_under_intention():
    for text in ("I # p", "I I p", "I (p & # q)", "I ~I p"):
        with pytest.raises(LayeringError):
            parse(text)


def test_intend_constructor_enforces_layering():
    with pytest.raises(LayeringError):
        Intend(Nec(p))


def test_sugar_is_eliminated():
    assert parse("p <-> q") == And(Or(Not(p), q), Or(Not(q), p))
    assert parse("p -> q -> r") == implies(p, implies(q, r))
    assert parse("p <-> q <-> r") == iff(iff(p, q), r)


def test_precedence():
    assert parse("p | q & r") == Or(p, And(q, r))
    assert parse("~p & q") == And(Not(p), q)
    assert parse("# p -> p") == Or(Not(Nec(p)), p)
    assert parse("p | q | r") == Or(Or(p, q), r)


def test_unicode_aliases():
    assert parse("⊞(p → q) ∧ ¬⊥") == And(Nec(implies(p, q)), Not(BOT))
    assert parse("p ∨ ⊤") == Or(p, TOP)


@pytest.mark.parametrize("text, where", [("p &", 3), ("(p | q", 6), ("p q", 2), ("", 0), ("p $ q", 2)])
def test_parse_errors_carry_position(text, where):
    with pytest.raises(ParseError) as info:
        parse(text)
    assert info.value.position == where


def test_reserved_names():
    with pytest.raises(ValueError):
        Atom("I")
    with pytest.raises(ValueError):
        Atom("1p")
    assert Atom("BOT").name == "BOT"


def test_variables():
    assert variables(TOP) == ()
    assert variables(And(p, Or(q, p))) == ("p", "q")
    assert variables(Intend(Not(r))) == ("r",)


def test_overline_examples():
    assert overline(p) == Or(p, Not(p))
    assert overline(And(q, p)) == And(Or(p, Not(p)), Or(q, Not(q)))
    assert overline(TOP) == TOP
    assert overline(BOT) == TOP
    assert overline(And(r, And(q, p))) == And(Or(p, Not(p)), And(Or(q, Not(q)), Or(r, Not(r))))


def test_print_examples():
    assert to_text(Intend(p)) == "I p"
    assert to_text(Not(TOP)) == "~T"
    assert parse(to_text(Or(p, And(q, r)))) == Or(p, And(q, r))
    assert to_text(And(Or(p, q), r)) == "(p | q) & r"


@given(formulas(max_leaves=30))
def test_round_trip(phi):
    assert parse(to_text(phi)) == phi


@given(core_formulas(), core_formulas())
def test_overline_depends_only_on_variables(a, b):
    if variables(a) == variables(b):
        assert overline(a) == overline(b)


@given(formulas())
def test_overline_is_tautology(phi):
    assert is_tautology(overline(phi))
