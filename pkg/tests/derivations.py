"""Random valid derivations and single-justification mutations."""

import random
from itertools import product

from intentlog import generate
from intentlog.formula import TOP, And, Atom, Intend, Nec, Not, Or, Top, iff, implies, overline
from intentlog.proof import Derivation, Justification, KINDS, Line

ATOMS = ("p", "q", "r")
SCHEMAS = ("ax1", "ax2", "ax3", "ax4", "ax5", "s5k", "s5t", "s55")


def axiom_instance(rng, kind, depth=2):
    a = generate.random_core_formula(rng, ATOMS, depth)
    b = generate.random_core_formula(rng, ATOMS, depth)
    x = generate.random_formula(rng, ATOMS, depth)
    y = generate.random_formula(rng, ATOMS, depth)
    return {
        "ax1": lambda: Intend(generate.TOP),
        "ax2": lambda: implies(Intend(a), Intend(overline(a))),
        "ax3": lambda: implies(Intend(a), Not(Intend(Not(a)))),
        "ax4": lambda: iff(And(Intend(a), Intend(b)), Intend(And(a, b))),
        "ax5": lambda: implies(Nec(implies(b, a)), implies(And(Intend(b), Intend(overline(a))), Intend(a))),
        "s5k": lambda: implies(Nec(implies(x, y)), implies(Nec(x), Nec(y))),
        "s5t": lambda: implies(Nec(x), x),
        "s55": lambda: implies(Not(Nec(x)), Nec(Not(Nec(x)))),
    }[kind]()


def random_derivation(rng, steps=8):
    """A premise-free derivation mixing schemas, tautologies, MP and necessitation."""
    lines = []

    def add(phi, kind, *refs):
        lines.append(Line(len(lines) + 1, phi, Justification(kind, refs)))

    kind = rng.choice(SCHEMAS)
    add(axiom_instance(rng, kind), kind)
    while len(lines) < steps:
        move = rng.randrange(3)
        if move == 0:
            kind = rng.choice(SCHEMAS)
            add(axiom_instance(rng, kind), kind)
        elif move == 1:
            i = rng.randrange(len(lines)) + 1
            add(Nec(lines[i - 1].formula), "nec", i)
        else:
            # weaken an earlier theorem A to B | A via the tautology A -> (B | A)
            i = rng.randrange(len(lines)) + 1
            A = lines[i - 1].formula
            B = generate.random_formula(rng, ATOMS, 2)
            add(implies(A, Or(B, A)), "taut")
            add(Or(B, A), "mp", i, len(lines))
    return Derivation(tuple(lines))


def _letters(phi, out):
    if isinstance(phi, (Atom, Nec, Intend)):
        out.add(phi)
    elif isinstance(phi, Not):
        _letters(phi.arg, out)
    elif isinstance(phi, (And, Or)):
        _letters(phi.left, out)
        _letters(phi.right, out)


def _truth(phi, row):
    if isinstance(phi, Top):
        return True
    if phi in row:
        return row[phi]
    if isinstance(phi, Not):
        return not _truth(phi.arg, row)
    if isinstance(phi, Or):
        return _truth(phi.left, row) or _truth(phi.right, row)
    return _truth(phi.left, row) and _truth(phi.right, row)


def brute_tautology(phi):
    letters = set()
    _letters(phi, letters)
    letters = list(letters)
    return all(
        _truth(phi, dict(zip(letters, values)))
        for values in product((False, True), repeat=len(letters))
    )


def _rebuild(phi, kind):
    # read the metavariables off fixed positions and rebuild the instance
    if kind == "ax1":
        return Intend(TOP)
    if kind == "ax2":
        a = phi.left.arg.arg
        return implies(Intend(a), Intend(overline(a)))
    if kind == "ax3":
        a = phi.left.arg.arg
        return implies(Intend(a), Not(Intend(Not(a))))
    if kind == "ax4":
        a, b = phi.left.right.arg.left, phi.left.right.arg.right
        return iff(And(Intend(a), Intend(b)), Intend(And(a, b)))
    if kind == "ax5":
        a = phi.right.right.arg
        b = phi.right.left.arg.left.arg
        return implies(Nec(implies(b, a)), implies(And(Intend(b), Intend(overline(a))), Intend(a)))
    if kind == "s5k":
        x, y = phi.right.left.arg.arg, phi.right.right.arg
        return implies(Nec(implies(x, y)), implies(Nec(x), Nec(y)))
    if kind == "s5t":
        x = phi.right
        return implies(Nec(x), x)
    x = phi.left.arg.arg.arg
    return implies(Not(Nec(x)), Nec(Not(Nec(x))))


def legitimate(d, n):
    """Whether line n's justification really justifies it (premise-free)."""
    line = d.lines[n - 1]
    j, phi = line.justification, line.formula
    if any(not 1 <= r < n for r in j.refs):
        return False
    if j.kind == "premise":
        return False
    if j.kind == "taut":
        return brute_tautology(phi)
    if j.kind == "mp":
        i, k = j.refs
        return d.lines[k - 1].formula == implies(d.lines[i - 1].formula, phi)
    if j.kind == "nec":
        return phi == Nec(d.lines[j.refs[0] - 1].formula)
    try:
        return _rebuild(phi, j.kind) == phi
    except (AttributeError, ValueError):
        return False


def mutate(rng, d):
    """Replace one line's justification with a different one that does not
    justify the line, judged by ``legitimate``."""
    k = rng.randrange(len(d.lines))
    old = d.lines[k].justification
    n = k + 1
    while True:
        kind = rng.choice(KINDS)
        if kind == "mp":
            refs = (rng.randint(1, max(1, n - 1)), rng.randint(1, max(1, n - 1)))
        elif kind == "nec":
            refs = (rng.randint(1, max(1, n - 1)),)
        else:
            refs = ()
        new = Justification(kind, refs)
        if new == old:
            continue
        lines = list(d.lines)
        lines[k] = Line(n, lines[k].formula, new)
        bad = Derivation(tuple(lines))
        if not legitimate(bad, n):
            return bad, n
