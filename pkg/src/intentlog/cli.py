"""Command-line interface.

    intentlog check MODEL WORLD FORMULA [--trace]
    intentlog compare MODEL WORLD|* FORMULA...
    intentlog countermodel --formula F --max-worlds N --max-generators G [--budget K]
    intentlog countermodel --closure-principles [--max-worlds N --max-generators G]
    intentlog prove DERIVATION [--premises FILE] [--goal F] | --canned
    intentlog validate MODEL
    intentlog scenarios [SCENARIO...]

MODEL is a JSON model file, or the name of a shipped model (``equivalent_atoms``,
``incomparable_problems``, ``clerk``, ``dentist``, ``taxpayer``).

Exit codes: check 0 true, 1 false, 2 error.  validate 0 valid, 1 invalid,
2 unreadable.  prove 0 ok, 1 rejected, 2 unreadable.  countermodel 0 found,
1 not found, 2 error or budget exhausted.  scenarios 0 all expectations met,
1 some mismatch, 2 error.  compare 0, or 2 on error.

Setting INTENTLOG_STRICT=1 (or passing --strict) makes atoms missing from
the model an error instead of false.
"""

from __future__ import annotations

import argparse
import json
import os
import shlex
import sys
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from . import problems as _problems
from .formula import (
    Formula, Intend, LayeringError, ParseError, is_core, parse, subformulas, to_text, variables,
)
from .kripke import (
    KripkeModel, ModelError, UndeclaredAtom, UnknownWorld, extension, evaluate,
    load_model, undeclared_atoms,
)
from .partition import bg_intends, bg_intends_first_proposal, pi_of_problem
from .proof import CheckFailure, ResourceLimit, canned_lemmas, check_derivation, parse_derivation
from .search import SearchBounds, find_countermodel, refute_closure_principles

SEMANTICS = ("kripke", "bg", "bg-first")


class UsageError(Exception):
    pass


def data_dir() -> Path:
    return Path(str(resources.files("intentlog") / "data"))


def resolve_model_path(ref: str) -> Path:
    path = Path(ref)
    if path.exists():
        return path
    shipped = data_dir() / "models" / f"{ref}.json"
    if shipped.exists():
        return shipped
    return path


def strict_from_env() -> bool:
    return os.environ.get("INTENTLOG_STRICT", "") not in ("", "0")


def kv(**pairs) -> str:
    """One trace line of key=value pairs, values shell-quoted."""
    out = []
    for k, v in pairs.items():
        if isinstance(v, bool):
            v = "true" if v else "false"
        elif isinstance(v, (set, frozenset, list, tuple)):
            v = ",".join(sorted(map(str, v)))
        out.append(f"{k}={shlex.quote(str(v))}")
    return " ".join(out)


def _intend_nodes(phi: Formula):
    seen = []
    for node in subformulas(phi):
        if isinstance(node, Intend) and node not in seen:
            seen.append(node)
    return seen


def trace_lines(m: KripkeModel, w: str, phi: Formula) -> list[str]:
    """Per intention subformula: successors checked and the problem verdict."""
    lines = []
    pm = m.problems
    a = m.assignment[w]
    solved_atoms = sorted(p for p in m.atoms if a in pm.solvers(p))
    for node in _intend_nodes(phi):
        body = extension(m, node.arg)
        succ = m.successors(w)
        outside = sorted(succ - body)
        missing = [p for p in variables(node.arg) if a not in pm.solvers(p)]
        solves = _problems.solves_fast(pm, a, node.arg)
        if outside:
            reason = f"R({w}) not inside [{to_text(node.arg)}]: " + ",".join(outside)
        elif missing:
            reason = f"f({w})={a} not in s({missing[0]})"
        else:
            reason = "ok"
        lines.append(kv(
            node=to_text(node), world=w, successors=sorted(succ),
            successors_ok=not outside, problem=a, solves_atoms=solved_atoms,
            solves=solves, holds=not outside and solves, reason=reason,
        ))
    return lines


def _load(ref: str) -> KripkeModel:
    return load_model(resolve_model_path(ref))


def _core_argument(phi: Formula) -> Formula:
    # compare accepts "p" or "I p"; the argument must be core either way
    if isinstance(phi, Intend):
        phi = phi.arg
    if not is_core(phi):
        raise LayeringError("compare takes a core (modal-free) formula")
    return phi


def compare_row(m: KripkeModel, w: str, alpha: Formula) -> dict:
    con = m.successors(w)
    q = pi_of_problem(m, m.assignment[w])
    return {
        "kripke": evaluate(m, w, Intend(alpha)),
        "bg": bg_intends(m, con, q, alpha),
        "bg-first": bg_intends_first_proposal(m, con, q, alpha),
    }


def _strict_check(m: KripkeModel, phi: Formula, strict: bool) -> None:
    if strict:
        missing = undeclared_atoms(m, phi)
        if missing:
            raise UndeclaredAtom(", ".join(missing))


# -- scenarios --------------------------------------------------------------------

@dataclass
class Query:
    world: str
    formula: str
    expected: bool | None = None
    semantics: str = "kripke"


@dataclass
class Scenario:
    name: str
    model: KripkeModel
    queries: list[Query]
    description: str = ""


def load_scenario(path) -> Scenario:
    path = Path(path)
    doc = json.loads(path.read_text(encoding="utf-8"))
    ref = doc["model"]
    if isinstance(ref, str):
        model_path = (path.parent / ref) if not Path(ref).is_absolute() else Path(ref)
        m = load_model(model_path)
    else:
        m = load_model(ref)
    queries = []
    for item in doc.get("queries", []):
        q = Query(item["world"], item["formula"], item.get("expected"), item.get("semantics", "kripke"))
        if q.semantics not in SEMANTICS:
            raise UsageError(f"unknown semantics {q.semantics!r}")
        queries.append(q)
    return Scenario(doc.get("name", path.stem), m, queries, doc.get("description", ""))


def run_query(m: KripkeModel, q: Query, strict: bool = False) -> bool:
    phi = parse(q.formula)
    _strict_check(m, phi, strict)
    if q.semantics == "kripke":
        return evaluate(m, q.world, phi, strict)
    if not isinstance(phi, Intend):
        raise UsageError(f"{q.semantics} queries must have the form I <core formula>")
    return compare_row(m, q.world, phi.arg)[q.semantics]


def shipped_scenarios() -> list[Path]:
    return sorted((data_dir() / "scenarios").glob("*.json"))


# -- commands ---------------------------------------------------------------------

def cmd_check(args, strict: bool) -> int:
    m = _load(args.model)
    phi = parse(args.formula)
    _strict_check(m, phi, strict)
    value = evaluate(m, args.world, phi, strict)
    print("true" if value else "false")
    if args.trace:
        for line in trace_lines(m, args.world, phi):
            print(line)
    return 0 if value else 1


def cmd_compare(args, strict: bool) -> int:
    m = _load(args.model)
    worlds = list(m.worlds) if args.world == "*" else [args.world]
    for w in worlds:
        m._check_world(w)
    formulas = [_core_argument(parse(text)) for text in args.formulas]
    for alpha in formulas:
        _strict_check(m, alpha, strict)
    rows = [("world", "formula", "kripke", "bg", "bg-first")]
    for w in worlds:
        for alpha in formulas:
            r = compare_row(m, w, alpha)
            rows.append((w, to_text(alpha), *("true" if r[k] else "false" for k in SEMANTICS)))
    widths = [max(len(row[i]) for row in rows) for i in range(5)]
    for row in rows:
        print("  ".join(cell.ljust(width) for cell, width in zip(row, widths)).rstrip())
    return 0


def cmd_countermodel(args, strict: bool) -> int:
    atoms = tuple(a for a in args.atoms.split(",") if a) if args.atoms else ()
    if args.closure_principles:
        bounds = SearchBounds(args.max_worlds, args.max_generators, atoms or ("p", "q"),
                              args.seed, args.budget)
        results = refute_closure_principles(bounds)
        print(json.dumps([r.to_dict() for r in results], indent=2))
        return 0 if all(r.refuted for r in results) else 1
    if args.formula is None:
        raise UsageError("--formula is required unless --closure-principles is given")
    phi = parse(args.formula)
    atoms = atoms or variables(phi) or ("p",)
    bounds = SearchBounds(args.max_worlds, args.max_generators, atoms, args.seed, args.budget)
    found = find_countermodel(phi, bounds, randomized=args.randomized)
    if found is None:
        print(json.dumps({
            "found": False, "formula": to_text(phi),
            "report": "not found within bounds",
            "bounds": {"max_worlds": bounds.max_worlds, "max_generators": bounds.max_generators,
                       "atoms": list(bounds.atoms)},
        }, indent=2))
        return 1
    doc = {"found": True, "formula": to_text(phi), **found.to_dict()}
    print(json.dumps(doc, indent=2))
    if args.output:
        Path(args.output).write_text(json.dumps(doc["model"], indent=2) + "\n", encoding="utf-8")
    return 0


def _read_premises(path) -> list[Formula]:
    out = []
    for raw in Path(path).read_text(encoding="utf-8").splitlines():
        line = raw.strip()
        if line and not line.startswith("%"):
            out.append(parse(line))
    return out


def cmd_prove(args, strict: bool) -> int:
    if args.canned:
        status = 0
        for name, d in canned_lemmas():
            try:
                check_derivation(d)
                print(f"ok {name}: {to_text(d.conclusion)}")
            except CheckFailure as exc:
                print(f"failure {name}: {exc}")
                status = 1
        return status
    if args.derivation is None:
        raise UsageError("give a derivation file or --canned")
    premises = _read_premises(args.premises) if args.premises else []
    goal = parse(args.goal) if args.goal else None
    text = Path(args.derivation).read_text(encoding="utf-8")
    try:
        d = parse_derivation(text)
        check_derivation(d, premises, goal)
    except CheckFailure as exc:
        print(f"failure: {exc}")
        print(kv(line=exc.line, reason=exc.reason))
        return 1
    print(f"ok: {to_text(d.conclusion)}")
    return 0


def cmd_validate(args, strict: bool) -> int:
    path = resolve_model_path(args.model)
    try:
        doc = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        print(f"error: cannot read {args.model}: {exc}", file=sys.stderr)
        return 2
    try:
        load_model(doc, close_upward=args.close_upward)
    except ModelError as exc:
        for v in exc.violations:
            print(v)
        return 1
    print("valid")
    return 0


def cmd_scenarios(args, strict: bool) -> int:
    paths = [Path(p) for p in args.files] or shipped_scenarios()
    status = 0
    for path in paths:
        sc = load_scenario(path)
        for q in sc.queries:
            got = run_query(sc.model, q, strict)
            ok = q.expected is None or got == q.expected
            if not ok:
                status = 1
            print(kv(
                status="pass" if ok else "FAIL", scenario=sc.name, world=q.world,
                semantics=q.semantics, formula=q.formula, got=got,
                expected="-" if q.expected is None else q.expected,
            ))
    return status


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="intentlog",
        description="Model checking, proof checking and countermodel search for a logic of intention.",
    )
    parser.add_argument("--strict", action="store_true",
                        help="reject atoms missing from the model (also INTENTLOG_STRICT=1)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="evaluate a formula at a world")
    p.add_argument("model")
    p.add_argument("world")
    p.add_argument("formula")
    p.add_argument("--trace", action="store_true", help="explain each intention subformula")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("compare", help="problem-based vs partition-based intention")
    p.add_argument("model")
    p.add_argument("world", help="a world, or * for every world")
    p.add_argument("formulas", nargs="+", metavar="formula")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("countermodel", help="bounded search for a falsifying model")
    p.add_argument("--formula")
    p.add_argument("--max-worlds", type=int, default=2)
    p.add_argument("--max-generators", type=int, default=2)
    p.add_argument("--atoms", help="comma-separated atom list (default: the formula's atoms)")
    p.add_argument("--budget", type=int, default=10**6)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--randomized", action="store_true", help="sample random models instead")
    p.add_argument("--closure-principles", action="store_true",
                   help="refute one instance of each closure principle")
    p.add_argument("-o", "--output", help="also write the model file here")
    p.set_defaults(func=cmd_countermodel)

    p = sub.add_parser("prove", help="check a derivation file")
    p.add_argument("derivation", nargs="?")
    p.add_argument("--premises", help="file with one premise formula per line")
    p.add_argument("--goal", help="formula the last line must equal")
    p.add_argument("--canned", action="store_true", help="check the shipped derivations")
    p.set_defaults(func=cmd_prove)

    p = sub.add_parser("validate", help="validate a model file")
    p.add_argument("model")
    p.add_argument("--close-upward", action="store_true",
                   help="close solve sets upward before validating")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("scenarios", help="run scenario files (default: the shipped ones)")
    p.add_argument("files", nargs="*")
    p.set_defaults(func=cmd_scenarios)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    strict = args.strict or strict_from_env()
    try:
        return args.func(args, strict)
    except ModelError as exc:
        print("error: invalid model", file=sys.stderr)
        for v in exc.violations:
            print(f"  {v}", file=sys.stderr)
        return 2
    except (ParseError, LayeringError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (UnknownWorld, UndeclaredAtom, _problems.UnknownProblem) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except (UsageError, ResourceLimit, OSError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
