"""A workbench for a hyperintensional logic of intention."""

from .formula import (
    TOP, BOT, Atom, And, Formula, Intend, Nec, Not, Or, Top,
    LayeringError, ParseError, iff, implies, overline, parse, to_text, variables,
)

__version__ = "0.1.0"
