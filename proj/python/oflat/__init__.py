"""Finite automaton workbench: acceptance, stepping sessions and state natures."""

from ._oflat import (
    FiniteAutomaton,
    OflatError,
    Session,
    examples,
    new_automaton,
    parse_automaton,
)

__all__ = [
    "FiniteAutomaton",
    "OflatError",
    "Session",
    "examples",
    "new_automaton",
    "parse_automaton",
]
