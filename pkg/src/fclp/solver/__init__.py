"""Deduce-then-choose solving over persistent states and a decision tree."""

from .state import (
    CompiledProgram, Conflict, Fuel, SolveState, candidates, choose, deduce, immediate_consequence_at,
    initial_state, insert_fact, step,
)
from .tree import DEFAULT_FUEL, Enumeration, SolveOutcome, Solver, SolveStats, enumerate_solutions, solve_one

__all__ = [
    "CompiledProgram", "Conflict", "DEFAULT_FUEL", "Enumeration", "Fuel", "SolveOutcome", "SolveState",
    "SolveStats", "Solver", "candidates", "choose", "deduce", "enumerate_solutions",
    "immediate_consequence_at", "initial_state", "insert_fact", "solve_one", "step",
]
