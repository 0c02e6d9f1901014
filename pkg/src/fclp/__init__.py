"""Finite-choice logic programming: a parser, a solver and reference semantics."""

from .core import Attribute, Fact, Fn, FuelExhausted, Program, Var, fn
from .solver import Solver, enumerate_solutions, solve_one
from .syntax import load_program, parse

__version__ = "0.1.0"

__all__ = [
    "Attribute", "Fact", "Fn", "FuelExhausted", "Program", "Solver", "Var", "enumerate_solutions", "fn",
    "load_program", "parse", "solve_one",
]
