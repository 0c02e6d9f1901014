"""Front end: text to checked core programs."""

from __future__ import annotations

from ..core import Program
from .ast import SBuiltin, SCmp, SDemand, SForbid, SHead, SourceProgram, SRel, SRule
from .check import check_program
from .desugar import OK_PRED, UNIT, demand_pred, desugar
from .diagnostics import CheckError, DesugarError, Diagnostic, DiagnosticError, ParseError
from .parser import parse
from .printer import format_source


def load_program(text: str) -> Program:
    """Parse, desugar and check; raises :class:`DiagnosticError` on any problem."""
    program = desugar(parse(text))
    diags = check_program(program)
    if diags:
        raise CheckError(diags)
    return program


__all__ = [
    "CheckError", "DesugarError", "Diagnostic", "DiagnosticError", "OK_PRED", "ParseError",
    "SBuiltin", "SCmp", "SDemand", "SForbid", "SHead", "SRel", "SRule", "SourceProgram", "UNIT",
    "check_program", "demand_pred", "desugar", "format_source", "load_program", "parse",
]
