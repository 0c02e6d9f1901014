from __future__ import annotations

from dataclasses import dataclass

from ..core import Loc


@dataclass(frozen=True)
class Diagnostic:
    severity: str  # "error" or "warning"
    message: str
    loc: Loc | None = None
    code: str = "Syntax"

    def __str__(self) -> str:
        where = f"{self.loc}: " if self.loc else ""
        return f"{where}{self.severity}: [{self.code}] {self.message}"


class DiagnosticError(Exception):
    """Raised by the front end when a program is rejected."""

    def __init__(self, diagnostics):
        self.diagnostics = list(diagnostics)
        super().__init__("\n".join(map(str, self.diagnostics)))


class ParseError(DiagnosticError):
    pass


class DesugarError(DiagnosticError):
    pass


class CheckError(DiagnosticError):
    pass


def error(message: str, loc: Loc | None = None, code: str = "Syntax") -> Diagnostic:
    return Diagnostic("error", message, loc, code)
