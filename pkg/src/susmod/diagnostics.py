"""Positioned, coded diagnostics shared by the parser, validator and catalogue lint."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum


class Severity(str, Enum):
    ERROR = "error"
    WARNING = "warning"


@dataclass(frozen=True, order=True)
class SourceSpan:
    """Location in source text. Lines and columns are 1-based."""

    file: str
    line: int
    column: int
    length: int = 1

    def __post_init__(self) -> None:
        if self.line < 1 or self.column < 1 or self.length < 1:
            raise ValueError(f"invalid span {self.line}:{self.column}+{self.length}")

    def __str__(self) -> str:
        return f"{self.file}:{self.line}:{self.column}"


@dataclass(frozen=True)
class Diagnostic:
    severity: Severity
    code: str
    message: str
    span: SourceSpan | None = None

    @property
    def is_error(self) -> bool:
        return self.severity is Severity.ERROR

    def sort_key(self) -> tuple:
        if self.span is None:
            return (self.code, 0, "", 0, 0, self.message)
        return (self.code, 1, self.span.file, self.span.line, self.span.column, self.message)

    def format(self, file: str | None = None) -> str:
        """Render as ``file:line:col: [code] message``."""
        if self.span is not None:
            where = f"{self.span.file}:{self.span.line}:{self.span.column}"
        else:
            where = file or "<input>"
        return f"{where}: [{self.code}] {self.message}"


def error(code: str, message: str, span: SourceSpan | None = None) -> Diagnostic:
    return Diagnostic(Severity.ERROR, code, message, span)


def warning(code: str, message: str, span: SourceSpan | None = None) -> Diagnostic:
    return Diagnostic(Severity.WARNING, code, message, span)


def sort_diagnostics(diags) -> list[Diagnostic]:
    return sorted(diags, key=Diagnostic.sort_key)


def has_errors(diags) -> bool:
    return any(d.is_error for d in diags)
