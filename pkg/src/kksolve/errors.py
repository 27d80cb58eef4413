from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class SourceSpan:
    line: int
    column: int
    length: int = 1

    def __str__(self) -> str:
        return f"line {self.line}:{self.column}"


class PuzzleError(Exception):
    """Base class for puzzle syntax and validation failures."""

    def __init__(self, message: str, span: SourceSpan | None = None):
        if not message:
            raise ValueError("error message must be nonempty")
        super().__init__(message)
        self.message = message
        self.span = span

    def __str__(self) -> str:
        if self.span is None:
            return self.message
        return f"{self.span}: {self.message}"


class ParseError(PuzzleError):
    def __init__(self, message: str, span: SourceSpan | None = None, expected: list[str] | None = None):
        super().__init__(message, span)
        self.expected = list(expected or [])


class ValidationError(PuzzleError):
    """A syntactically valid puzzle that breaks a semantic rule.

    ``where`` names the offending part (``"utterance 2"``) when no source
    span is available, e.g. for puzzles built in code.
    """

    def __init__(self, message: str, span: SourceSpan | None = None, where: str | None = None):
        super().__init__(message, span)
        self.where = where

    def __str__(self) -> str:
        if self.span is None and self.where:
            return f"{self.where}: {self.message}"
        return super().__str__()


class UnknownPerson(ValidationError):
    def __init__(self, name: str, span: SourceSpan | None = None, where: str | None = None):
        super().__init__(f"unknown person {name!r}", span, where)
        self.name = name
