"""Exception types and the validation report shared by all checkers."""

from __future__ import annotations

from dataclasses import dataclass, field


class HdaError(Exception):
    """Base class for every error raised by hdakit."""


class InvalidArgument(HdaError, ValueError):
    pass


class CyclicInputError(HdaError):
    """An unbounded query was asked of a precubical set with directed cycles."""


class UnsupportedInput(HdaError):
    pass


class PreconditionViolated(HdaError):
    pass


class NotATraceFunctor(HdaError):
    pass


class ParseError(HdaError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.message = message
        self.line = line
        self.column = column
        loc = ""
        if line is not None:
            loc = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(loc + message)


@dataclass(frozen=True)
class Violation:
    kind: str
    where: tuple
    message: str

    def __str__(self) -> str:
        return f"[{self.kind}] {self.message}"


@dataclass
class Report:
    """Outcome of a check: ok iff there are no violations.

    Notes are informational and never affect the verdict.
    """

    violations: list[Violation] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok

    def add(self, kind: str, where: tuple, message: str) -> None:
        self.violations.append(Violation(kind, tuple(where), message))

    def extend(self, other: "Report") -> "Report":
        self.violations.extend(other.violations)
        self.notes.extend(other.notes)
        return self

    def kinds(self) -> set[str]:
        return {v.kind for v in self.violations}

    def lines(self) -> list[str]:
        return [str(v) for v in self.violations] + [f"note: {n}" for n in self.notes]

    def raise_if_failed(self, exc: type[HdaError] = InvalidArgument) -> None:
        if not self.ok:
            err = exc("; ".join(str(v) for v in self.violations))
            err.report = self
            raise err


class ValidationError(InvalidArgument):
    def __init__(self, report: Report, what: str = "validation failed"):
        self.report = report
        super().__init__(what + ": " + "; ".join(str(v) for v in report.violations))
