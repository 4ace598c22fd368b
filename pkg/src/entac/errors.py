"""Exception hierarchy for entac."""

from __future__ import annotations


class EntacError(Exception):
    """Base class for every error raised by this package."""


class DomainError(EntacError, ValueError):
    """An argument lies outside the domain of the operation."""


class NumericError(EntacError, ArithmeticError):
    """Quadrature, inversion or evaluation produced no usable number."""


class UnknownNodeError(EntacError, LookupError):
    def __init__(self, node: str):
        super().__init__(f"unknown node {node!r}")
        self.node = node


class ContractError(EntacError, ValueError):
    """A structural precondition was violated (e.g. paths share an edge)."""


class ScenarioError(EntacError):
    """A scenario document failed to load.

    ``violations`` carries every problem found, not just the first.
    """

    def __init__(self, violations: list[str], source: str | None = None):
        self.violations = list(violations)
        self.source = source
        head = f"{source}: " if source else ""
        super().__init__(head + "; ".join(self.violations))


class ScenarioParseError(ScenarioError):
    def __init__(self, message: str, line: int, column: int, source: str | None = None):
        self.line = line
        self.column = column
        super().__init__([f"line {line}, column {column}: {message}"], source)
