"""Exceptions raised across the package."""

import typing


class ForgeError(Exception):
    """Base class of all agreement-forge errors."""


class SketchSyntaxError(ForgeError):
    def __init__(self, message: str, line: int = 0, column: int = 0, source: str | None = None) -> None:
        self.line = line
        self.column = column
        self.source = source
        where = f"{source}:" if source else ""
        super().__init__(f"{where}{line}:{column}: {message}")


class SketchError(ForgeError):
    """Cross-reference / typing diagnostics of a parsed sketch."""

    def __init__(self, diagnostics: typing.Sequence, source: str | None = None) -> None:
        self.diagnostics = list(diagnostics)
        where = f"{source}: " if source else ""
        super().__init__(where + "; ".join(str(d) for d in self.diagnostics))


class InterpretationError(ForgeError):
    pass


class DomainError(ForgeError):
    def __init__(self, variable: str, value, state, handler: str) -> None:
        self.variable = variable
        self.value = value
        super().__init__(f"Update of '{variable}' to {value} leaves its domain at state {state} in handler {handler}")


class ResourceLimit(ForgeError):
    def __init__(self, bound: str, limit: int, detail: str = "") -> None:
        self.bound = bound
        self.limit = limit
        super().__init__(f"Resource bound '{bound}' ({limit}) exceeded{': ' + detail if detail else ''}")


class ExtractionError(ForgeError):
    pass


class SearchTimeout(ForgeError):
    """Wall-clock budget of a synthesis run spent."""
