"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class SymParikhError(Exception):
    """Base class for all errors raised by symparikh."""


class EmptyPredicate(SymParikhError):
    pass


class ComplementBlowup(SymParikhError):
    def __init__(self, cap: int):
        super().__init__(f"determinization exceeded the state cap of {cap}")
        self.cap = cap


class EpsilonPresent(SymParikhError):
    pass


class SortMismatch(SymParikhError):
    pass


class UnboundVariable(SymParikhError):
    def __init__(self, name: str):
        super().__init__(f"no value for variable {name!r}")
        self.name = name


class InstantiationBlowup(SymParikhError):
    pass


class PushTooLong(SymParikhError):
    pass


class FuelExhausted(SymParikhError):
    pass


class ParseError(SymParikhError):
    def __init__(self, message: str, line: int = 0, col: int = 0):
        super().__init__(f"{line}:{col}: {message}")
        self.line = line
        self.col = col


class UnsupportedFeature(SymParikhError):
    def __init__(self, name: str):
        super().__init__(f"unsupported feature: {name}")
        self.name = name


class SolverError(SymParikhError):
    pass


class SolverTimeout(SymParikhError):
    pass
