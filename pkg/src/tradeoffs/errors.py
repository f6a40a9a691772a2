"""Exception types shared across the package."""


class TradeoffError(Exception):
    """Base class for all package errors."""


class CapExceeded(TradeoffError):
    """An exact routine was asked to run above its configured size cap."""

    def __init__(self, what, size, cap):
        super().__init__(f"{what}: size {size} exceeds cap {cap}")
        self.what = what
        self.size = size
        self.cap = cap


class Infeasible(TradeoffError):
    """The instance admits no feasible solution (e.g. sets do not cover the universe)."""


class NoFeasible(Infeasible):
    """A maximisation scheme found no feasible subset (only possible on empty graphs)."""


class NotSatisfying(TradeoffError):
    """A witness assignment violates the formula or CSP it was given for."""


class UnsupportedClause(TradeoffError):
    """A clause shape the gadget construction does not handle."""


class BadSpec(TradeoffError):
    """An instance specification with an unknown kind or invalid sizes."""


class ParseError(TradeoffError):
    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line
