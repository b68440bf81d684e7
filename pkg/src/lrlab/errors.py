"""Exception hierarchy shared by every lrlab module."""

from __future__ import annotations


class LRLabError(Exception):
    """Base class for all lrlab errors."""


class DivisionByZero(LRLabError, ZeroDivisionError):
    pass


class FieldMismatch(LRLabError, ValueError):
    pass


class ParseError(LRLabError, ValueError):
    pass


class ShapeMismatch(LRLabError, ValueError):
    pass


class Singular(LRLabError, ValueError):
    pass


class NotInvariant(LRLabError, ValueError):
    pass


class NotABasis(LRLabError, ValueError):
    pass


class NotDirectSum(LRLabError, ValueError):
    pass


class NotOpposite(LRLabError, ValueError):
    pass


class InternalContradiction(LRLabError, AssertionError):
    """A statement that must hold by theory failed; indicates a bug upstream."""


class NotLowering(LRLabError, ValueError):
    pass


class AnchorMismatch(LRLabError, ValueError):
    pass


class NotToeplitz(LRLabError, ValueError):
    def __init__(self, entry: tuple[int, int], message: str | None = None):
        self.entry = entry
        super().__init__(message or f"not upper-triangular Toeplitz at entry {entry}")


class FormulaViolated(LRLabError, AssertionError):
    def __init__(self, index: int, message: str | None = None):
        self.index = index
        super().__init__(message or f"basis action formula fails at index {index}")


class NotLRPair(LRLabError, ValueError):
    REASONS = ("KernelDimension", "ImageCollapse", "NotDirectSum", "LoweringFails", "RaisingFails")

    def __init__(self, reason: str, message: str | None = None):
        if reason not in self.REASONS:
            raise ValueError(f"unknown NotLRPair reason {reason!r}")
        self.reason = reason
        super().__init__(message or reason)


class NotLRTriple(LRLabError, ValueError):
    def __init__(self, pair: str, reason: str, message: str | None = None):
        self.pair = pair
        self.reason = reason
        super().__init__(message or f"{pair}: {reason}")


class PreconditionFailed(LRLabError, ValueError):
    def __init__(self, reason: str, message: str | None = None):
        self.reason = reason
        super().__init__(message or reason)


class NotBipartite(LRLabError, ValueError):
    pass


class ZeroScalar(LRLabError, ValueError):
    pass


class NoScalarRelation(LRLabError, ValueError):
    pass


class AttemptsExhausted(LRLabError, RuntimeError):
    def __init__(self, attempts: int, message: str | None = None):
        self.attempts = attempts
        super().__init__(message or f"no acceptable sample after {attempts} attempts")


class OddD(LRLabError, ValueError):
    pass
