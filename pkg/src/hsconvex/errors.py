"""Exception types shared across the package.

Two failure categories exist: inputs outside an operation's domain
(DomainError) and numerical procedures that ran out of budget
(NumericError). NumericError carries the best value obtained so far so
callers can decide whether a degraded result is still usable.
"""

from __future__ import annotations


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class NumericError(ArithmeticError):
    """A numerical routine failed to reach its target accuracy.

    Attributes:
        value: best estimate available when the failure occurred.
        err_est: error estimate attached to that value, if known.
    """

    def __init__(self, message: str, value: float = float("nan"),
                 err_est: float = float("inf")):
        super().__init__(message)
        self.value = value
        self.err_est = err_est
