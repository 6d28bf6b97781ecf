"""Exception hierarchy shared across the package.

The CLI maps these onto its exit-code contract: validation problems exit
with 2, numerical / convergence failures with 3, anything else with 4.
"""

from __future__ import annotations


class GraphemError(Exception):
    """Base class for all package errors."""


class ValidationError(GraphemError, ValueError):
    """Bad inputs: malformed files, shape mismatches, out-of-range arguments."""


class NumericalError(GraphemError, ArithmeticError):
    """A numerical operation failed (e.g. Cholesky beyond the jitter budget)."""


class ConvergenceError(GraphemError, RuntimeError):
    """An iterative solver hit its iteration budget without converging.

    Carries the last iterate and the objective trace so callers can inspect
    how far the solve got.
    """

    def __init__(self, message, last_iterate=None, trace=None):
        super().__init__(message)
        self.last_iterate = last_iterate
        self.trace = list(trace) if trace is not None else []
