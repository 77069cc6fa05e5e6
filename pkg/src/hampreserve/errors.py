"""Exception hierarchy shared by every module.

The CLI maps these onto exit codes, so the grouping matters:
input problems are ``DomainError``/``ParseError`` (exit 2), failures
that are an honest "no" are ``InfeasibleError``/``BoundViolationError``/
``NotApplicableError`` (exit 1), and anything that should be impossible
is an ``InternalConsistencyError`` (exit 3).
"""

from __future__ import annotations


class HamPreserveError(Exception):
    """Base class for all library errors."""


class DomainError(HamPreserveError, ValueError):
    """An argument is outside the operation's domain."""


class ParseError(DomainError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class NoCutError(DomainError):
    """Raised when a vertex cut is requested for a complete graph."""


class ConditionError(DomainError):
    """A graph fails one of the edge-pair decomposition conditions.

    ``condition`` is 1, 2 or 3 (parity, degree bound, triangle guard).
    """

    def __init__(self, condition: int, message: str):
        self.condition = condition
        super().__init__(message)


class ExceptionalGraphError(DomainError):
    def __init__(self, family: str):
        self.family = family
        super().__init__(f"exceptional: {family}")


class SizeError(DomainError):
    """Input too large for a brute-force oracle."""


class StaleCertificateError(DomainError):
    pass


class NotApplicableError(HamPreserveError):
    """A constructive routine's sufficient condition does not hold."""

    def __init__(self, message: str, violation: object = None):
        self.violation = violation
        super().__init__(message)


class InfeasibleError(HamPreserveError):
    """Fewer disjoint paths exist than requested.

    ``cut`` is a vertex set of size < k separating the two terminal sets
    when the flow formulation can produce one.
    """

    def __init__(self, message: str, cut: list[int] | None = None):
        self.cut = cut
        super().__init__(message)


class BoundViolationError(HamPreserveError):
    """A numeric hypothesis (order bound, degree bound) does not hold."""


class ExtractionFailure(HamPreserveError):
    """Greedy Hamiltonian cycle extraction exhausted its search budget."""


class InternalConsistencyError(HamPreserveError):
    """A step that is proven feasible failed; indicates a bug."""
