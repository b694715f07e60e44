"""Exception and warning types raised by chebdecay."""

from __future__ import annotations


class ChebDecayError(Exception):
    """Base class for all library errors."""


class DomainError(ChebDecayError, ValueError):
    """An argument lies outside the domain of the operation."""


class PreconditionError(ChebDecayError, ValueError):
    """A parameter violates a documented precondition (index range, degree, ...)."""


class FunctionSpecError(ChebDecayError, ValueError):
    """A piecewise function description is malformed or inconsistent."""


class ParseError(FunctionSpecError):
    """Syntax error in a function description.

    Parameters
    ----------
    message : str
        Human-readable description.
    position : int
        Zero-based character offset into the parsed text.
    text : str, optional
        The full text, used to render a caret under the offending column.
    """

    def __init__(self, message: str, position: int, text: str | None = None):
        self.message = message
        self.position = position
        self.text = text
        super().__init__(self._render())

    def _render(self) -> str:
        head = f"{self.message} (at column {self.position + 1})"
        if self.text is None:
            return head
        return f"{head}\n  {self.text}\n  {' ' * self.position}^"


class EvaluationError(ChebDecayError, ArithmeticError):
    """A piece expression could not be evaluated (division by zero, log of a nonpositive value, ...)."""


class DifferentiationError(ChebDecayError, ValueError):
    """Symbolic differentiation is not possible for the given expression."""


class UnsupportedOrderError(DifferentiationError):
    """A derivative order above ``k + 1`` was requested."""


class ConvergenceError(ChebDecayError, RuntimeError):
    """An iterative refinement failed to stabilise.

    Attributes
    ----------
    delta : float
        The last observed change between successive refinements.
    """

    def __init__(self, message: str, delta: float):
        self.delta = delta
        super().__init__(f"{message} (last delta {delta:.3e})")


class DivergenceError(ChebDecayError, ArithmeticError):
    """An integral defining a variation or error functional is not finite."""


class ContinuityWarning(UserWarning):
    """A declared absolutely-continuous derivative appears to jump at a breakpoint."""
