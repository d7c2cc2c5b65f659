"""Domain errors raised by mixedsimplex.

Every error carries a stable ``name`` (its class name); the command line
prints it on stderr and exits with status 1.
"""

from __future__ import annotations


class MixedSimplexError(Exception):
    """Base class for every domain error of the package."""

    exit_code = 1

    @property
    def name(self) -> str:
        return type(self).__name__


class InvalidArgument(MixedSimplexError, ValueError):
    """A precondition on an argument does not hold."""


class InvalidSimplexPoint(InvalidArgument):
    """Coordinates are negative, non-finite or far from summing to one."""


class DegeneratePoint(MixedSimplexError):
    """Every coordinate of a point is below the face tolerance."""


class KTooLarge(InvalidArgument):
    """The alphabet size exceeds a configured enumeration cap."""


class BadSpec(InvalidArgument):
    """A sampler description has invalid parameters."""


class BoundaryEvaluation(MixedSimplexError):
    """A Lebesgue density was asked for at a point on the simplex boundary."""


class NoDensityForm(MixedSimplexError):
    """The conditional has no closed-form density (empirical samples)."""


class InsufficientSamples(MixedSimplexError):
    """Too few samples for a nearest-neighbour entropy estimate."""


class Overflow(MixedSimplexError, ArithmeticError):
    """A closed form left the floating point range."""


class BadJoint(InvalidArgument):
    """Weights of a joint distribution are negative or do not sum to one."""


class AlphabetMismatch(InvalidArgument):
    """Automata or strings disagree on the alphabet size K."""


class NotDeterminizable(MixedSimplexError):
    """Only Boolean automata are determinized."""


class NotTrim(MixedSimplexError):
    """Some state cannot reach a final state (or the total weight diverges)."""


class TooManyProjections(MixedSimplexError):
    """Explicit enumeration of projections would exceed the bound."""


class UnknownFigure(InvalidArgument):
    """The requested figure name is not known."""


class NumericalFailure(MixedSimplexError):
    """A linear algebra routine failed (singular or non-convergent)."""
