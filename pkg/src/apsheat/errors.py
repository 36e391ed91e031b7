"""Exception hierarchy shared by every compute module.

The CLI maps :class:`DomainError` to exit code 2 and
:class:`NumericalFailure` to exit code 3.
"""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class NumericalFailure(ArithmeticError):
    """A numerical procedure could not certify its result."""


class BracketError(NumericalFailure):
    """A root bracket could not be established."""

    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class InsufficientModesError(NumericalFailure):
    """The spectral data is too short to bound the truncation error."""

    def __init__(self, message, required):
        super().__init__(message)
        self.required = required


class DivergenceError(DomainError):
    """A spectral sum was requested outside its region of convergence."""


class BesselOverflowError(OverflowError, NumericalFailure):
    """A Bessel value exceeds the range of double precision."""


class RankDeficiencyError(NumericalFailure):
    """A least-squares window holds fewer samples than basis functions."""


class MissingValueError(KeyError):
    """A required special value or residue was not computed."""


class PreconditionError(DomainError):
    """The inputs violate the stated precondition of a check."""
