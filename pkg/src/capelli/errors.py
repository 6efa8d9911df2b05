"""Exception hierarchy.

Every error raised on purpose by the library derives from :class:`CapelliError`
so the CLI can map it to exit code 2.
"""


class CapelliError(Exception):
    """Base class for all library errors."""


class PreconditionError(CapelliError):
    """A documented precondition on the input does not hold."""

    predicate = "precondition"


class SingularSystem(CapelliError, ArithmeticError):
    """The exact linear system has no unique solution."""


class UnsupportedCase(PreconditionError):
    predicate = "supported case"


class NotDominant(PreconditionError):
    predicate = "dominant"


class NotNonIntegral(PreconditionError):
    predicate = "non_integral"


class NotStronglyDominant(PreconditionError):
    predicate = "strongly_dominant"


class NonUniqueInterpolation(CapelliError):
    """The interpolation conditions for p_lambda do not determine it."""


class ZeroAtMinusRho(CapelliError):
    """p_lambda(-rho) vanishes, so q_lambda is undefined."""


class ReconstructionFailed(CapelliError):
    """Sampled values could not be matched by an invariant polynomial."""


class WindowExceeded(CapelliError):
    """An operator matrix was applied outside its validity window."""


class ZeroPolynomial(CapelliError):
    """The operation needs a nonzero polynomial."""


class NoFixedGenerator(PreconditionError):
    predicate = "W-fixed generator exists"


class CrossCheckFailed(CapelliError):
    """Two independent routes to the same quantity disagree."""
