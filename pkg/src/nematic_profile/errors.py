"""Exception hierarchy shared by all modules."""


class NematicError(Exception):
    """Base class for every error raised by this package."""


class NoSignChange(NematicError, ValueError):
    """A bracket does not enclose a sign change."""


# Bracket failures inside higher-level solvers.
RootNotBracketed = NoSignChange


class MaxIterations(NematicError, RuntimeError):
    """An iterative method hit its iteration cap."""


class NonFiniteSample(NematicError, ValueError):
    """An integrand returned NaN or inf."""


class NonPositive(NematicError, ValueError):
    """A radius that must be strictly positive is not."""


class NotAdmissible(NematicError, ValueError):
    """The ring geometry violates h/r <= omega."""


class DomainError(NematicError, ValueError):
    """An argument lies outside the domain of a transcendental expression."""


class NegativeRadicand(NematicError, ValueError):
    """The closed-form profile has a negative radicand for this (E, c) pair."""


class NeedsSecondDerivative(NematicError, ValueError):
    """The grid is too coarse to form second differences."""


class BlowUp(NematicError, RuntimeError):
    """An ODE trajectory left the positive half-line or became non-finite."""


class Stalled(NematicError, RuntimeError):
    """A line search could not decrease the energy."""
