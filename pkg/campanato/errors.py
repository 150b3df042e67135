"""Errors and warnings raised by campanato."""


class CampanatoError(Exception):
    """Base class of all campanato errors."""


class DomainError(CampanatoError, ValueError):
    """A point lies outside the domain where the object is finite."""


class ResolutionError(CampanatoError, ValueError):
    """A quadrature grid is too coarse for the requested region."""


class DegenerateError(CampanatoError, ValueError):
    """A ratio has a vanishing denominator."""


class ConvergenceError(CampanatoError, RuntimeError):
    """An iterative refinement did not reach its tolerance."""


class InfiniteValueError(CampanatoError, ArithmeticError):
    """The requested quantity is infinite at this point."""


class PreconditionError(CampanatoError, ValueError):
    """An operation was called outside its hypotheses."""


class SingularWeightError(CampanatoError, ValueError):
    """A radial weight is not integrable against the given integrand."""


class CertificationError(CampanatoError, RuntimeError):
    """A certified lower bound could not be established on the grid."""


class NoTransitionError(CampanatoError, RuntimeError):
    """Every tested level was bounded, so no transition exists."""


class ConfigError(CampanatoError, ValueError):
    """A job configuration is malformed.

    Parameters
    ----------
    field : str
        Dotted name of the offending field.
    message : str
        Description of the problem.
    """

    def __init__(self, field, message):
        self.field = field
        super().__init__("{}: {}".format(field, message))


class ConditioningWarning(UserWarning):
    """Two roots are so close that their multiplicity is uncertain."""


class RegimeWarning(UserWarning):
    """A quantity is computed outside the parameter regime of its theorem."""
