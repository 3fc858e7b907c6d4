"""Exception types shared across the package."""


class CohlabError(Exception):
    """Base class for all cohlab errors."""


class InvalidDimensionError(CohlabError, ValueError):
    """Dimension argument is zero, negative, or structurally unusable."""


class UnsupportedDimensionError(CohlabError, ValueError):
    """Operation is only defined on a restricted dimension range."""


class InvalidEpsilonError(CohlabError, ValueError):
    """Epsilon-type argument lies outside its valid interval."""


class InvalidArgumentError(CohlabError, ValueError):
    """Argument combination violates an operation precondition."""


class VacuousGuaranteeError(CohlabError, RuntimeError):
    """The requested guarantee is vacuous at the given parameters."""
