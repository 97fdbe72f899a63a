"""Exception hierarchy.

Argument/domain problems derive from :class:`ValueError`; numerical failures
derive from :class:`NumericalError`. The CLI maps the former to exit code 2 and
the latter to exit code 1.
"""


class XlagError(Exception):
    pass


class DomainError(XlagError, ValueError):
    """An argument lies outside the domain of the operation (e.g. x <= 0, k <= 0)."""


class ConfigError(XlagError, ValueError):
    pass


class NumericalError(XlagError, ArithmeticError):
    pass


class RankError(NumericalError):
    """Coefficient system for an eigenpolynomial does not have a unique solution."""


class ConsistencyError(NumericalError):
    """Least-squares residual of an overdetermined coefficient system is too large."""


class EngineError(NumericalError):
    """Iteration cap hit inside an eigen- or quadrature engine."""


class NonConvergence(NumericalError):
    def __init__(self, message, value=None, error=None):
        super().__init__(message)
        self.value = value
        self.error = error


class DivergenceSuspected(NonConvergence):
    pass


class NoSignChange(NumericalError):
    """The scanned spectral range contains no sign change of the miss function."""


class StiffnessFailure(NumericalError):
    pass
