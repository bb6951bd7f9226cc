"""Exception hierarchy shared by all modules."""


class EganError(Exception):
    """Base class for every error raised by this package."""


class SingularMatrix(EganError):
    pass


class InvalidMetric(EganError):
    pass


class NotUnit(EganError):
    pass


class Degenerate(EganError):
    """The simplex (or a matrix derived from it) is too close to degenerate."""


class DimensionMismatch(EganError):
    pass


class NotAdmissible(EganError):
    """A 2x2 matrix has no Lorentz singular value decomposition."""


class NotPolar(EganError):
    pass


class CertificateViolation(EganError):
    """A structural check of the certificate pipeline failed.

    On valid input this never happens; seeing it means a bug.
    """


class NonPositiveHeight(EganError):
    pass


class GenerationExhausted(EganError):
    pass


class ConfigError(EganError, ValueError):
    pass
