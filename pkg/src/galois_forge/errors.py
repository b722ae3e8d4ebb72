"""Exception hierarchy shared by all modules."""


class GaloisForgeError(Exception):
    """Base class for every error raised by this package."""


class NotMonic(GaloisForgeError, ValueError):
    pass


class NotSquarefree(GaloisForgeError, ValueError):
    pass


class DegreeTooSmall(GaloisForgeError, ValueError):
    pass


class DegreeTooLarge(GaloisForgeError, ValueError):
    pass


class DegreeInvalid(GaloisForgeError, ValueError):
    pass


class DegreeMismatch(GaloisForgeError, ValueError):
    pass


class RetryLimitExceeded(GaloisForgeError, RuntimeError):
    pass


class KMaxExceeded(GaloisForgeError, RuntimeError):
    pass


class NoConvergence(GaloisForgeError, ArithmeticError):
    pass


class RealRootDetected(GaloisForgeError, ValueError):
    pass


class IllConditioned(GaloisForgeError, ArithmeticError):
    pass


class QuasiReflectionPresent(GaloisForgeError, ValueError):
    def __init__(self, message, elements=()):
        super().__init__(message)
        self.elements = list(elements)
