"""Exception types shared across the package."""


class SoergelError(Exception):
    """Base class for all errors raised by this package."""


class ConfigError(SoergelError, ValueError):
    """Invalid Coxeter matrix, Cartan data or configuration file."""


class PreconditionViolation(SoergelError, ValueError):
    pass


class WordMismatch(SoergelError, ValueError):
    """Source/target words of composed objects do not agree."""


class InternalError(SoergelError, RuntimeError):
    """An identity that must hold by theory failed; indicates a bug or a broken realization."""


class VerificationFailure(SoergelError, AssertionError):
    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index
