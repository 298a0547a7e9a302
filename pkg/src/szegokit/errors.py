"""Exception hierarchy shared by all szegokit modules."""


class SzegoKitError(Exception):
    """Base class for all errors raised by szegokit."""


class InputError(SzegoKitError, ValueError):
    """Malformed or out-of-contract input (bad shapes, windows, JSON)."""


class AliasingWindowError(InputError):
    """A frequency window would read coefficients beyond the grid Nyquist range."""


class NumericalError(SzegoKitError, ArithmeticError):
    """A numerical factorization failed (loss of positive definiteness, singular block)."""


class NotPositiveDefiniteError(NumericalError):
    """A moment matrix that should be Hermitian positive definite is not, numerically."""


class UnsupportedCaseError(SzegoKitError):
    """The requested quantity is mathematically undetermined in this configuration."""
