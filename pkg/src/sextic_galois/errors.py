"""Exception types shared across the package."""


class SexticGaloisError(Exception):
    """Base class for all package errors."""


class OutOfScope(SexticGaloisError):
    """Input lies outside the family the obstruction pipeline covers (e.g. C = 0)."""

    def __init__(self, reason):
        super().__init__(reason)
        self.reason = reason


class InvalidParameters(SexticGaloisError, ValueError):
    """Parameters violate a stated side condition."""


class LogRequired(SexticGaloisError):
    """A Frobenius recurrence hit a resonance with nonzero obstruction."""

    def __init__(self, step, obstruction):
        super().__init__(f"logarithmic solution required at step {step} (obstruction {obstruction})")
        self.step = step
        self.obstruction = obstruction


class TruncationCapExceeded(SexticGaloisError):
    """The series order needed for an exact answer exceeds the configured cap."""


class RingWideningError(SexticGaloisError, ArithmeticError):
    """A product would create a d**2 term in the linear-in-d coefficient ring."""


class IntegrationError(SexticGaloisError, RuntimeError):
    """Numerical integration failed (step budget exhausted or step-size underflow)."""

    def __init__(self, message, t=None):
        super().__init__(message if t is None else f"{message} at t={t}")
        self.t = t
