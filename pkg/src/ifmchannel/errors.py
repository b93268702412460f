"""Exception types raised across the package."""


class NotHermitianError(ValueError):
    """Matrix handed to a Hermitian routine is not Hermitian within tolerance."""


class NoConvergenceError(RuntimeError):
    """Jacobi sweeps hit the hard cap before the off-diagonal part vanished."""


class DimensionMismatchError(ValueError):
    pass


class DegenerateTransparencyError(ValueError):
    """Closed-form coefficients requested at a = 1, where k1 and k2 diverge."""


class NoZeroErrorStateError(ValueError):
    """No pure input reaches P_error = 0 because k1 > 1."""


class InvalidSpecError(ValueError):
    """Bad command-line or sweep specification; the message names the field."""
