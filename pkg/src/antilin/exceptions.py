"""Exception types shared by all modules.

Every error carries a short machine-readable ``code`` (used verbatim by the
CLI error objects) and, where meaningful, the ``residual`` that tripped the
check.
"""


class AntilinError(ValueError):
    code = "invalid_input"

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class DimensionError(AntilinError):
    code = "dimension_mismatch"


class NotSymmetricError(AntilinError):
    code = "not_symmetric"


class NotConjugationError(AntilinError):
    code = "not_conjugation"


class NotOrthonormalError(AntilinError):
    code = "not_orthonormal"


class NotPSDError(AntilinError):
    code = "not_psd"


class NotAntilinearError(AntilinError):
    code = "not_antilinear"


class NotFixedError(AntilinError):
    code = "not_fixed"


class HypothesisViolation(AntilinError):
    code = "hypothesis_violated"


class PartitionCapError(AntilinError):
    code = "partition_cap_exceeded"


class ConvergenceError(AntilinError):
    code = "no_convergence"
