"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class UnsupportedDimensionError(DomainError):
    """A dedicated closed form was requested for a dimension that has none."""


class SingularityError(DomainError):
    """Evaluation was requested exactly at a non-removable singularity."""


class ConvergenceError(RuntimeError):
    """An iterative scheme failed to reach its tolerance within max_iter."""


class UndersizedSampleError(ValueError):
    """The sample is too small for the requested statistical procedure."""


class DegenerateSampleError(ValueError):
    """The sample has zero variance and cannot support estimation."""
