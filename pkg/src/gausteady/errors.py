"""Exception hierarchy shared across the package."""


class GausteadyError(Exception):
    """Base class for all package-specific errors."""


class DimensionMismatch(GausteadyError):
    """Operands have incompatible shapes."""


class NoUniqueSolution(GausteadyError):
    """The continuous Lyapunov equation has no unique solution
    (the coefficient matrix shares an eigenvalue with its negative)."""


class NonPositiveDeterminant(GausteadyError):
    """A determinant that must be positive is not."""


class SingularGram(GausteadyError):
    """The Gram matrix in the closed-form steady covariance is numerically
    singular, signalling a non-unique steady state."""


class ConditionViolated(GausteadyError):
    """A precondition stated by the analyzer does not hold for the input."""


class NonPositiveY(GausteadyError):
    """The squeezing block of a pure-state specification is not positive
    definite."""


class InvalidPartition(GausteadyError):
    """Mode partition is empty, out of range, or not a proper subset."""


class UnstableStep(GausteadyError):
    """Covariance diverged during time integration (non-contractive drift)."""


class NonPositiveRate(GausteadyError):
    """A damping rate must be strictly positive."""


class AsymmetricInput(GausteadyError):
    """A matrix that must be symmetric is not."""


class TooFewModes(GausteadyError):
    """Construction requires more modes than were requested."""


class UnknownEntry(GausteadyError):
    """Catalog lookup failed."""


class NotHurwitz(GausteadyError):
    """Drift matrix has an eigenvalue with non-negative real part."""


class RankConditionFailed(GausteadyError):
    """The controllability-style rank condition of the synthesis procedure
    does not hold for the supplied parameters."""

    def __init__(self, rank: int, needed: int):
        self.rank = rank
        self.needed = needed
        super().__init__(f"rank condition failed: rank {rank} < {needed}")


class SchemaError(GausteadyError):
    """A JSON document does not match the expected file schema."""
