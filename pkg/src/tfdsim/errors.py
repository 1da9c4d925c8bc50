"""Exception types shared across the package."""


class TfdsimError(Exception):
    """Base class for all package-specific errors."""


class NumericalFailure(TfdsimError):
    """A numerical routine produced non-finite values or failed to converge."""


class UnstableRegime(TfdsimError):
    """Requested a Bogoliubov diagonalization outside its hyperbolic domain."""


class DegenerateFactorization(TfdsimError):
    """The su(1,1) normal-ordering factorization breaks down (vanishing denominator)."""


class TruncationOverflow(TfdsimError):
    """Evolved state leaks significant norm into the top Fock levels."""


class UnphysicalCovariance(TfdsimError):
    """Covariance matrix violates the uncertainty bound (min symplectic eigenvalue < 1/2)."""


class ConfigError(TfdsimError):
    """Invalid or malformed run configuration."""
