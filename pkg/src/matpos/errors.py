"""Exception types shared across the package."""

from __future__ import annotations


class DimensionMismatch(ValueError):
    pass


class NotSymmetric(ValueError):
    pass


class DegreeExceeded(ValueError):
    pass


class LevelTooHigh(ValueError):
    pass


class ZeroPolynomial(ValueError):
    pass


class AtomOutsideDomain(ValueError):
    pass


class CertificateInvalid(ValueError):
    pass


class NotPositiveOnDomain(Exception):
    """The polynomial fails to be positive definite at some point of the domain."""

    def __init__(self, violation, message: str | None = None):
        self.violation = violation
        super().__init__(message or f"not positive definite at {violation.point_str()}")


class CertificateNotFound(Exception):
    """No Polya exponent up to ``n_max`` produced an all-PD coefficient set.

    This is an inconclusive outcome, never a proof of non-positivity.
    """

    def __init__(self, n_max: int, alpha=None, coefficient=None):
        self.n_max = n_max
        self.alpha = alpha
        self.coefficient = coefficient
        super().__init__(f"no certificate found with N <= {n_max}")
