"""Exact positivity certificates and tracial moment checks for matrix polynomials."""

from .certify import (
    Certificate,
    Domain,
    certify,
    certify_hypercube,
    certify_interval,
    certify_unit_interval,
    find_violation,
    polya_loop,
    verify_certificate,
)
from .errors import CertificateNotFound, NotPositiveOnDomain
from .linalg import is_pd, is_psd, trace, trace_product
from .matpoly import MatPoly
from .moment import (
    AtomicMeasure,
    MomentSeq,
    check_moment,
    moment_seq_from_atomic,
    riesz_eval,
    tracial_integral,
)

__version__ = "0.1.0"

__all__ = [
    "AtomicMeasure",
    "Certificate",
    "CertificateNotFound",
    "Domain",
    "MatPoly",
    "MomentSeq",
    "NotPositiveOnDomain",
    "certify",
    "certify_hypercube",
    "certify_interval",
    "certify_unit_interval",
    "check_moment",
    "find_violation",
    "is_pd",
    "is_psd",
    "moment_seq_from_atomic",
    "polya_loop",
    "riesz_eval",
    "trace",
    "trace_product",
    "tracial_integral",
    "verify_certificate",
]
