"""Exact tightness and orthogonality checks for sampling on unions of
shifted lattices, with a numeric sampling oracle for verification.

Problem specs are JSON text in the same schema the ``latsamp`` CLI reads;
reports come back as plain dicts.
"""

from lattice_sampling._core import (
    SpecError,
    UnsupportedSystemError,
    canonical_spec,
    check,
    cyclotomic_polynomial,
    exponential_sum_is_zero,
    verify,
)

__all__ = [
    "SpecError",
    "UnsupportedSystemError",
    "canonical_spec",
    "check",
    "cyclotomic_polynomial",
    "exponential_sum_is_zero",
    "verify",
]

__version__ = "0.1.0"
