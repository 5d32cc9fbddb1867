"""Explicit GRH-conditional bounds for prime ideals with a given Artin symbol.

Bound evaluators plus exact prime-ideal censuses of abelian extensions of Q
(Q itself, quadratic fields, cyclotomic fields) used to check them.
"""

from artin_bound.field_models import (
    Cyclotomic,
    FieldInvariants,
    GaloisClassSpec,
    Quadratic,
    Rational,
    class_context,
    cyclotomic_invariants,
    quadratic_invariants,
    root_discriminant,
)

__version__ = "0.1.0"

__all__ = [
    "Cyclotomic",
    "FieldInvariants",
    "GaloisClassSpec",
    "Quadratic",
    "Rational",
    "class_context",
    "cyclotomic_invariants",
    "quadratic_invariants",
    "root_discriminant",
]
