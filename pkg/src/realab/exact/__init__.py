"""Exact scalar and matrix kernel."""

from .intmat import (
    IntMatrix,
    column_basis,
    hnf,
    in_lattice,
    int_det,
    integer_kernel,
    invariant_factors,
    lattice_intersect,
    snf,
)
from .matrix import (
    ExactMatrix,
    SingularMatrix,
    charpoly,
    is_positive_definite,
    is_positive_semidefinite,
    rational_nullspace,
)
from . import f2
from .scalar import ExactScalar, FieldMismatch, check_discriminant, scalar_sign

__all__ = [
    "ExactMatrix",
    "ExactScalar",
    "FieldMismatch",
    "IntMatrix",
    "SingularMatrix",
    "charpoly",
    "check_discriminant",
    "column_basis",
    "hnf",
    "in_lattice",
    "int_det",
    "integer_kernel",
    "invariant_factors",
    "is_positive_definite",
    "is_positive_semidefinite",
    "lattice_intersect",
    "rational_nullspace",
    "scalar_sign",
    "snf",
]
