"""
Exact dense linear algebra over the fields of `scalars`.

Finite fields go through galois ``FieldArray`` (which overrides ``np.linalg``), ℚ goes through
sympy's ``DomainMatrix``: rank is computed over ZZ after clearing row denominators, null spaces,
determinants and inverses over QQ.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Any

import numpy as np
from sympy import QQ, ZZ
from sympy.polys.matrices import DomainMatrix

from errors import DimensionMismatch, SingularTransform
from scalars import ScalarField


def _qq_matrix(M: np.ndarray) -> DomainMatrix:
    rows = [[QQ(int(Fraction(x).numerator), int(Fraction(x).denominator)) for x in row] for row in M]
    return DomainMatrix(rows, M.shape, QQ)


def _zz_matrix(M: np.ndarray) -> DomainMatrix:
    rows = []
    for row in M:
        fractions = [Fraction(x) for x in row]
        scale = lcm(*(f.denominator for f in fractions)) if fractions else 1
        rows.append([ZZ(int(f * scale)) for f in fractions])
    return DomainMatrix(rows, M.shape, ZZ)


def _to_fraction(x: Any) -> Fraction:
    return Fraction(int(x.numerator), int(x.denominator))


def rank(field: ScalarField, M: np.ndarray) -> int:
    """Rank of a 2-D array over `field`."""
    if M.ndim != 2:
        raise DimensionMismatch(f"expected a matrix, got shape {M.shape}")
    if 0 in M.shape:
        return 0
    if field.is_finite:
        return int(np.linalg.matrix_rank(M))
    return int(_zz_matrix(M).rank())


def null_space(field: ScalarField, M: np.ndarray) -> list[np.ndarray]:
    """Basis of {v : M v = 0} as a list of 1-D arrays over `field`."""
    if M.ndim != 2:
        raise DimensionMismatch(f"expected a matrix, got shape {M.shape}")
    cols = M.shape[1]
    if M.shape[0] == 0:
        eye = field.identity(cols)
        return [eye[i] for i in range(cols)]
    if field.is_finite:
        basis = M.null_space()
        return [basis[i] for i in range(basis.shape[0])]
    rows = _qq_matrix(M).nullspace().to_list()
    return [field.array([_to_fraction(x) for x in row]) for row in rows]


def det(field: ScalarField, M: np.ndarray) -> Any:
    """Determinant as a raw field value."""
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise DimensionMismatch(f"determinant of non-square shape {M.shape}")
    if M.shape[0] == 0:
        return field.one
    if field.is_finite:
        return field.raw(np.linalg.det(M))
    return _to_fraction(_qq_matrix(M).det())


def inverse(field: ScalarField, M: np.ndarray) -> np.ndarray:
    """Inverse of a square matrix.

    Raises:
        SingularTransform: If M is not invertible
    """
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise DimensionMismatch(f"inverse of non-square shape {M.shape}")
    if field.is_zero(det(field, M)):
        raise SingularTransform("matrix is singular")
    if field.is_finite:
        return np.linalg.inv(M)
    rows = _qq_matrix(M).inv().to_list()
    return field.array([[_to_fraction(x) for x in row] for row in rows])


def is_invertible(field: ScalarField, M: np.ndarray) -> bool:
    return M.ndim == 2 and M.shape[0] == M.shape[1] and rank(field, M) == M.shape[0]


def is_zero(field: ScalarField, M: np.ndarray) -> bool:
    return all(field.is_zero(v) for v in field.raw_list(M))


def arrays_equal(field: ScalarField, A: np.ndarray, B: np.ndarray) -> bool:
    return A.shape == B.shape and field.raw_list(A) == field.raw_list(B)


__all__ = [
    "rank",
    "null_space",
    "det",
    "inverse",
    "is_invertible",
    "is_zero",
    "arrays_equal",
]
