"""
Pfaffians and principal sub-Pfaffians of skew matrices.

Convention: Pf([[0, 1], [-1, 0]]) = 1 and
Pf(M) = Σ_{j≥2} (-1)^j m_{1j} Pf(M without rows/columns 1 and j)   (1-based indices).
The expansion is memoized on index subsets, so all principal sub-Pfaffians of one matrix
share their subproblems.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Any, Callable, Sequence

import numpy as np

import linalg
from errors import DimensionMismatch, NotSkew, OddSize
from polymat import LinearMatrix, MultiPoly, ProjectivePoint, evaluate
from scalars import FieldSpec, ScalarField, common_field, field_for


@dataclass(frozen=True)
class _Ring:
    zero: Any
    one: Any
    add: Callable[[Any, Any], Any]
    sub: Callable[[Any, Any], Any]
    mul: Callable[[Any, Any], Any]
    is_zero: Callable[[Any], bool]


def _poly_ring(field: ScalarField, nvars: int) -> _Ring:
    return _Ring(
        zero=MultiPoly.zero(field, nvars),
        one=MultiPoly.constant(field, nvars, field.one),
        add=lambda a, b: a + b,
        sub=lambda a, b: a - b,
        mul=lambda a, b: a * b,
        is_zero=lambda a: a.is_zero(),
    )


def _scalar_ring(field: ScalarField) -> _Ring:
    return _Ring(
        zero=field.zero,
        one=field.one,
        add=field.add,
        sub=field.sub,
        mul=field.mul,
        is_zero=field.is_zero,
    )


class PfaffianExpander:
    """Memoized Pfaffians of the principal submatrices of one skew matrix."""

    def __init__(self, entries: Sequence[Sequence[Any]], ring: _Ring):
        self._entries = entries
        self._ring = ring
        self._memo: dict[tuple[int, ...], Any] = {(): ring.one}

    @classmethod
    def for_linear_matrix(cls, A: LinearMatrix) -> "PfaffianExpander":
        return cls(A.entries(), _poly_ring(A.field, A.d))

    @classmethod
    def for_scalar_matrix(cls, field: ScalarField, M: np.ndarray) -> "PfaffianExpander":
        n = M.shape[0]
        flat = field.raw_list(M)
        entries = [flat[i * n : (i + 1) * n] for i in range(n)]
        return cls(entries, _scalar_ring(field))

    def pfaffian(self, subset: tuple[int, ...]) -> Any:
        if len(subset) % 2:
            raise OddSize(f"Pfaffian of an odd subset of size {len(subset)}")
        cached = self._memo.get(subset)
        if cached is not None:
            return cached
        ring = self._ring
        first, rest = subset[0], subset[1:]
        total = ring.zero
        for pos, j in enumerate(rest):
            m = self._entries[first][j]
            if ring.is_zero(m):
                continue
            minor = self.pfaffian(rest[:pos] + rest[pos + 1 :])
            if ring.is_zero(minor):
                continue
            term = ring.mul(m, minor)
            total = ring.add(total, term) if pos % 2 == 0 else ring.sub(total, term)
        self._memo[subset] = total
        return total

    def is_zero(self, value: Any) -> bool:
        return self._ring.is_zero(value)


def _check_square_skew_entries(entries: Sequence[Sequence[Any]], ring: _Ring) -> None:
    n = len(entries)
    for i in range(n):
        if len(entries[i]) != n:
            raise DimensionMismatch("Pfaffian of a non-square matrix")
        for j in range(i, n):
            if not ring.is_zero(ring.add(entries[i][j], entries[j][i])):
                raise NotSkew(f"entries ({i + 1}, {j + 1}) and ({j + 1}, {i + 1}) are not opposite")


def pfaffian(M: Any, field: ScalarField | None = None) -> Any:
    """Pfaffian of a skew matrix.

    Args:
        M: Square skew matrix given either as rows of MultiPoly entries or as a scalar array
        field: Field of a scalar array; object arrays default to QQ

    Returns:
        A MultiPoly for polynomial entries, a raw field value for scalar entries

    Raises:
        NotSkew: If M is not skew-symmetric
        OddSize: If M has odd size
    """
    if isinstance(M, LinearMatrix):
        M = M.entries()
    if isinstance(M, np.ndarray):
        if field is None:
            if M.dtype != object:
                raise TypeError("pass `field` for finite-field arrays")
            field = field_for(FieldSpec.rational())
        if M.ndim != 2 or M.shape[0] != M.shape[1]:
            raise DimensionMismatch(f"Pfaffian of shape {M.shape}")
        expander = PfaffianExpander.for_scalar_matrix(field, M)
        n = M.shape[0]
        if not linalg.arrays_equal(field, M.T, -M):
            raise NotSkew("matrix is not skew-symmetric")
    else:
        rows = [list(row) for row in M]
        n = len(rows)
        if n == 0:
            raise DimensionMismatch("Pfaffian of an empty matrix needs a field")
        sample = rows[0][0]
        ring = _poly_ring(sample.field, sample.nvars)
        _check_square_skew_entries(rows, ring)
        expander = PfaffianExpander(rows, ring)
    if n % 2:
        raise OddSize(f"Pfaffian of odd size {n}")
    return expander.pfaffian(tuple(range(n)))


@dataclass(frozen=True)
class SubPfaffianSystem:
    """All principal sub-Pfaffians of one size, subsets in lexicographic order."""

    source: LinearMatrix
    size: int
    subsets: tuple[tuple[int, ...], ...]
    polys: tuple[MultiPoly, ...]

    @property
    def degree(self) -> int:
        return self.size // 2

    def __len__(self) -> int:
        return len(self.polys)

    def all_zero(self) -> bool:
        return all(p.is_zero() for p in self.polys)

    def nonzero(self) -> list[MultiPoly]:
        return [p for p in self.polys if not p.is_zero()]


def _require_skew(A: LinearMatrix) -> None:
    if not A.is_skew():
        raise NotSkew(f"{A!r} is not skew-symmetric")


def principal_subpfaffians(
    A: LinearMatrix,
    size: int,
    expander: PfaffianExpander | None = None,
) -> SubPfaffianSystem:
    """Pfaffians of every principal size×size submatrix of A, as degree size/2 polynomials.

    Raises:
        NotSkew: If A is not skew-symmetric
        OddSize: If size is odd
    """
    _require_skew(A)
    if size % 2:
        raise OddSize(f"sub-Pfaffians have even size, got {size}")
    if not 0 <= size <= A.n:
        raise DimensionMismatch(f"size {size} outside [0, {A.n}]")
    expander = expander or PfaffianExpander.for_linear_matrix(A)
    subsets = tuple(itertools.combinations(range(A.n), size))
    polys = tuple(expander.pfaffian(s) for s in subsets)
    return SubPfaffianSystem(source=A, size=size, subsets=subsets, polys=polys)


def symbolic_rank_upper_bound(A: LinearMatrix) -> int:
    """Largest 2m such that some principal 2m-sub-Pfaffian is not the zero polynomial."""
    _require_skew(A)
    expander = PfaffianExpander.for_linear_matrix(A)
    for size in range(A.n - A.n % 2, 0, -2):
        if any(not expander.pfaffian(s).is_zero() for s in itertools.combinations(range(A.n), size)):
            return size
    return 0


def pfaffian_at(A: LinearMatrix, x: ProjectivePoint) -> Any:
    """Pf(A(x)) as a raw value over the field of the evaluation."""
    target = common_field(A.field, x.field)
    return pfaffian(evaluate(A, x), field=target)


def rank_from_subpfaffians(A: LinearMatrix, x: ProjectivePoint) -> int:
    """Largest 2m with a principal 2m-sub-Pfaffian of A(x) nonzero."""
    _require_skew(A)
    target = common_field(A.field, x.field)
    expander = PfaffianExpander.for_scalar_matrix(target, evaluate(A, x))
    for size in range(A.n - A.n % 2, 0, -2):
        if any(not expander.is_zero(expander.pfaffian(s)) for s in itertools.combinations(range(A.n), size)):
            return size
    return 0


__all__ = [
    "PfaffianExpander",
    "SubPfaffianSystem",
    "pfaffian",
    "principal_subpfaffians",
    "symbolic_rank_upper_bound",
    "pfaffian_at",
    "rank_from_subpfaffians",
]
