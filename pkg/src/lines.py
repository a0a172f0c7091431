"""
Restriction of a matrix of linear forms to a projective line, and the Kronecker minimal
(column) indices of the restricted pencil sP0 + tP1.

The minimal indices ε_1 <= ... <= ε_c are the splitting type of the kernel bundle on the line:
they are read off from d_e, the dimension of the degree-e polynomial solutions of P(s,t)v(s,t) = 0,
since d_e - d_{e-1} counts the indices <= e.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

import linalg
from console import LoggerProtocol, resolve_logger
from errors import (
    DegenerateLine,
    DimensionMismatch,
    NonConstantRankOnLine,
    OddIndexGap,
    SingularTransform,
    UnsupportedCorank,
)
from polymat import LinearMatrix, ProjectivePoint, random_point
from scalars import FieldKind, ScalarField, common_field, sampling_extension_degree


@dataclass(frozen=True, eq=False)
class Line:
    """Line of P^{d-1} spanned by the two columns of `basis` (shape (d, 2)); its points are s·col0 + t·col1."""

    field: ScalarField
    basis: np.ndarray

    def __post_init__(self) -> None:
        if self.basis.ndim != 2 or self.basis.shape[1] != 2:
            raise DimensionMismatch(f"a line basis has shape (d, 2), got {self.basis.shape}")
        if linalg.rank(self.field, self.basis) < 2:
            raise DegenerateLine("line basis vectors are linearly dependent")

    @classmethod
    def through(cls, p: ProjectivePoint, q: ProjectivePoint) -> "Line":
        field_ = common_field(p.field, q.field)
        col0 = field_.raw_list(field_.embed(p.array(), p.field))
        col1 = field_.raw_list(field_.embed(q.array(), q.field))
        return cls(field_, field_.array([[a, b] for a, b in zip(col0, col1)]))

    @classmethod
    def from_ints(cls, field_: ScalarField, col0: Sequence[int], col1: Sequence[int]) -> "Line":
        if len(col0) != len(col1):
            raise DimensionMismatch(f"basis vectors of lengths {len(col0)} and {len(col1)}")
        return cls(field_, field_.from_ints([list(pair) for pair in zip(col0, col1)]))

    @property
    def d(self) -> int:
        return self.basis.shape[0]

    def column(self, j: int) -> np.ndarray:
        return self.basis[:, j]

    def point(self, s, t) -> ProjectivePoint:
        """The point s·col0 + t·col1 for raw field values s, t."""
        f = self.field
        values = self.basis @ f.array([s, t])
        return ProjectivePoint(f, tuple(f.raw_list(values)))

    def reparametrize(self, T: np.ndarray) -> "Line":
        """Same line with basis `basis @ T`.

        Raises:
            SingularTransform: If T is not an invertible 2×2 matrix
        """
        if T.shape != (2, 2) or not linalg.is_invertible(self.field, T):
            raise SingularTransform("reparametrization must be an invertible 2×2 matrix")
        return Line(self.field, self.basis @ T)

    def __repr__(self) -> str:
        cols = [[self.field.format(v) for v in self.field.raw_list(self.column(j))] for j in range(2)]
        return f"<Line {cols[0]} {cols[1]} over {self.field.spec.label}>"


def random_line(
    field_: ScalarField,
    d: int,
    rng: np.random.Generator,
    bound: int | None = None,
) -> Line:
    """Line through two random points (redrawn until independent)."""
    while True:
        p = random_point(field_, d, rng, bound)
        q = random_point(field_, d, rng, bound)
        try:
            return Line.through(p, q)
        except DegenerateLine:
            continue


@dataclass(frozen=True, eq=False)
class BinaryPencil:
    """The pencil sP0 + tP1 of n×n scalar matrices."""

    field: ScalarField
    P0: np.ndarray
    P1: np.ndarray

    def __post_init__(self) -> None:
        if self.P0.shape != self.P1.shape or self.P0.ndim != 2 or self.P0.shape[0] != self.P0.shape[1]:
            raise DimensionMismatch(f"pencil blocks of shapes {self.P0.shape} and {self.P1.shape}")

    @property
    def n(self) -> int:
        return self.P0.shape[0]

    def value(self, s, t, target: ScalarField | None = None) -> np.ndarray:
        target = target or self.field
        P0 = target.embed(self.P0, self.field)
        P1 = target.embed(self.P1, self.field)
        return target.scalar(s) * P0 + target.scalar(t) * P1


@dataclass(frozen=True)
class SplittingProfile:
    """Minimal indices ε_1 <= ... <= ε_c; c is the generic corank of the pencil."""

    indices: tuple[int, ...]
    corank: int

    @property
    def total(self) -> int:
        return sum(self.indices)

    def as_list(self) -> list[int]:
        return list(self.indices)


def restrict_to_line(A: LinearMatrix, L: Line) -> BinaryPencil:
    """The pencil sP0 + tP1 with P0 = A(col0), P1 = A(col1)."""
    if L.d != A.d:
        raise DimensionMismatch(f"line in P^{L.d - 1} for a matrix in {A.d} variables")
    target = common_field(A.field, L.field)
    flat = A.stacked(target).reshape(A.d, A.n * A.n)
    basis = target.embed(L.basis, L.field)
    P0 = (basis[:, 0] @ flat).reshape(A.n, A.n)
    P1 = (basis[:, 1] @ flat).reshape(A.n, A.n)
    return BinaryPencil(target, P0, P1)


def _validation_points(field_: ScalarField, n: int) -> tuple[ScalarField, list[tuple]]:
    """At least n + 1 points of P^1, over an extension when the field is too small."""
    target = field_
    if field_.is_finite and field_.order < n and field_.spec.kind is FieldKind.PRIME:
        target = field_.lift(sampling_extension_degree(field_.characteristic, n))
    if target.is_finite:
        values = []
        for c in target.elements():
            if len(values) == n:
                break
            values.append(c)
    else:
        values = [target.from_int(i) for i in range(n)]
    return target, [(target.zero, target.one)] + [(target.one, c) for c in values]


def pencil_rank_profile(P: BinaryPencil, logger: LoggerProtocol | None = None) -> int:
    """Rank of P on P^1, checked at n + 1 points.

    Prime fields smaller than n are lifted to an extension. Extension fields cannot be lifted further,
    so a small one is checked at all of its q + 1 points and a warning names the shortfall.

    Raises:
        NonConstantRankOnLine: If two checked points have different ranks
    """
    target, points = _validation_points(P.field, P.n)
    if len(points) < P.n + 1:
        resolve_logger(logger).warn(
            f"constant rank on the line checked at only {len(points)} points of P^1 over {target.spec.label}"
            f" (wanted {P.n + 1})"
        )
    ranks = {}
    for s, t in points:
        ranks[(s, t)] = linalg.rank(target, P.value(s, t, target))
    if len(set(ranks.values())) > 1:
        found = sorted(set(ranks.values()))
        raise NonConstantRankOnLine(f"pencil takes ranks {found} on the line over {target.spec.label}")
    return next(iter(ranks.values()))


def solution_system(P: BinaryPencil, e: int) -> np.ndarray:
    """Block matrix of the degree-e equations: row block m holds P0 v_m + P1 v_{m-1}."""
    n, f = P.n, P.field
    M = f.zeros(((e + 2) * n, (e + 1) * n))
    for m in range(e + 1):
        M[m * n : (m + 1) * n, m * n : (m + 1) * n] = P.P0
        M[(m + 1) * n : (m + 2) * n, m * n : (m + 1) * n] = P.P1
    return M


def kernel_dimensions(P: BinaryPencil, up_to: int) -> list[int]:
    """d_0, ..., d_{up_to}: dimensions of degree-e polynomial kernel vectors."""
    dims = []
    for e in range(up_to + 1):
        M = solution_system(P, e)
        dims.append((e + 1) * P.n - linalg.rank(P.field, M))
    return dims


def minimal_indices(P: BinaryPencil, logger: LoggerProtocol | None = None) -> SplittingProfile:
    """Kronecker minimal column indices of P.

    Raises:
        NonConstantRankOnLine: If P does not have constant rank on P^1
    """
    logger = resolve_logger(logger)
    corank = P.n - pencil_rank_profile(P, logger)
    indices: list[int] = []
    prev_d = 0
    prev_delta = 0
    for e in range(P.n + 1):
        if prev_delta == corank:
            break
        d_e = (e + 1) * P.n - linalg.rank(P.field, solution_system(P, e))
        delta = d_e - prev_d
        indices.extend([e] * (delta - prev_delta))
        logger.debug(f"degree {e}: {d_e} kernel vectors, {delta} indices <= {e}")
        prev_d, prev_delta = d_e, delta
    return SplittingProfile(indices=tuple(indices), corank=corank)


def jumping_order_of(profile: SplittingProfile) -> int:
    """(ε_2 - ε_1) / 2 for a profile with two indices.

    Raises:
        UnsupportedCorank: If the profile does not have exactly two indices
        OddIndexGap: If ε_2 - ε_1 is odd
    """
    if len(profile.indices) != 2:
        raise UnsupportedCorank(f"jumping order needs corank 2, got indices {profile.as_list()}")
    gap = profile.indices[1] - profile.indices[0]
    if gap % 2:
        raise OddIndexGap(f"indices {profile.as_list()} differ by an odd amount")
    return gap // 2


def jumping_order(A: LinearMatrix, L: Line, logger: LoggerProtocol | None = None) -> int:
    return jumping_order_of(minimal_indices(restrict_to_line(A, L), logger=logger))


def splitting_profiles(
    A: LinearMatrix,
    lines: Iterable[Line],
    logger: LoggerProtocol | None = None,
) -> list[tuple[Line, SplittingProfile]]:
    logger = resolve_logger(logger)
    out = []
    for L in lines:
        profile = minimal_indices(restrict_to_line(A, L), logger=logger)
        logger.debug(f"{L!r}: indices {profile.as_list()}")
        out.append((L, profile))
    return out


def random_lines(
    field_: ScalarField,
    d: int,
    count: int,
    rng: np.random.Generator,
    bound: int | None = None,
) -> list[Line]:
    return [random_line(field_, d, rng, bound) for _ in range(count)]


__all__ = [
    "Line",
    "BinaryPencil",
    "SplittingProfile",
    "random_line",
    "random_lines",
    "restrict_to_line",
    "pencil_rank_profile",
    "solution_system",
    "kernel_dimensions",
    "minimal_indices",
    "jumping_order_of",
    "jumping_order",
    "splitting_profiles",
]
