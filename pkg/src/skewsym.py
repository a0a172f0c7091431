"""
Skew-symmetrization: find an invertible scalar Δ with ΔB skew-symmetric.

Δ solves the homogeneous linear system Δ·A_i + (Δ·A_i)ᵀ = 0 for every coefficient matrix A_i.
The n² unknowns are the entries Δ[a, b] at index a·n + b; each variable i and pair u <= v
contributes the equation Σ_b Δ[u,b] A_i[b,v] + Σ_b Δ[v,b] A_i[b,u] = 0.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum

import numpy as np

import linalg
from console import LoggerProtocol, resolve_logger
from errors import NoSkewifier, OutOfRange
from polymat import LinearMatrix
from scalars import FieldKind, ScalarField, sampling_extension_degree

DEFAULT_MAX_RETRIES = 20
GRID_FALLBACK_MAX_DIM = 4
RATIONAL_DRAW_BOUND = 100


@dataclass(frozen=True)
class Skewifier:
    """Result of `skew_symmetrize`: result = delta · B, skew-symmetric, with delta invertible."""

    delta: np.ndarray
    result: LinearMatrix
    solution_dim: int
    draws: int
    used_grid: bool = False

    @property
    def field(self) -> ScalarField:
        return self.result.field


def skewifier_system(B: LinearMatrix) -> np.ndarray:
    """Coefficient matrix (d·n(n+1)/2 rows, n² columns) of the linear conditions on Δ."""
    n, field_ = B.n, B.field
    pairs = [(u, v) for u in range(n) for v in range(u, n)]
    rows = field_.zeros((B.d * len(pairs), n * n))
    row = 0
    for Ai in B.coeffs:
        for u, v in pairs:
            rows[row, u * n : (u + 1) * n] += Ai[:, v]
            rows[row, v * n : (v + 1) * n] += Ai[:, u]
            row += 1
    return rows


def solution_basis(B: LinearMatrix) -> list[np.ndarray]:
    """Basis of {Δ : ΔB is skew} as n×n matrices."""
    return [v.reshape(B.n, B.n) for v in linalg.null_space(B.field, skewifier_system(B))]


def _combine(field_: ScalarField, basis: list[np.ndarray], coeffs: list) -> np.ndarray:
    delta = field_.zeros(basis[0].shape)
    for c, M in zip(coeffs, basis):
        if not field_.is_zero(c):
            delta = delta + field_.scalar(c) * M
    return delta


def _random_coefficients(field_: ScalarField, k: int, rng: np.random.Generator) -> list:
    if field_.spec.kind is FieldKind.RATIONAL:
        return [field_.random(rng, RATIONAL_DRAW_BOUND) for _ in range(k)]
    return [field_.random(rng) for _ in range(k)]


def _grid_field(field_: ScalarField, size: int) -> ScalarField:
    if not field_.is_finite or field_.order >= size:
        return field_
    if field_.spec.kind is not FieldKind.PRIME:
        return field_
    return field_.lift(sampling_extension_degree(field_.characteristic, size))


def _grid_search(field_: ScalarField, basis: list[np.ndarray], n: int) -> tuple[ScalarField, np.ndarray] | None:
    """Search Σ c_j basis_j for c in S^k with |S| = n + 1.

    det(Σ c_j basis_j) has degree n, so it vanishes on the whole grid only if it is identically zero.
    """
    target = _grid_field(field_, n + 1)
    lifted = [target.embed(M, field_) for M in basis]
    if target.is_finite:
        grid = list(itertools.islice(target.elements(), n + 1))
    else:
        grid = [target.from_int(i) for i in range(n + 1)]
    for coeffs in itertools.product(grid, repeat=len(lifted)):
        if all(target.is_zero(c) for c in coeffs):
            continue
        delta = _combine(target, lifted, list(coeffs))
        if linalg.is_invertible(target, delta):
            return target, delta
    return None


def skew_symmetrize(
    B: LinearMatrix,
    rng: np.random.Generator,
    max_retries: int = DEFAULT_MAX_RETRIES,
    logger: LoggerProtocol | None = None,
) -> Skewifier:
    """Find an invertible Δ with ΔB skew-symmetric.

    Args:
        B: Square matrix of linear forms
        rng: Random source for the draws from the solution space
        max_retries: Random draws before giving up (or falling back to the grid search)
        logger: Logger for progress output

    Returns:
        The Skewifier with Δ and ΔB

    Raises:
        NoSkewifier: If no invertible element of the solution space was found
    """
    logger = resolve_logger(logger)
    basis = solution_basis(B)
    k = len(basis)
    logger.debug(f"skewifier solution space has dimension {k} over {B.spec.label}")
    if k == 0:
        raise NoSkewifier("only Δ = 0 makes ΔB skew-symmetric")

    for draw in range(1, max_retries + 1):
        delta = _combine(B.field, basis, _random_coefficients(B.field, k, rng))
        if linalg.is_invertible(B.field, delta):
            logger.debug(f"invertible Δ after {draw} draw(s)")
            return Skewifier(delta=delta, result=B.left_multiply(delta), solution_dim=k, draws=draw)

    if k > GRID_FALLBACK_MAX_DIM:
        raise NoSkewifier(f"no invertible Δ in {max_retries} draws from a {k}-dimensional solution space")

    logger.info(f"no invertible Δ after {max_retries} draws; searching a grid over {k} parameters")
    found = _grid_search(B.field, basis, B.n)
    if found is None:
        raise NoSkewifier("the determinant vanishes identically on the solution space")
    target, delta = found
    result = B.base_change(target).left_multiply(delta)
    return Skewifier(delta=delta, result=result, solution_dim=k, draws=max_retries, used_grid=True)


class SymmetryType(str, Enum):
    MIDDLE_MAP_SYMMETRIC = "middle_map_symmetric"
    MIDDLE_TERM_SKEW_DUALITY = "middle_term_skew_duality"
    MIDDLE_MAP_SKEW = "middle_map_skew"
    MIDDLE_TERM_SYMMETRIC_DUALITY = "middle_term_symmetric_duality"


_BY_RESIDUE = (
    SymmetryType.MIDDLE_MAP_SYMMETRIC,
    SymmetryType.MIDDLE_TERM_SKEW_DUALITY,
    SymmetryType.MIDDLE_MAP_SKEW,
    SymmetryType.MIDDLE_TERM_SYMMETRIC_DUALITY,
)

_FLIPPED = {
    SymmetryType.MIDDLE_MAP_SYMMETRIC: SymmetryType.MIDDLE_MAP_SKEW,
    SymmetryType.MIDDLE_MAP_SKEW: SymmetryType.MIDDLE_MAP_SYMMETRIC,
    SymmetryType.MIDDLE_TERM_SKEW_DUALITY: SymmetryType.MIDDLE_TERM_SYMMETRIC_DUALITY,
    SymmetryType.MIDDLE_TERM_SYMMETRIC_DUALITY: SymmetryType.MIDDLE_TERM_SKEW_DUALITY,
}


def symmetry_type(k: int, beta_kind: str = "symmetric") -> SymmetryType:
    """Symmetry of the middle of a length k+2 complex representing a (skew-)symmetric extension class.

    k mod 4 = 0, 1, 2, 3 gives symmetric map, skew duality, skew map, symmetric duality;
    a skew class reverses every sign.
    """
    if k < 0:
        raise OutOfRange(f"k must be non-negative, got {k}")
    if beta_kind not in ("symmetric", "skew"):
        raise ValueError(f"beta_kind is 'symmetric' or 'skew', got {beta_kind!r}")
    kind = _BY_RESIDUE[k % 4]
    return _FLIPPED[kind] if beta_kind == "skew" else kind


__all__ = [
    "DEFAULT_MAX_RETRIES",
    "Skewifier",
    "skewifier_system",
    "solution_basis",
    "skew_symmetrize",
    "SymmetryType",
    "symmetry_type",
]
