"""
Buchberger's algorithm over 𝔽_p in degrevlex, and projective emptiness of homogeneous ideals.

Internally polynomials are dicts exponent-vector -> int residue, wrapped in `_Poly` which caches
the leading monomial. Pairs are selected with the normal strategy (smallest lcm first) and pruned
with the coprime and chain (Gebauer–Möller) criteria.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Literal, Sequence

import numpy as np

from console import LoggerProtocol, resolve_logger
from errors import DegreeCapExceeded, DimensionMismatch, FieldMismatch, NonHomogeneousInput, UnsupportedField
from functions import content_hash
from polymat import (
    Monomial,
    MultiPoly,
    ProjectivePoint,
    count_projective_points,
    degrevlex_key,
    divides,
    format_monomial,
    monomial_lcm,
    projective_point_batches,
)
from scalars import FieldKind, ScalarField

DEFAULT_DEGREE_CAP = 40
DEFAULT_SEARCH_LIMIT = 200_000


@dataclass(frozen=True)
class MonomialOrder:
    """Degree reverse lexicographic order with x0 > x1 > ... > x_{d-1}."""

    kind: Literal["degrevlex"] = "degrevlex"

    def key(self, exps: Monomial) -> tuple:
        return degrevlex_key(exps)


DEGREVLEX = MonomialOrder()


# ============================================================================
# Internal polynomial representation
# ============================================================================


class _Poly:
    __slots__ = ("terms", "lm")

    def __init__(self, terms: dict[Monomial, int]):
        self.terms = terms
        self.lm = max(terms, key=degrevlex_key) if terms else None

    @property
    def degree(self) -> int:
        return sum(self.lm)


def _from_multipoly(f: MultiPoly, p: int) -> dict[Monomial, int]:
    return {e: int(c) % p for e, c in f.terms.items() if int(c) % p}


def _to_multipoly(terms: dict[Monomial, int], field: ScalarField, nvars: int) -> MultiPoly:
    return MultiPoly(field, nvars, terms)


def _monic(terms: dict[Monomial, int], p: int) -> _Poly:
    lead = max(terms, key=degrevlex_key)
    inv = pow(terms[lead], -1, p)
    return _Poly({e: (c * inv) % p for e, c in terms.items()})


def _reduce(terms: dict[Monomial, int], basis: Sequence[_Poly], p: int) -> dict[Monomial, int]:
    """Full remainder of `terms` on division by monic `basis`."""
    f = dict(terms)
    remainder: dict[Monomial, int] = {}
    while f:
        lm = max(f, key=degrevlex_key)
        c = f[lm]
        for g in basis:
            if divides(g.lm, lm):
                shift = tuple(a - b for a, b in zip(lm, g.lm))
                for e, gc in g.terms.items():
                    m = tuple(a + b for a, b in zip(e, shift))
                    v = (f.get(m, 0) - c * gc) % p
                    if v:
                        f[m] = v
                    else:
                        f.pop(m, None)
                break
        else:
            remainder[lm] = c
            del f[lm]
    return remainder


def _spoly(f: _Poly, g: _Poly, p: int) -> dict[Monomial, int]:
    lcm = monomial_lcm(f.lm, g.lm)
    sf = tuple(a - b for a, b in zip(lcm, f.lm))
    sg = tuple(a - b for a, b in zip(lcm, g.lm))
    out: dict[Monomial, int] = {}
    for e, c in f.terms.items():
        m = tuple(a + b for a, b in zip(e, sf))
        out[m] = (out.get(m, 0) + c) % p
    for e, c in g.terms.items():
        m = tuple(a + b for a, b in zip(e, sg))
        out[m] = (out.get(m, 0) - c) % p
    return {m: c for m, c in out.items() if c}


def _coprime(a: Monomial, b: Monomial) -> bool:
    return all(x == 0 or y == 0 for x, y in zip(a, b))


def _update(
    polys: list[_Poly],
    active: list[int],
    pairs: set[tuple[int, int]],
    h: int,
) -> tuple[list[int], set[tuple[int, int]]]:
    """Gebauer–Möller update after adding polys[h]."""
    lm_h = polys[h].lm
    candidates = list(active)
    kept: list[int] = []
    for idx, g in enumerate(candidates):
        lm_g = polys[g].lm
        if _coprime(lm_h, lm_g):
            kept.append(g)
            continue
        lcm_hg = monomial_lcm(lm_h, lm_g)
        dominated = any(
            divides(monomial_lcm(lm_h, polys[other].lm), lcm_hg)
            for other in candidates[idx + 1 :] + kept
            if other != g
        )
        if not dominated:
            kept.append(g)
    new_pairs = {(min(g, h), max(g, h)) for g in kept if not _coprime(lm_h, polys[g].lm)}
    survivors = set()
    for i, j in pairs:
        lcm_ij = monomial_lcm(polys[i].lm, polys[j].lm)
        if (
            divides(lm_h, lcm_ij)
            and monomial_lcm(polys[i].lm, lm_h) != lcm_ij
            and monomial_lcm(lm_h, polys[j].lm) != lcm_ij
        ):
            continue
        survivors.add((i, j))
    new_active = [g for g in active if not divides(lm_h, polys[g].lm)] + [h]
    return new_active, survivors | new_pairs


def _prereduce(gens: list[dict[Monomial, int]], gf: type, p: int) -> list[dict[Monomial, int]]:
    """Gauss-reduce homogeneous generators of equal degree on their coefficient vectors."""
    by_degree: dict[int, list[dict[Monomial, int]]] = {}
    others: list[dict[Monomial, int]] = []
    for g in gens:
        degrees = {sum(e) for e in g}
        if len(degrees) == 1:
            by_degree.setdefault(degrees.pop(), []).append(g)
        else:
            others.append(g)
    out: list[dict[Monomial, int]] = []
    for degree in sorted(by_degree):
        group = by_degree[degree]
        monomials = sorted({e for g in group for e in g}, key=degrevlex_key, reverse=True)
        column = {m: i for i, m in enumerate(monomials)}
        rows = np.zeros((len(group), len(monomials)), dtype=np.int64)
        for r, g in enumerate(group):
            for e, c in g.items():
                rows[r, column[e]] = c
        reduced = gf(rows).row_reduce()
        for row in np.asarray(reduced.view(np.ndarray)):
            terms = {monomials[i]: int(c) for i, c in enumerate(row) if c}
            if terms:
                out.append(terms)
    return out + others


# ============================================================================
# Public API
# ============================================================================


@dataclass(frozen=True)
class GroebnerBasis:
    """Reduced, monic Gröbner basis over 𝔽_p."""

    generators: tuple[MultiPoly, ...]
    order: MonomialOrder
    ideal_degree_bound: int
    field: ScalarField
    nvars: int

    def leading_terms(self) -> list[Monomial]:
        return [max(g.terms, key=self.order.key) for g in self.generators]

    def is_unit(self) -> bool:
        return any(g.total_degree() == 0 for g in self.generators)

    def __len__(self) -> int:
        return len(self.generators)


def _require_prime_field(field_: ScalarField) -> int:
    if field_.spec.kind is not FieldKind.PRIME:
        raise UnsupportedField(f"Groebner bases are computed over prime fields only, got {field_.spec.label}")
    return field_.characteristic


def buchberger(
    gens: Sequence[MultiPoly],
    order: MonomialOrder = DEGREVLEX,
    degree_cap: int = DEFAULT_DEGREE_CAP,
    logger: LoggerProtocol | None = None,
) -> GroebnerBasis:
    """Reduced Gröbner basis of the ideal generated by `gens`.

    Args:
        gens: Polynomials over one prime field in the same variables
        order: Monomial order (degrevlex)
        degree_cap: Abort when an S-pair of larger degree is selected
        logger: Logger for progress output

    Returns:
        Reduced monic basis, sorted by leading monomial

    Raises:
        UnsupportedField: If the polynomials are not over a prime field
        DegreeCapExceeded: If completion needs S-pairs above degree_cap
    """
    logger = resolve_logger(logger)
    gens = list(gens)
    if not gens:
        raise ValueError("buchberger needs at least one generator")
    field_, nvars = gens[0].field, gens[0].nvars
    p = _require_prime_field(field_)
    for g in gens:
        if g.nvars != nvars:
            raise DimensionMismatch(f"{g.nvars} vs {nvars} variables")
        if g.field.spec != field_.spec:
            raise FieldMismatch(f"{g.spec.label} vs {field_.spec.label}")

    raw = [t for t in (_from_multipoly(g, p) for g in gens) if t]
    degree_bound = max((sum(e) for t in raw for e in t), default=0)
    raw = _prereduce(raw, field_.gf, p)
    logger.debug(f"buchberger: {len(gens)} generators, {len(raw)} after pre-reduction over {field_.spec.label}")

    polys: list[_Poly] = []
    active: list[int] = []
    pairs: set[tuple[int, int]] = set()
    for terms in sorted(raw, key=lambda t: degrevlex_key(max(t, key=degrevlex_key))):
        terms = _reduce(terms, [polys[i] for i in active], p)
        if not terms:
            continue
        polys.append(_monic(terms, p))
        active, pairs = _update(polys, active, pairs, len(polys) - 1)

    processed = 0
    while pairs:
        i, j = min(
            pairs,
            key=lambda ij: (degrevlex_key(monomial_lcm(polys[ij[0]].lm, polys[ij[1]].lm)), ij),
        )
        pairs.discard((i, j))
        degree = sum(monomial_lcm(polys[i].lm, polys[j].lm))
        if degree > degree_cap:
            raise DegreeCapExceeded(degree, degree_cap)
        degree_bound = max(degree_bound, degree)
        processed += 1
        h = _reduce(_spoly(polys[i], polys[j], p), [polys[k] for k in active], p)
        if h:
            polys.append(_monic(h, p))
            active, pairs = _update(polys, active, pairs, len(polys) - 1)
        if processed % 500 == 0:
            logger.debug(f"buchberger: {processed} pairs, {len(active)} basis elements, {len(pairs)} pending")

    # interreduce
    basis = [polys[i] for i in active]
    basis.sort(key=lambda g: degrevlex_key(g.lm))
    reduced: list[_Poly] = []
    for idx, g in enumerate(basis):
        others = basis[:idx] + basis[idx + 1 :]
        tail = _reduce({e: c for e, c in g.terms.items() if e != g.lm}, others, p)
        tail[g.lm] = g.terms[g.lm]
        reduced.append(_monic(tail, p))
    reduced.sort(key=lambda g: degrevlex_key(g.lm))
    logger.debug(f"buchberger: done after {processed} pairs, {len(reduced)} generators, degree bound {degree_bound}")
    return GroebnerBasis(
        generators=tuple(_to_multipoly(g.terms, field_, nvars) for g in reduced),
        order=order,
        ideal_degree_bound=degree_bound,
        field=field_,
        nvars=nvars,
    )


def normal_form(f: MultiPoly, B: GroebnerBasis) -> MultiPoly:
    """Remainder of f on division by B; zero iff f lies in the ideal."""
    p = _require_prime_field(f.field)
    if f.field.spec != B.field.spec:
        raise FieldMismatch(f"{f.spec.label} vs {B.field.spec.label}")
    if f.nvars != B.nvars:
        raise DimensionMismatch(f"{f.nvars} vs {B.nvars} variables")
    basis = [_Poly(_from_multipoly(g, p)) for g in B.generators]
    return _to_multipoly(_reduce(_from_multipoly(f, p), basis, p), f.field, f.nvars)


def format_basis(B: GroebnerBasis) -> str:
    return "\n".join(g.format() for g in B.generators)


def basis_digest(B: GroebnerBasis) -> str:
    return content_hash(format_basis(B))


# ============================================================================
# Projective emptiness
# ============================================================================


class Emptiness(str, Enum):
    EMPTY = "empty"
    NONEMPTY_WITNESSED = "nonempty_witnessed"
    UNDECIDED = "undecided"


@dataclass(frozen=True)
class PurePower:
    """Leading term x_variable^exponent of basis generator `generator`."""

    variable: int
    exponent: int
    generator: int

    def monomial(self, nvars: int) -> Monomial:
        exps = [0] * nvars
        exps[self.variable] = self.exponent
        return tuple(exps)

    def format(self, nvars: int) -> str:
        return format_monomial(self.monomial(nvars)) or "1"


@dataclass(frozen=True)
class EmptinessResult:
    status: Emptiness
    pure_powers: tuple[PurePower, ...] = ()
    witness: ProjectivePoint | None = None
    searched_degrees: tuple[int, ...] = field(default=())


def pure_power_witnesses(B: GroebnerBasis) -> dict[int, PurePower]:
    """For each variable, the smallest pure power among the leading terms (if any)."""
    found: dict[int, PurePower] = {}
    for idx, lm in enumerate(B.leading_terms()):
        support = [i for i, e in enumerate(lm) if e]
        if not support:
            for var in range(B.nvars):
                found.setdefault(var, PurePower(var, 0, idx))
            continue
        if len(support) == 1:
            var = support[0]
            if var not in found or lm[var] < found[var].exponent:
                found[var] = PurePower(var, lm[var], idx)
    return found


def find_common_zero(
    polys: Iterable[MultiPoly],
    field_: ScalarField,
    nvars: int,
    extension_degrees: Sequence[int] = (1, 2, 3),
    search_limit: int = DEFAULT_SEARCH_LIMIT,
    logger: LoggerProtocol | None = None,
) -> tuple[ProjectivePoint | None, tuple[int, ...]]:
    """Exhaustive search for a common projective zero over 𝔽_{p^e} for the given e.

    Returns the first zero found (or None) and the extension degrees fully searched.
    """
    logger = resolve_logger(logger)
    polys = [g for g in polys if not g.is_zero()]
    searched: list[int] = []
    budget = search_limit
    for e in extension_degrees:
        target = field_.lift(e)
        total = count_projective_points(target.order, nvars)
        if total > budget:
            logger.debug(f"point search: P^{nvars - 1}({target.spec.label}) has {total} points, over budget")
            break
        budget -= total
        for batch in projective_point_batches(target, nvars):
            mask = np.ones(batch.shape[0], dtype=bool)
            for g in polys:
                mask &= np.asarray(g.evaluate_many(batch, target).view(np.ndarray)) == 0
                if not mask.any():
                    break
            if mask.any():
                row = int(np.argmax(mask))
                coords = tuple(int(v) for v in np.asarray(batch[row].view(np.ndarray)))
                return ProjectivePoint(target, coords), tuple(searched)
        searched.append(e)
    return None, tuple(searched)


def projective_emptiness(
    B: GroebnerBasis,
    extension_degrees: Sequence[int] = (1, 2, 3),
    search_limit: int = DEFAULT_SEARCH_LIMIT,
    logger: LoggerProtocol | None = None,
) -> EmptinessResult:
    """Decide whether the homogeneous ideal of B has no zero in projective space over 𝔽̄_p.

    Returns `empty` when every variable has a pure power among the leading terms,
    `nonempty_witnessed` with a point when exhaustive search finds a common zero,
    `undecided` otherwise.

    Raises:
        NonHomogeneousInput: If a generator is not homogeneous
    """
    for g in B.generators:
        if not g.is_homogeneous():
            raise NonHomogeneousInput(f"generator {g.format()} is not homogeneous")
    powers = pure_power_witnesses(B)
    if len(powers) == B.nvars:
        return EmptinessResult(
            status=Emptiness.EMPTY,
            pure_powers=tuple(powers[i] for i in range(B.nvars)),
        )
    witness, searched = find_common_zero(
        B.generators, B.field, B.nvars, extension_degrees, search_limit, logger=logger
    )
    if witness is not None:
        return EmptinessResult(status=Emptiness.NONEMPTY_WITNESSED, witness=witness, searched_degrees=searched)
    return EmptinessResult(status=Emptiness.UNDECIDED, searched_degrees=searched)


__all__ = [
    "DEFAULT_DEGREE_CAP",
    "DEFAULT_SEARCH_LIMIT",
    "MonomialOrder",
    "DEGREVLEX",
    "GroebnerBasis",
    "buchberger",
    "normal_form",
    "format_basis",
    "basis_digest",
    "Emptiness",
    "PurePower",
    "EmptinessResult",
    "pure_power_witnesses",
    "find_common_zero",
    "projective_emptiness",
]
