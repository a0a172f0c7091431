"""
Sparse multivariate polynomials and matrices of linear forms.

A `LinearMatrix` stores d dense n×n coefficient matrices A_0..A_{d-1} so that
A(x) = x_0 A_0 + ... + x_{d-1} A_{d-1}. Evaluation and the SL(n) × SL(d) actions are matrix
algebra on the stacked (d, n, n) array.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Any, Iterable, Iterator, Mapping, Sequence

import numpy as np

import corpus_data
import linalg
from errors import (
    CorpusCorrupt,
    DenominatorCollision,
    DimensionMismatch,
    FieldMismatch,
    SingularTransform,
    UnsupportedField,
)
from scalars import FieldKind, FieldSpec, ScalarField, common_field, field_for

Monomial = tuple[int, ...]


# ============================================================================
# Monomials
# ============================================================================


def degrevlex_key(exps: Monomial) -> tuple:
    """Sort key for degrevlex with x0 > x1 > ... (larger key = larger monomial)."""
    return (sum(exps), tuple(-e for e in reversed(exps)))


def divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def monomial_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def format_monomial(exps: Monomial, names: Sequence[str] | None = None) -> str:
    factors = []
    for i, e in enumerate(exps):
        if e == 0:
            continue
        name = names[i] if names else f"x{i}"
        factors.append(name if e == 1 else f"{name}^{e}")
    return "*".join(factors)


# ============================================================================
# MultiPoly
# ============================================================================


class MultiPoly:
    """Sparse polynomial: exponent vector -> nonzero raw coefficient."""

    __slots__ = ("field", "nvars", "terms")

    def __init__(self, field: ScalarField, nvars: int, terms: Mapping[Monomial, Any] | None = None):
        if nvars < 1:
            raise DimensionMismatch("a polynomial needs at least one variable")
        self.field = field
        self.nvars = nvars
        self.terms: dict[Monomial, Any] = {}
        for exps, coeff in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != nvars or any(e < 0 for e in exps):
                raise DimensionMismatch(f"exponent vector {exps} does not fit {nvars} variables")
            if not field.is_zero(coeff):
                self.terms[exps] = coeff

    @property
    def spec(self) -> FieldSpec:
        return self.field.spec

    @classmethod
    def zero(cls, field: ScalarField, nvars: int) -> "MultiPoly":
        return cls(field, nvars)

    @classmethod
    def constant(cls, field: ScalarField, nvars: int, value: Any) -> "MultiPoly":
        return cls(field, nvars, {(0,) * nvars: value})

    @classmethod
    def variable(cls, field: ScalarField, nvars: int, index: int) -> "MultiPoly":
        exps = [0] * nvars
        exps[index] = 1
        return cls(field, nvars, {tuple(exps): field.one})

    @classmethod
    def linear_form(cls, field: ScalarField, coeffs: Sequence[Any]) -> "MultiPoly":
        nvars = len(coeffs)
        terms = {}
        for i, c in enumerate(coeffs):
            exps = [0] * nvars
            exps[i] = 1
            terms[tuple(exps)] = c
        return cls(field, nvars, terms)

    def is_zero(self) -> bool:
        return not self.terms

    def total_degree(self) -> int:
        """Largest total degree of a term; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def _check(self, other: "MultiPoly") -> None:
        if other.nvars != self.nvars:
            raise DimensionMismatch(f"{self.nvars} vs {other.nvars} variables")
        if other.field.spec != self.field.spec:
            raise FieldMismatch(f"{self.spec.label} vs {other.spec.label}")

    def _coerce(self, other: Any) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            value = self.field.from_int(other) if isinstance(other, int) else self.field.raw(other)
            return MultiPoly.constant(self.field, self.nvars, value)
        raise TypeError(f"cannot combine MultiPoly with {type(other).__name__}")

    def __add__(self, other: Any) -> "MultiPoly":
        other = self._coerce(other)
        terms = dict(self.terms)
        for exps, coeff in other.terms.items():
            terms[exps] = self.field.add(terms[exps], coeff) if exps in terms else coeff
        return MultiPoly(self.field, self.nvars, terms)

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        return MultiPoly(self.field, self.nvars, {e: self.field.neg(c) for e, c in self.terms.items()})

    def __sub__(self, other: Any) -> "MultiPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other: Any) -> "MultiPoly":
        return self._coerce(other) - self

    def __mul__(self, other: Any) -> "MultiPoly":
        other = self._coerce(other)
        mul, add = self.field.mul, self.field.add
        terms: dict[Monomial, Any] = {}
        for ea, ca in self.terms.items():
            for eb, cb in other.terms.items():
                exps = tuple(x + y for x, y in zip(ea, eb))
                prod = mul(ca, cb)
                terms[exps] = add(terms[exps], prod) if exps in terms else prod
        return MultiPoly(self.field, self.nvars, terms)

    __rmul__ = __mul__

    def scale(self, c: Any) -> "MultiPoly":
        return MultiPoly(self.field, self.nvars, {e: self.field.mul(v, c) for e, v in self.terms.items()})

    def __eq__(self, other: object) -> bool:
        if isinstance(other, MultiPoly):
            return self.spec == other.spec and self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, int) and other == 0:
            return self.is_zero()
        return NotImplemented

    __hash__ = None  # type: ignore[assignment]

    def sorted_terms(self) -> list[tuple[Monomial, Any]]:
        """Terms from the largest monomial down (degrevlex)."""
        return sorted(self.terms.items(), key=lambda item: degrevlex_key(item[0]), reverse=True)

    def evaluate(self, values: Sequence[Any], target: ScalarField | None = None) -> Any:
        """Value at a point whose raw coordinates live in `target` (default: this field)."""
        target = target or self.field
        if len(values) != self.nvars:
            raise DimensionMismatch(f"expected {self.nvars} coordinates, got {len(values)}")
        if not target.contains(self.field):
            raise FieldMismatch(f"cannot evaluate {self.spec.label} polynomial over {target.spec.label}")
        total = target.zero
        for exps, coeff in self.terms.items():
            term = coeff
            for v, e in zip(values, exps):
                if e:
                    term = target.mul(term, target.pow(v, e))
            total = target.add(total, term)
        return total

    def evaluate_many(self, points: np.ndarray, target: ScalarField) -> np.ndarray:
        """Vectorized evaluation at the rows of a finite-field array of shape (N, nvars)."""
        if not target.is_finite or not target.contains(self.field):
            raise FieldMismatch(f"cannot batch-evaluate over {target.spec.label}")
        result = target.zeros(points.shape[0])
        for exps, coeff in self.terms.items():
            term = target.scalar(coeff) * target.gf.Ones(points.shape[0])
            for i, e in enumerate(exps):
                if e:
                    term = term * points[:, i] ** e
            result = result + term
        return result

    def reduce_mod(self, p: int) -> "MultiPoly":
        """Image over GF(p) of a rational polynomial.

        Raises:
            DenominatorCollision: If a coefficient's denominator is divisible by p
        """
        if self.field.spec.kind is not FieldKind.RATIONAL:
            raise FieldMismatch(f"reduce_mod expects a rational polynomial, got {self.spec.label}")
        target = field_for(FieldSpec.prime(p))
        terms = {}
        for exps, coeff in self.terms.items():
            coeff = Fraction(coeff)
            if coeff.denominator % p == 0:
                raise DenominatorCollision(f"coefficient {coeff} has denominator divisible by {p}")
            terms[exps] = target.div(target.from_int(coeff.numerator), target.from_int(coeff.denominator))
        return MultiPoly(target, self.nvars, terms)

    def format(self, names: Sequence[str] | None = None) -> str:
        """Plain-text form such as ``3*x0^2*x1 - x2*x3``; ``0`` for the zero polynomial."""
        if not self.terms:
            return "0"
        pieces = []
        for exps, coeff in self.sorted_terms():
            text = self.field.format(coeff)
            negative = text.startswith("-")
            if negative:
                text = text[1:]
            mono = format_monomial(exps, names)
            if mono:
                body = mono if text == "1" else f"{text}*{mono}"
            else:
                body = text
            pieces.append(("-" if negative else "+", body))
        first_sign, first_body = pieces[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in pieces[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self) -> str:
        return f"MultiPoly({self.format()} over {self.spec.label})"


# ============================================================================
# Projective points
# ============================================================================


@dataclass(frozen=True, eq=False)
class ProjectivePoint:
    """Point of P^{d-1} given by raw coordinates over `field`."""

    field: ScalarField
    coords: tuple

    def __post_init__(self) -> None:
        coords = tuple(self.coords)
        object.__setattr__(self, "coords", coords)
        if not coords:
            raise DimensionMismatch("a point needs at least one coordinate")
        if all(self.field.is_zero(c) for c in coords):
            raise ValueError("the zero vector is not a projective point")

    @classmethod
    def of(cls, field: ScalarField, values: Iterable[int | Fraction]) -> "ProjectivePoint":
        """Point from integers (n·1) or fractions."""
        coords = []
        for v in values:
            if isinstance(v, Fraction) and field.spec.kind is not FieldKind.RATIONAL:
                coords.append(field.div(field.from_int(v.numerator), field.from_int(v.denominator)))
            elif isinstance(v, Fraction):
                coords.append(v)
            else:
                coords.append(field.from_int(v))
        return cls(field, tuple(coords))

    @property
    def d(self) -> int:
        return len(self.coords)

    def canonical(self) -> "ProjectivePoint":
        """Representative whose first nonzero coordinate is 1."""
        lead = next(c for c in self.coords if not self.field.is_zero(c))
        inv = self.field.inv(lead)
        return ProjectivePoint(self.field, tuple(self.field.mul(c, inv) for c in self.coords))

    def array(self) -> np.ndarray:
        return self.field.array(list(self.coords))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ProjectivePoint):
            return NotImplemented
        return self.field.spec == other.field.spec and self.canonical().coords == other.canonical().coords

    def __hash__(self) -> int:
        return hash((self.field.spec, self.canonical().coords))

    def as_ints(self) -> list[int] | list[str]:
        """Coordinates for reports: symmetric integers when possible, formatted text otherwise."""
        try:
            return [self.field.to_file_int(c) for c in self.coords]
        except UnsupportedField:
            return [self.field.format(c) for c in self.coords]

    def __repr__(self) -> str:
        return f"({', '.join(self.field.format(c) for c in self.coords)}) over {self.field.spec.label}"


def count_projective_points(q: int, d: int) -> int:
    return (q**d - 1) // (q - 1)


def projective_points(field: ScalarField, d: int) -> Iterator[ProjectivePoint]:
    """All canonical points of P^{d-1}(F_q), leading coordinate position ascending."""
    elements = list(field.elements())
    for lead in range(d):
        for tail in itertools.product(elements, repeat=d - lead - 1):
            yield ProjectivePoint(field, (field.zero,) * lead + (field.one,) + tail)


def projective_point_batches(field: ScalarField, d: int, batch: int = 4096) -> Iterator[np.ndarray]:
    """The points of `projective_points` as (N, d) field arrays, in the same order."""
    q = field.order
    for lead in range(d):
        free = d - lead - 1
        total = q**free
        for start in range(0, total, batch):
            idx = np.arange(start, min(start + batch, total), dtype=np.int64)
            rows = np.zeros((idx.size, d), dtype=np.int64)
            rows[:, lead] = 1
            rest = idx.copy()
            for col in range(d - 1, lead, -1):
                rest, rows[:, col] = np.divmod(rest, q)
            yield field.array(rows)


def random_point(field: ScalarField, d: int, rng: np.random.Generator, bound: int | None = None) -> ProjectivePoint:
    """Random nonzero point; rational coordinates are integers in [-bound, bound]."""
    while True:
        if field.spec.kind is FieldKind.RATIONAL:
            coords = tuple(field.random(rng, bound) for _ in range(d))
        else:
            coords = tuple(field.random(rng) for _ in range(d))
        if not all(field.is_zero(c) for c in coords):
            return ProjectivePoint(field, coords)


# ============================================================================
# LinearMatrix
# ============================================================================


@dataclass(frozen=True, eq=False)
class LinearMatrix:
    """n×n matrix of linear forms in d variables, stored as d coefficient matrices."""

    field: ScalarField
    coeffs: tuple[np.ndarray, ...]
    name: str | None = None
    provenance: str | None = None
    _stacked: np.ndarray = dc_field(init=False, repr=False)
    _lifted: dict = dc_field(init=False, repr=False, default_factory=dict)

    def __post_init__(self) -> None:
        coeffs = tuple(self.coeffs)
        if not coeffs:
            raise DimensionMismatch("a linear matrix needs at least one variable")
        n = coeffs[0].shape[0] if coeffs[0].ndim == 2 else -1
        for i, Ai in enumerate(coeffs):
            if Ai.ndim != 2 or Ai.shape != (n, n):
                raise DimensionMismatch(f"coefficient matrix {i} has shape {Ai.shape}, expected ({n}, {n})")
        if self.field.is_finite:
            stacked = self.field.array(np.stack([np.asarray(Ai.view(np.ndarray), dtype=np.int64) for Ai in coeffs]))
        else:
            stacked = self.field.array(np.stack(coeffs))
        stacked.flags.writeable = False
        object.__setattr__(self, "coeffs", tuple(stacked[i] for i in range(len(coeffs))))
        object.__setattr__(self, "_stacked", stacked)

    @classmethod
    def from_ints(
        cls,
        spec: FieldSpec,
        coeffs: Sequence[Any],
        name: str | None = None,
        provenance: str | None = None,
    ) -> "LinearMatrix":
        """Build from d nested integer matrices (integers map to n·1)."""
        field_ = field_for(spec)
        return cls(field_, tuple(field_.from_ints(c) for c in coeffs), name=name, provenance=provenance)

    @classmethod
    def zero(cls, field_: ScalarField, n: int, d: int) -> "LinearMatrix":
        return cls(field_, tuple(field_.zeros((n, n)) for _ in range(d)))

    @property
    def spec(self) -> FieldSpec:
        return self.field.spec

    @property
    def n(self) -> int:
        return self.coeffs[0].shape[0]

    @property
    def d(self) -> int:
        return len(self.coeffs)

    def stacked(self, target: ScalarField | None = None) -> np.ndarray:
        """The (d, n, n) coefficient array, embedded into `target` if given."""
        if target is None or target.spec == self.field.spec:
            return self._stacked
        key = target.spec
        if key not in self._lifted:
            self._lifted[key] = target.embed(self._stacked, self.field)
        return self._lifted[key]

    def is_skew(self) -> bool:
        return all(linalg.arrays_equal(self.field, Ai.T, -Ai) for Ai in self.coeffs)

    def entry(self, i: int, j: int) -> MultiPoly:
        return MultiPoly.linear_form(self.field, [self.field.raw(Ai[i, j]) for Ai in self.coeffs])

    def entries(self) -> list[list[MultiPoly]]:
        return [[self.entry(i, j) for j in range(self.n)] for i in range(self.n)]

    def transpose(self) -> "LinearMatrix":
        return LinearMatrix(self.field, tuple(Ai.T for Ai in self.coeffs), name=self.name)

    def left_multiply(self, P: np.ndarray) -> "LinearMatrix":
        """The pencil P·A with P a scalar n×n matrix over the same field."""
        if P.shape != (self.n, self.n):
            raise DimensionMismatch(f"expected a {self.n}×{self.n} matrix, got {P.shape}")
        return LinearMatrix(self.field, tuple(P @ Ai for Ai in self.coeffs))

    def base_change(self, target: ScalarField) -> "LinearMatrix":
        stacked = self.stacked(target)
        return LinearMatrix(target, tuple(stacked[i] for i in range(self.d)), name=self.name)

    def reduce_mod(self, p: int) -> "LinearMatrix":
        """Image over GF(p).

        Raises:
            DenominatorCollision: If an entry's denominator is divisible by p
            FieldMismatch: If the matrix lives over a field of another characteristic
        """
        if self.field.spec.kind is not FieldKind.RATIONAL:
            if self.field.characteristic == p and self.field.spec.kind is FieldKind.PRIME:
                return self
            raise FieldMismatch(f"cannot reduce a {self.spec.label} matrix mod {p}")
        target = field_for(FieldSpec.prime(p))
        raw = []
        for Ai in self.coeffs:
            rows = []
            for row in Ai:
                out = []
                for x in row:
                    x = Fraction(x)
                    if x.denominator % p == 0:
                        raise DenominatorCollision(f"entry {x} has denominator divisible by {p}")
                    out.append(target.div(target.from_int(x.numerator), target.from_int(x.denominator)))
                rows.append(out)
            raw.append(target.array(rows))
        return LinearMatrix(target, tuple(raw), name=self.name, provenance=self.provenance)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LinearMatrix):
            return NotImplemented
        return (
            self.spec == other.spec
            and self.d == other.d
            and self.n == other.n
            and all(linalg.arrays_equal(self.field, a, b) for a, b in zip(self.coeffs, other.coeffs))
        )

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        label = f" {self.name}" if self.name else ""
        return f"<LinearMatrix{label} n={self.n} d={self.d} over {self.spec.label}>"


# ============================================================================
# Point-wise operations and group actions
# ============================================================================


def _point_field(A: LinearMatrix, x: ProjectivePoint) -> ScalarField:
    if x.d != A.d:
        raise DimensionMismatch(f"point has {x.d} coordinates, matrix has {A.d} variables")
    return common_field(A.field, x.field)


def evaluate(A: LinearMatrix, x: ProjectivePoint) -> np.ndarray:
    """The scalar matrix Σ x_i A_i over the field of the point (or of A if larger).

    Raises:
        DimensionMismatch: If x does not have d coordinates
        FieldMismatch: If x and A live over unrelated fields
    """
    target = _point_field(A, x)
    stacked = A.stacked(target)
    xs = target.embed(x.array(), x.field)
    flat = stacked.reshape(A.d, A.n * A.n)
    return (xs @ flat).reshape(A.n, A.n)


def rank_at(A: LinearMatrix, x: ProjectivePoint) -> int:
    """Rank of A(x); even whenever A is skew."""
    target = _point_field(A, x)
    return linalg.rank(target, evaluate(A, x))


def kernel_at(A: LinearMatrix, x: ProjectivePoint) -> list[np.ndarray]:
    """Basis of the null space of A(x); n - rank_at(A, x) vectors."""
    target = _point_field(A, x)
    return linalg.null_space(target, evaluate(A, x))


def congruence_action(A: LinearMatrix, G: np.ndarray) -> LinearMatrix:
    """The pencil with coefficients Gᵀ A_i G.

    Raises:
        SingularTransform: If G is not invertible
    """
    if G.shape != (A.n, A.n):
        raise DimensionMismatch(f"expected a {A.n}×{A.n} matrix, got {G.shape}")
    if not linalg.is_invertible(A.field, G):
        raise SingularTransform("congruence by a singular matrix")
    return LinearMatrix(A.field, tuple(G.T @ Ai @ G for Ai in A.coeffs), name=A.name)


def variable_action(A: LinearMatrix, H: np.ndarray) -> LinearMatrix:
    """The pencil x ↦ A(Hx), i.e. A'_j = Σ_i H_ij A_i.

    Raises:
        SingularTransform: If H is not invertible
    """
    if H.shape != (A.d, A.d):
        raise DimensionMismatch(f"expected a {A.d}×{A.d} matrix, got {H.shape}")
    if not linalg.is_invertible(A.field, H):
        raise SingularTransform("variable change by a singular matrix")
    flat = A.stacked().reshape(A.d, A.n * A.n)
    new = (H.T @ flat).reshape(A.d, A.n, A.n)
    return LinearMatrix(A.field, tuple(new[j] for j in range(A.d)), name=A.name)


def apply_to_point(H: np.ndarray, x: ProjectivePoint) -> ProjectivePoint:
    """The point Hx (H over the field of x)."""
    values = H @ x.array()
    return ProjectivePoint(x.field, tuple(x.field.raw_list(values)))


# ============================================================================
# Corpus
# ============================================================================

CORPUS_NAMES = ("westwick10", "appendix14")


def corpus_names() -> tuple[str, ...]:
    return CORPUS_NAMES


def _rows(text: str) -> list[list[str]]:
    return [line.split() for line in text.strip().splitlines() if line.strip()]


def _parse_linear_table(text: str, d: int) -> list[list[list[int]]]:
    """Entries 0 / x_i / -x_i into d integer coefficient matrices."""
    rows = _rows(text)
    n = len(rows)
    coeffs = [[[0] * n for _ in range(n)] for _ in range(d)]
    for i, row in enumerate(rows):
        if len(row) != n:
            raise CorpusCorrupt(f"row {i + 1} has {len(row)} entries, expected {n}")
        for j, token in enumerate(row):
            if token == "0":
                continue
            sign = -1 if token.startswith("-") else 1
            var = token.lstrip("+-")
            if not var.startswith("x") or not var[1:].isdigit() or int(var[1:]) >= d:
                raise CorpusCorrupt(f"unreadable entry {token!r} at ({i + 1}, {j + 1})")
            coeffs[int(var[1:])][i][j] = sign
    return coeffs


def _parse_int_table(text: str) -> list[list[int]]:
    rows = _rows(text)
    n = len(rows)
    if any(len(row) != n for row in rows):
        raise CorpusCorrupt("coefficient table is not square")
    try:
        return [[int(token) for token in row] for row in rows]
    except ValueError as exc:
        raise CorpusCorrupt(f"non-integer entry in coefficient table: {exc}") from exc


def corpus_load(name: str) -> LinearMatrix:
    """Load a bundled matrix: ``westwick10`` (over QQ) or ``appendix14`` (over GF(7)).

    Raises:
        CorpusCorrupt: If the embedded data fails its size or skewness checks
        KeyError: If the name is unknown
    """
    if name == "westwick10":
        A = LinearMatrix.from_ints(
            FieldSpec.rational(),
            _parse_linear_table(corpus_data.WESTWICK10, 4),
            name=name,
            provenance="Westwick-type 10x10 pencil of constant rank 8 in x0..x3",
        )
        expected_n = 10
    elif name == "appendix14":
        A = LinearMatrix.from_ints(
            FieldSpec.prime(corpus_data.APPENDIX14_PRIME),
            [_parse_int_table(text) for text in corpus_data.APPENDIX14],
            name=name,
            provenance="14x14 pencil of constant rank 12 over GF(7), x0*A0 + x1*A1 + x2*A2 + x3*A3",
        )
        expected_n = 14
    else:
        raise KeyError(f"unknown corpus matrix {name!r}; choose from {', '.join(CORPUS_NAMES)}")
    if A.n != expected_n or A.d != 4:
        raise CorpusCorrupt(f"{name}: expected {expected_n}×{expected_n} in 4 variables, got n={A.n} d={A.d}")
    if not A.is_skew():
        raise CorpusCorrupt(f"{name}: embedded matrix is not skew-symmetric")
    return A


__all__ = [
    "Monomial",
    "MultiPoly",
    "LinearMatrix",
    "ProjectivePoint",
    "degrevlex_key",
    "divides",
    "monomial_lcm",
    "format_monomial",
    "evaluate",
    "rank_at",
    "kernel_at",
    "congruence_action",
    "variable_action",
    "apply_to_point",
    "count_projective_points",
    "projective_points",
    "projective_point_batches",
    "random_point",
    "corpus_load",
    "corpus_names",
    "CORPUS_NAMES",
]
