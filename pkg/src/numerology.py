"""
Closed-form invariants of rank-2 instanton bundles on P^3 and the constant-rank skew matrices
they produce.

A matrix of size r + 2 and constant rank r comes from a bundle E with c1 = 0 and charge
k = c2 = r(r+4)/48. Euler characteristics are computed twice: from closed forms, and from the
Chern character times the Todd class of P^3 (in hyperplane-class units, ∫H^3 = 1).
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple

import sympy
from pydantic import BaseModel

from errors import DisallowedRank, OutOfRange

Cohomology = Tuple[int, int, int, int]

_H = sympy.Symbol("H")
_ROOT = sympy.Symbol("a")


# ============================================================================
# Ranks and charges
# ============================================================================


def westwick_bounds(r: int, n: int) -> tuple[int, int]:
    """Lower and upper bound for the largest dimension of a space of n×n matrices of constant rank r."""
    if not 2 <= r <= n:
        raise OutOfRange(f"need 2 <= r <= n, got r={r}, n={n}")
    return n - r + 1, 2 * (n - r) + 1


def symmetric_space_bound(r: int, n: int) -> int:
    """Largest dimension of a space of n×n symmetric matrices of constant even rank r."""
    if not 2 <= r <= n:
        raise OutOfRange(f"need 2 <= r <= n, got r={r}, n={n}")
    return n - r + 1


def is_allowed_rank(r: int) -> bool:
    return r >= 8 and r % 12 in (0, 8)


def allowed_ranks(max_rank: int) -> list[int]:
    """Ranks r <= max_rank for which r(r+4)/48 is a positive integer: 8, 12, 20, 24, 32, ..."""
    return [r for r in range(8, max_rank + 1) if is_allowed_rank(r)]


def _require_allowed(r: int) -> None:
    if not is_allowed_rank(r):
        raise DisallowedRank(f"r = {r} is not of the form 12s or 12s - 4 with r >= 8")


def charge(r: int) -> int:
    """k = r(r+4)/48."""
    _require_allowed(r)
    return r * (r + 4) // 48


# ============================================================================
# Riemann–Roch
# ============================================================================


@dataclass(frozen=True)
class ChernData:
    """Rank and Chern classes c1, c2, c3 of a bundle on P^3, in hyperplane-class units."""

    rank: int
    c1: int = 0
    c2: int = 0
    c3: int = 0

    def __post_init__(self) -> None:
        if self.rank < 1:
            raise OutOfRange(f"rank must be positive, got {self.rank}")

    @classmethod
    def instanton(cls, k: int) -> "ChernData":
        return cls(rank=2, c1=0, c2=k, c3=0)


@functools.lru_cache(maxsize=None)
def todd_class() -> tuple[sympy.Rational, ...]:
    """Coefficients of td(P^3) = (H / (1 - e^{-H}))^4 up to H^3: (1, 2, 11/6, 1)."""
    series = sympy.series((_H / (1 - sympy.exp(-_H))) ** 4, _H, 0, 4).removeO()
    return tuple(sympy.Rational(series.coeff(_H, i)) for i in range(4))


def chern_character(data: ChernData) -> tuple[sympy.Rational, ...]:
    """ch = rank + c1 H + (c1^2 - 2c2)/2 H^2 + (c1^3 - 3c1c2 + 3c3)/6 H^3."""
    c1, c2, c3 = (sympy.Integer(v) for v in (data.c1, data.c2, data.c3))
    return (
        sympy.Integer(data.rank),
        c1,
        (c1**2 - 2 * c2) / 2,
        (c1**3 - 3 * c1 * c2 + 3 * c3) / 6,
    )


def _twist_character(t: int) -> tuple[sympy.Rational, ...]:
    t = sympy.Integer(t)
    return (sympy.Integer(1), t, t**2 / 2, t**3 / 6)


def _top_coefficient(*factors: Sequence[sympy.Rational]) -> sympy.Rational:
    product = [sympy.Integer(1), 0, 0, 0]
    for factor in factors:
        product = [sum(product[i] * factor[j - i] for i in range(j + 1)) for j in range(4)]
    return product[3]


def _as_integer(value: sympy.Expr, what: str) -> int:
    value = sympy.nsimplify(value)
    if not value.is_integer:
        raise ArithmeticError(f"{what} evaluated to the non-integer {value}")
    return int(value)


def chi(data: ChernData, t: int = 0) -> int:
    """χ(E(t)) = ∫ ch(E) e^{tH} td(P^3)."""
    return _as_integer(_top_coefficient(chern_character(data), _twist_character(t), todd_class()), "χ")


def chi_rank2_general(c1: int, c2: int) -> int:
    """χ(E) for a rank-2 bundle with c3 = 0: c1^3/6 - c1c2/2 + c1^2 - 2c2 + 11c1/6 + 2."""
    c1, c2 = sympy.Integer(c1), sympy.Integer(c2)
    value = c1**3 / 6 - c1 * c2 / 2 + c1**2 - 2 * c2 + sympy.Rational(11, 6) * c1 + 2
    return _as_integer(value, "rank-2 χ")


def chi_line_bundle(m: int) -> int:
    """χ(O(m)) = (m+1)(m+2)(m+3)/6."""
    return (m + 1) * (m + 2) * (m + 3) // 6


def chi_rank2(k: int, t: int) -> int:
    """χ(E(t)) for rank 2, c1 = 0, c2 = k: (t+1)(t+2)(t+3)/3 - k(t+2)."""
    return (t + 1) * (t + 2) * (t + 3) // 3 - k * (t + 2)


def _chi_from_roots(k: int, t: int, multiples: Sequence[int]) -> int:
    """Σ χ(O(t + m·a)) over Chern roots m·a, with a^2 = -k eliminated."""
    expr = sympy.expand(sum((t + m * _ROOT + 1) * (t + m * _ROOT + 2) * (t + m * _ROOT + 3) for m in multiples) / 6)
    poly = sympy.Poly(expr, _ROOT)
    total = sympy.Integer(0)
    for (power,), coeff in poly.terms():
        if power % 2:
            raise ArithmeticError("odd power of a Chern root survived symmetrization")
        total += coeff * sympy.Integer(-k) ** (power // 2)
    return _as_integer(total, "χ from Chern roots")


def chi_sym2(k: int, t: int) -> int:
    """χ(S²E(t)); Chern roots 2a, 0, -2a. Equals (t+1)(t+2)(t+3)/2 - 4k(t+2)."""
    return _chi_from_roots(k, t, (2, 0, -2))


def chi_tensor2(k: int, t: int) -> int:
    """χ(E⊗E(t)); Chern roots 2a, 0, 0, -2a."""
    return _chi_from_roots(k, t, (2, 0, 0, -2))


def cone_middle_rank(r: int) -> int:
    """χ(E(r/4)) - χ(E(-r/4-1)); equals r + 2."""
    k = charge(r)
    return chi_rank2(k, r // 4) - chi_rank2(k, -r // 4 - 1)


# ============================================================================
# Natural cohomology
# ============================================================================


def natural_cohomology(k: int, t: int) -> Cohomology:
    """(h0, h1, h2, h3) of E(t) for an instanton of charge k with natural cohomology.

    For t >= -2 only h0 or h1 can be nonzero; below -2, Serre duality gives h2(t) = h1(-4-t)
    and h3(t) = h0(-4-t).
    """
    if k < 1:
        raise OutOfRange(f"charge must be positive, got {k}")
    if t >= -2:
        value = chi_rank2(k, t)
        return max(value, 0), max(-value, 0), 0, 0
    h0, h1, _, _ = natural_cohomology(k, -4 - t)
    return 0, 0, h1, h0


def h(i: int, k: int, t: int) -> int:
    """h^i(E(t)) under natural cohomology; 0 outside 0..3."""
    return natural_cohomology(k, t)[i] if 0 <= i <= 3 else 0


@dataclass(frozen=True)
class CohomologyTable:
    k: int
    rows: Dict[int, Cohomology]

    def chi(self, t: int) -> int:
        h0, h1, h2, h3 = self.rows[t]
        return h0 - h1 + h2 - h3


def cohomology_table(k: int, t_min: int, t_max: int) -> CohomologyTable:
    return CohomologyTable(k=k, rows={t: natural_cohomology(k, t) for t in range(t_min, t_max + 1)})


def h2_hilbert_function(k: int) -> dict[int, int]:
    """Nonzero values t -> h2(E(t)); for k = 4 these are 4, 6, 4 at t = -5, -4, -3."""
    values: dict[int, int] = {}
    s = -1
    while chi_rank2(k, s) < 0:
        values[-4 - s] = -chi_rank2(k, s)
        s += 1
    return dict(sorted(values.items()))


def first_section_twist(r: int) -> tuple[int, int]:
    """The twist r/4 - 1 of the first section of E and h0 there (equal to k)."""
    k = charge(r)
    t = r // 4 - 1
    return t, h(0, k, t)


def check_diamond_dims(r: int) -> bool:
    """h0(E(r/4-1)) = h2(E(-r/4-2)) and h0(E(r/4)) >= h2(E(-r/4-1))."""
    k = charge(r)
    q = r // 4
    return h(0, k, q - 1) == h(2, k, -q - 2) and h(0, k, q) >= h(2, k, -q - 1)


# ============================================================================
# Resolutions and monads
# ============================================================================


@dataclass(frozen=True)
class ResolutionShape:
    """0 -> O(-r/4-2)^k -> O(-r/4)^b ⊕ O(-r/4-1)^c -> O(-r/4+1)^k ⊕ O(-r/4)^a -> E -> 0."""

    r: int
    k: int
    a: int
    b: int
    c: int

    def terms(self) -> list[list[tuple[int, int]]]:
        """[F0, F1, F2] as lists of (twist, multiplicity)."""
        q = self.r // 4
        return [
            [(-q + 1, self.k), (-q, self.a)],
            [(-q, self.b), (-q - 1, self.c)],
            [(-q - 2, self.k)],
        ]

    def rank(self) -> int:
        f0, f1, f2 = ([m for _, m in term] for term in self.terms())
        return sum(f0) - sum(f1) + sum(f2)

    def chi(self, t: int) -> int:
        """Alternating sum of χ(F_i(t)); equals χ(E(t))."""
        total = 0
        for sign, term in zip((1, -1, 1), self.terms()):
            total += sign * sum(m * chi_line_bundle(twist + t) for twist, m in term)
        return total


def resolution_shape(r: int) -> ResolutionShape:
    k = charge(r)
    if r == 8:
        a, b, c = 4, 0, 6
    elif r == 12:
        a, b, c = 4, 0, 10
    elif r == 20:
        a, b, c = 2, 0, 20
    else:
        a, b, c = 0, k - r // 2 - 2, k + r // 2
    return ResolutionShape(r=r, k=k, a=a, b=b, c=c)


@dataclass(frozen=True)
class InstantonMonad:
    """O(-1)^k -> O^{2k+2} -> O(1)^k."""

    k: int

    @property
    def ranks(self) -> tuple[int, int, int]:
        return self.k, 2 * self.k + 2, self.k

    @property
    def twists(self) -> tuple[int, int, int]:
        return -1, 0, 1

    def bundle_rank(self) -> int:
        left, middle, right = self.ranks
        return middle - left - right

    def chi(self, t: int) -> int:
        left, middle, right = self.ranks
        return middle * chi_line_bundle(t) - left * chi_line_bundle(t - 1) - right * chi_line_bundle(t + 1)


def instanton_monad(k: int) -> InstantonMonad:
    if k < 0:
        raise OutOfRange(f"charge must be non-negative, got {k}")
    return InstantonMonad(k)


# ============================================================================
# Beilinson tables of the cone
# ============================================================================


@dataclass(frozen=True)
class BeilinsonTable:
    """Rows p = 0..3, columns j = 0..3."""

    grid: Tuple[Tuple[int, ...], ...]

    def entry(self, p: int, j: int) -> int:
        return self.grid[p][j]

    def as_lists(self) -> list[list[int]]:
        return [list(row) for row in self.grid]


def expected_cone_table(r: int) -> BeilinsonTable:
    """All zero except (p=0, j=1) and (p=0, j=2), both r + 2."""
    _require_allowed(r)
    grid = [[0] * 4 for _ in range(4)]
    grid[0][1] = grid[0][2] = r + 2
    return BeilinsonTable(tuple(tuple(row) for row in grid))


def cone_hypercohomology(r: int, t: int, i: int) -> int:
    """h^i of the cone of E(-r/4-2)[1] -> E(r/4-1), twisted by t.

    Computed from natural cohomology, with every connecting map of maximal rank.
    """
    k = charge(r)
    q = r // 4
    e1, e2 = q - 1 + t, -q - 2 + t
    return max(0, h(i + 2, k, e2) - h(i, k, e1)) + max(0, h(i + 1, k, e1) - h(i + 3, k, e2))


def computed_cone_table(r: int) -> BeilinsonTable:
    """Beilinson table of the cone: column j holds h^p(C ⊗ Ω^j(j)) read off twists of C."""
    grid = []
    for p in range(4):
        grid.append(
            (
                cone_hypercohomology(r, 0, p),
                cone_hypercohomology(r, 1, p - 1),
                cone_hypercohomology(r, -2, p + 1),
                cone_hypercohomology(r, -1, p),
            )
        )
    return BeilinsonTable(tuple(grid))


# ============================================================================
# Report
# ============================================================================


class NumerologyReport(BaseModel):
    r: int
    k: int
    size: int
    westwick_bounds: Tuple[int, int]
    symmetric_space_bound: int
    cone_middle_rank: int
    diamond_dims: bool
    first_section_twist: int
    first_section_h0: int
    resolution: Dict[str, int]
    resolution_terms: List[List[Tuple[int, int]]]
    sym2_twist: int
    chi_sym2: int
    h2_hilbert_function: Dict[int, int]
    cohomology: Dict[int, Cohomology]
    expected_cone_table: List[List[int]]
    computed_cone_table: List[List[int]]


def numerology_report(r: int) -> NumerologyReport:
    """Every invariant attached to constant rank r in size r + 2."""
    k = charge(r)
    n = r + 2
    shape = resolution_shape(r)
    twist, h0 = first_section_twist(r)
    q = r // 4
    return NumerologyReport(
        r=r,
        k=k,
        size=n,
        westwick_bounds=westwick_bounds(r, n),
        symmetric_space_bound=symmetric_space_bound(r, n),
        cone_middle_rank=cone_middle_rank(r),
        diamond_dims=check_diamond_dims(r),
        first_section_twist=twist,
        first_section_h0=h0,
        resolution={"a": shape.a, "b": shape.b, "c": shape.c},
        resolution_terms=shape.terms(),
        sym2_twist=-r // 2 - 1,
        chi_sym2=chi_sym2(k, -r // 2 - 1),
        h2_hilbert_function=h2_hilbert_function(k),
        cohomology=cohomology_table(k, -q - 3, q + 1).rows,
        expected_cone_table=expected_cone_table(r).as_lists(),
        computed_cone_table=computed_cone_table(r).as_lists(),
    )


__all__ = [
    "westwick_bounds",
    "symmetric_space_bound",
    "is_allowed_rank",
    "allowed_ranks",
    "charge",
    "ChernData",
    "todd_class",
    "chern_character",
    "chi",
    "chi_rank2_general",
    "chi_line_bundle",
    "chi_rank2",
    "chi_sym2",
    "chi_tensor2",
    "cone_middle_rank",
    "natural_cohomology",
    "h",
    "CohomologyTable",
    "cohomology_table",
    "h2_hilbert_function",
    "first_section_twist",
    "check_diamond_dims",
    "ResolutionShape",
    "resolution_shape",
    "InstantonMonad",
    "instanton_monad",
    "BeilinsonTable",
    "expected_cone_table",
    "cone_hypercohomology",
    "computed_cone_table",
    "NumerologyReport",
    "numerology_report",
]
