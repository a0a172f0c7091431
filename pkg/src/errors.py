"""
Exceptions raised by skewrank.

Every error derives from `SkewRankError` so callers (and the CLI) can catch the whole
family at once. Errors describing bad input values also derive from `ValueError`.
"""

from __future__ import annotations


class SkewRankError(Exception):
    """Base class for all skewrank errors."""


class ZeroInversion(SkewRankError, ZeroDivisionError):
    """Inverse of zero requested."""


class DimensionMismatch(SkewRankError, ValueError):
    """Shapes or variable counts do not agree."""


class FieldMismatch(SkewRankError, ValueError):
    """Operands live over incompatible fields."""


class UnsupportedField(SkewRankError, ValueError):
    """The operation is not available over this field."""


class SingularTransform(SkewRankError, ValueError):
    """A group element passed to an action is not invertible."""


class CorpusCorrupt(SkewRankError):
    """Embedded corpus data fails its size or skewness checks."""


class NotSkew(SkewRankError, ValueError):
    """A matrix expected to be skew-symmetric is not."""


class OddSize(SkewRankError, ValueError):
    """Pfaffian of an odd-sized matrix requested."""


class NonHomogeneousInput(SkewRankError, ValueError):
    """A projective question was asked about non-homogeneous polynomials."""


class DegreeCapExceeded(SkewRankError):
    """Gröbner completion produced a pair above the configured degree cap."""

    def __init__(self, degree: int, cap: int):
        super().__init__(f"S-pair of degree {degree} exceeds degree cap {cap}")
        self.degree = degree
        self.cap = cap


class OddRankRequested(SkewRankError, ValueError):
    """Skew matrices only have even rank."""


class DenominatorCollision(SkewRankError, ValueError):
    """A rational coefficient has a denominator divisible by the chosen prime."""


class TooLarge(SkewRankError, ValueError):
    """An exhaustive enumeration would exceed its configured limit."""


class NoSkewifier(SkewRankError):
    """No invertible Δ makes ΔB skew-symmetric."""


class DegenerateLine(SkewRankError, ValueError):
    """Line basis vectors are linearly dependent."""


class NonConstantRankOnLine(SkewRankError, ValueError):
    """A restricted pencil drops rank somewhere on the line."""


class UnsupportedCorank(SkewRankError, ValueError):
    """Jumping order needs exactly two minimal indices."""


class OddIndexGap(SkewRankError, ValueError):
    """Minimal indices differ by an odd amount."""


class OutOfRange(SkewRankError, ValueError):
    """Numerical argument outside the allowed range."""


class DisallowedRank(SkewRankError, ValueError):
    """r(r+4) is not divisible by 48."""


__all__ = [
    "SkewRankError",
    "ZeroInversion",
    "DimensionMismatch",
    "FieldMismatch",
    "UnsupportedField",
    "SingularTransform",
    "CorpusCorrupt",
    "NotSkew",
    "OddSize",
    "NonHomogeneousInput",
    "DegreeCapExceeded",
    "OddRankRequested",
    "DenominatorCollision",
    "TooLarge",
    "NoSkewifier",
    "DegenerateLine",
    "NonConstantRankOnLine",
    "UnsupportedCorank",
    "OddIndexGap",
    "OutOfRange",
    "DisallowedRank",
]
