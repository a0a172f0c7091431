"""
Exact scalar fields: 𝔽_p (p odd), 𝔽_{p^e} and ℚ behind one contract.

Raw scalar values are plain Python objects: ``int`` residues for 𝔽_p, the galois integer
representation (base-p digits of the residue polynomial) for 𝔽_{p^e}, and ``Fraction`` for ℚ.
Matrices are numpy arrays: galois ``FieldArray`` instances over finite fields, ``object`` arrays
of ``Fraction`` over ℚ. The prime subfield of 𝔽_{p^e} has the same raw values as 𝔽_p, so
lifting a matrix is a relabelling of its integers.
"""

from __future__ import annotations

import functools
from abc import ABC, abstractmethod
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Any, Iterator

import galois
import numpy as np
from pydantic import BaseModel, ConfigDict, model_validator
from sympy import isprime

from errors import FieldMismatch, UnsupportedField, ZeroInversion
from functions import symmetric_residue

# Rational samples are integers in [-RATIONAL_SAMPLE_BOUND, RATIONAL_SAMPLE_BOUND].
RATIONAL_SAMPLE_BOUND = 10_000


def make_rng(seed: int | np.random.SeedSequence | None) -> np.random.Generator:
    """The seeded random source used throughout skewrank."""
    return np.random.default_rng(seed)


# ============================================================================
# Field specification
# ============================================================================


class FieldKind(str, Enum):
    PRIME = "prime"
    EXTENSION = "extension"
    RATIONAL = "rational"


@functools.lru_cache(maxsize=None)
def default_modulus(p: int, e: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible polynomial of degree e over 𝔽_p (descending coefficients)."""
    poly = galois.irreducible_poly(p, e, method="min")
    return tuple(int(c) for c in poly.coeffs)


class FieldSpec(BaseModel):
    """Serializable description of an exact field.

    `modulus` lists the coefficients of the defining polynomial from the leading one down,
    e.g. ``(1, 0, 1)`` for ``z^2 + 1``. It is filled in automatically for extension fields.
    """

    model_config = ConfigDict(frozen=True)

    kind: FieldKind
    p: int | None = None
    e: int | None = None
    modulus: tuple[int, ...] | None = None

    @model_validator(mode="before")
    @classmethod
    def _fill_modulus(cls, data: Any) -> Any:
        if isinstance(data, dict) and data.get("kind") in (FieldKind.EXTENSION, "extension"):
            if data.get("modulus") is None and data.get("p") and data.get("e"):
                p, e = int(data["p"]), int(data["e"])
                if p > 2 and isprime(p) and e >= 1:
                    data = {**data, "modulus": default_modulus(p, e)}
        return data

    @model_validator(mode="after")
    def _check(self) -> "FieldSpec":
        if self.kind is FieldKind.RATIONAL:
            if self.p is not None or self.e is not None or self.modulus is not None:
                raise ValueError("rational field takes no p, e or modulus")
            return self
        if self.p is None:
            raise ValueError(f"{self.kind.value} field needs p")
        if self.p == 2:
            raise ValueError("characteristic 2 is not supported")
        if not isprime(self.p):
            raise ValueError(f"p={self.p} is not prime")
        if self.kind is FieldKind.PRIME:
            if self.e not in (None, 1) or self.modulus is not None:
                raise ValueError("prime field takes no extension degree or modulus")
            return self
        if self.e is None or self.e < 1:
            raise ValueError("extension degree e must be >= 1")
        if self.modulus is None or len(self.modulus) != self.e + 1:
            raise ValueError(f"modulus must have degree e={self.e}")
        if self.modulus[0] != 1:
            raise ValueError("modulus must be monic")
        if any(not 0 <= c < self.p for c in self.modulus):
            raise ValueError(f"modulus coefficients must lie in [0, {self.p})")
        poly = galois.Poly(list(self.modulus), field=galois.GF(self.p))
        if not poly.is_irreducible():
            raise ValueError(f"modulus {poly} is reducible over GF({self.p})")
        return self

    @classmethod
    def prime(cls, p: int) -> "FieldSpec":
        return cls(kind=FieldKind.PRIME, p=p)

    @classmethod
    def extension(cls, p: int, e: int, modulus: tuple[int, ...] | None = None) -> "FieldSpec":
        return cls(kind=FieldKind.EXTENSION, p=p, e=e, modulus=modulus)

    @classmethod
    def rational(cls) -> "FieldSpec":
        return cls(kind=FieldKind.RATIONAL)

    @property
    def label(self) -> str:
        if self.kind is FieldKind.RATIONAL:
            return "QQ"
        if self.kind is FieldKind.PRIME:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.e})"


# ============================================================================
# Field implementations
# ============================================================================


class ScalarField(ABC):
    """Arithmetic on raw values plus construction of matrices over one field."""

    spec: FieldSpec
    zero: Any
    one: Any
    characteristic: int
    order: int | None

    @property
    def is_finite(self) -> bool:
        return self.order is not None

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.spec.label}>"

    # scalar arithmetic

    @abstractmethod
    def from_int(self, n: int) -> Any: ...

    @abstractmethod
    def add(self, a: Any, b: Any) -> Any: ...

    @abstractmethod
    def neg(self, a: Any) -> Any: ...

    @abstractmethod
    def mul(self, a: Any, b: Any) -> Any: ...

    @abstractmethod
    def inv(self, a: Any) -> Any: ...

    def sub(self, a: Any, b: Any) -> Any:
        return self.add(a, self.neg(b))

    def div(self, a: Any, b: Any) -> Any:
        return self.mul(a, self.inv(b))

    def pow(self, a: Any, k: int) -> Any:
        if k < 0:
            return self.pow(self.inv(a), -k)
        result = self.one
        base = a
        while k:
            if k & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            k >>= 1
        return result

    def is_zero(self, a: Any) -> bool:
        return a == self.zero

    @abstractmethod
    def random(self, rng: np.random.Generator) -> Any: ...

    @abstractmethod
    def format(self, a: Any) -> str: ...

    @abstractmethod
    def to_file_int(self, a: Any) -> int:
        """Integer written to matrix files for `a` (integers map to n·1 on load)."""

    # arrays

    @abstractmethod
    def array(self, raw: Any) -> np.ndarray:
        """Array from nested raw values."""

    @abstractmethod
    def from_ints(self, data: Any) -> np.ndarray:
        """Array from nested integers interpreted as n·1."""

    @abstractmethod
    def zeros(self, shape: int | tuple[int, ...]) -> np.ndarray: ...

    @abstractmethod
    def identity(self, n: int) -> np.ndarray: ...

    @abstractmethod
    def random_array(self, shape: int | tuple[int, ...], rng: np.random.Generator) -> np.ndarray: ...

    @abstractmethod
    def scalar(self, a: Any) -> Any:
        """`a` as a value that broadcasts against this field's arrays."""

    @abstractmethod
    def raw(self, x: Any) -> Any:
        """Raw value of an array element."""

    def raw_list(self, arr: np.ndarray) -> list:
        """Flat list of the raw values of `arr`."""
        if self.is_finite:
            return [int(v) for v in np.asarray(arr.view(np.ndarray)).ravel()]
        return [self.raw(x) for x in np.asarray(arr, dtype=object).ravel()]

    # subfields

    def contains(self, other: "ScalarField") -> bool:
        return other.spec == self.spec

    def embed(self, arr: np.ndarray, source: "ScalarField") -> np.ndarray:
        """View an array over `source` as an array over this field."""
        if source.spec == self.spec:
            return arr
        raise FieldMismatch(f"cannot embed {source.spec.label} into {self.spec.label}")

    def lift(self, e: int) -> "ScalarField":
        raise UnsupportedField(f"{self.spec.label} has no extension of degree {e}")

    def elements(self) -> Iterator[Any]:
        raise UnsupportedField(f"{self.spec.label} is infinite")


def _residues(data: Any, p: int) -> np.ndarray:
    """Reduce nested Python ints mod p before they meet a fixed-width dtype."""
    arr = np.asarray(data, dtype=object)
    if arr.size == 0:
        return arr.astype(np.int64)
    return np.vectorize(lambda v: int(v) % p, otypes=[np.int64])(arr)


class PrimeField(ScalarField):
    def __init__(self, spec: FieldSpec):
        self.spec = spec
        self.p = spec.p
        self.characteristic = self.p
        self.order = self.p
        self.zero = 0
        self.one = 1
        self.gf = galois.GF(self.p)

    def from_int(self, n: int) -> int:
        return int(n) % self.p

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def neg(self, a: int) -> int:
        return (-a) % self.p

    def mul(self, a: int, b: int) -> int:
        return (a * b) % self.p

    def inv(self, a: int) -> int:
        if a % self.p == 0:
            raise ZeroInversion(f"0 has no inverse in {self.spec.label}")
        return pow(a, -1, self.p)

    def random(self, rng: np.random.Generator) -> int:
        return int(rng.integers(0, self.p))

    def format(self, a: int) -> str:
        return str(symmetric_residue(a, self.p))

    def to_file_int(self, a: int) -> int:
        return symmetric_residue(a, self.p)

    def array(self, raw: Any) -> np.ndarray:
        return self.gf(np.asarray(raw, dtype=np.int64))

    def from_ints(self, data: Any) -> np.ndarray:
        return self.gf(_residues(data, self.p))

    def zeros(self, shape: int | tuple[int, ...]) -> np.ndarray:
        return self.gf.Zeros(shape)

    def identity(self, n: int) -> np.ndarray:
        return self.gf.Identity(n)

    def random_array(self, shape: int | tuple[int, ...], rng: np.random.Generator) -> np.ndarray:
        return self.gf.Random(shape, seed=rng)

    def scalar(self, a: int) -> Any:
        return self.gf(a)

    def raw(self, x: Any) -> int:
        return int(x)

    def lift(self, e: int) -> ScalarField:
        if e == 1:
            return self
        return field_for(FieldSpec.extension(self.p, e))

    def elements(self) -> Iterator[int]:
        return iter(range(self.p))


class ExtensionField(ScalarField):
    """𝔽_{p^e} with log/exp tables for scalar products and digit-wise addition."""

    def __init__(self, spec: FieldSpec):
        self.spec = spec
        self.p = spec.p
        self.e = spec.e
        self.characteristic = self.p
        self.order = self.p**self.e
        self.zero = 0
        self.one = 1
        self.prime_gf = galois.GF(self.p)
        if self.e == 1:
            self.gf = self.prime_gf
        else:
            poly = galois.Poly(list(spec.modulus), field=self.prime_gf)
            self.gf = galois.GF(self.order, irreducible_poly=poly)
        alpha = self.gf.primitive_element
        exps = np.array((alpha ** np.arange(self.order - 1)).view(np.ndarray), dtype=np.int64)
        self._exp = [int(v) for v in exps]
        self._log = [0] * self.order
        for i, v in enumerate(self._exp):
            self._log[v] = i
        self._digits = [self._to_digits(a) for a in range(self.order)]

    def _to_digits(self, a: int) -> tuple[int, ...]:
        digits = []
        for _ in range(self.e):
            a, d = divmod(a, self.p)
            digits.append(d)
        return tuple(digits)

    def _from_digits(self, digits: Any) -> int:
        value = 0
        for d in reversed(digits):
            value = value * self.p + d
        return value

    def from_int(self, n: int) -> int:
        return int(n) % self.p

    def add(self, a: int, b: int) -> int:
        da, db = self._digits[a], self._digits[b]
        return self._from_digits([(x + y) % self.p for x, y in zip(da, db)])

    def neg(self, a: int) -> int:
        return self._from_digits([(-x) % self.p for x in self._digits[a]])

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[(self._log[a] + self._log[b]) % (self.order - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroInversion(f"0 has no inverse in {self.spec.label}")
        return self._exp[(-self._log[a]) % (self.order - 1)]

    def random(self, rng: np.random.Generator) -> int:
        return int(rng.integers(0, self.order))

    def format(self, a: int) -> str:
        if a < self.p:
            return str(symmetric_residue(a, self.p))
        terms = []
        for power, coeff in reversed(list(enumerate(self._digits[a]))):
            if coeff == 0:
                continue
            c = symmetric_residue(coeff, self.p)
            sign = "-" if c < 0 else "+"
            c = abs(c)
            if power == 0:
                body = str(c)
            else:
                body = ("" if c == 1 else f"{c}*") + ("z" if power == 1 else f"z^{power}")
            terms.append((sign, body))
        text = "".join(f" {s} {b}" for s, b in terms).strip()
        text = text[2:] if text.startswith("+ ") else "-" + text[2:]
        return f"({text})"

    def to_file_int(self, a: int) -> int:
        if a >= self.p:
            raise UnsupportedField(f"{self.format(a)} is not in the prime subfield of {self.spec.label}")
        return symmetric_residue(a, self.p)

    def array(self, raw: Any) -> np.ndarray:
        return self.gf(np.asarray(raw, dtype=np.int64))

    def from_ints(self, data: Any) -> np.ndarray:
        return self.gf(_residues(data, self.p))

    def zeros(self, shape: int | tuple[int, ...]) -> np.ndarray:
        return self.gf.Zeros(shape)

    def identity(self, n: int) -> np.ndarray:
        return self.gf.Identity(n)

    def random_array(self, shape: int | tuple[int, ...], rng: np.random.Generator) -> np.ndarray:
        return self.gf.Random(shape, seed=rng)

    def scalar(self, a: int) -> Any:
        return self.gf(a)

    def raw(self, x: Any) -> int:
        return int(x)

    def contains(self, other: ScalarField) -> bool:
        if other.spec == self.spec:
            return True
        return other.spec.kind is FieldKind.PRIME and other.spec.p == self.p

    def embed(self, arr: np.ndarray, source: ScalarField) -> np.ndarray:
        if source.spec == self.spec:
            return arr
        if not self.contains(source):
            raise FieldMismatch(f"cannot embed {source.spec.label} into {self.spec.label}")
        return self.gf(np.array(arr.view(np.ndarray), dtype=np.int64))

    def lift(self, e: int) -> ScalarField:
        if e == self.e:
            return self
        if self.e == 1:
            return field_for(FieldSpec.extension(self.p, e))
        raise UnsupportedField(f"towers over {self.spec.label} are not supported")

    def elements(self) -> Iterator[int]:
        return iter(range(self.order))


class RationalField(ScalarField):
    def __init__(self, spec: FieldSpec):
        self.spec = spec
        self.characteristic = 0
        self.order = None
        self.zero = Fraction(0)
        self.one = Fraction(1)
        self.sample_bound = RATIONAL_SAMPLE_BOUND

    def from_int(self, n: int) -> Fraction:
        return Fraction(int(n))

    def add(self, a: Fraction, b: Fraction) -> Fraction:
        return a + b

    def neg(self, a: Fraction) -> Fraction:
        return -a

    def mul(self, a: Fraction, b: Fraction) -> Fraction:
        return a * b

    def inv(self, a: Fraction) -> Fraction:
        if a == 0:
            raise ZeroInversion("0 has no inverse in QQ")
        return 1 / Fraction(a)

    def random(self, rng: np.random.Generator, bound: int | None = None) -> Fraction:
        bound = bound or self.sample_bound
        return Fraction(int(rng.integers(-bound, bound, endpoint=True)))

    def format(self, a: Fraction) -> str:
        return str(a)

    def to_file_int(self, a: Fraction) -> int:
        if Fraction(a).denominator != 1:
            raise UnsupportedField(f"matrix files hold integers; got {a}")
        return int(a)

    def array(self, raw: Any) -> np.ndarray:
        arr = np.array(raw, dtype=object)
        return np.vectorize(Fraction, otypes=[object])(arr) if arr.size else arr

    def from_ints(self, data: Any) -> np.ndarray:
        return self.array(data)

    def zeros(self, shape: int | tuple[int, ...]) -> np.ndarray:
        arr = np.empty(shape, dtype=object)
        arr.fill(Fraction(0))
        return arr

    def identity(self, n: int) -> np.ndarray:
        arr = self.zeros((n, n))
        for i in range(n):
            arr[i, i] = Fraction(1)
        return arr

    def random_array(self, shape: int | tuple[int, ...], rng: np.random.Generator, bound: int | None = None) -> np.ndarray:
        bound = bound or self.sample_bound
        ints = rng.integers(-bound, bound, size=shape, endpoint=True)
        return self.array(ints.astype(object))

    def scalar(self, a: Fraction) -> Fraction:
        return Fraction(a)

    def raw(self, x: Any) -> Fraction:
        return Fraction(x)


@functools.lru_cache(maxsize=None)
def field_for(spec: FieldSpec) -> ScalarField:
    """Shared field implementation for `spec`."""
    if spec.kind is FieldKind.PRIME:
        return PrimeField(spec)
    if spec.kind is FieldKind.EXTENSION:
        return ExtensionField(spec)
    return RationalField(spec)


def common_field(a: ScalarField, b: ScalarField) -> ScalarField:
    """The field containing both `a` and `b` (one must contain the other)."""
    if a.contains(b):
        return a
    if b.contains(a):
        return b
    raise FieldMismatch(f"{a.spec.label} and {b.spec.label} are incompatible")


def sampling_extension_degree(p: int, minimum_order: int = 100) -> int:
    """Smallest e with p^e >= minimum_order."""
    e = 1
    while p**e < minimum_order:
        e += 1
    return e


# ============================================================================
# Tagged elements
# ============================================================================


@dataclass(frozen=True)
class FieldElement:
    """A raw value tagged with its field."""

    spec: FieldSpec
    value: Any

    @property
    def field(self) -> ScalarField:
        return field_for(self.spec)

    @classmethod
    def of(cls, spec: FieldSpec, n: int | Fraction) -> "FieldElement":
        field = field_for(spec)
        if isinstance(n, Fraction) and spec.kind is not FieldKind.RATIONAL:
            value = field.div(field.from_int(n.numerator), field.from_int(n.denominator))
        else:
            value = field.from_int(n) if isinstance(n, int) else n
        return cls(spec, value)

    def _coerce(self, other: Any) -> Any:
        if isinstance(other, FieldElement):
            if other.spec != self.spec:
                raise FieldMismatch(f"{self.spec.label} vs {other.spec.label}")
            return other.value
        if isinstance(other, (int, Fraction)):
            return FieldElement.of(self.spec, other).value
        return NotImplemented

    def __add__(self, other: Any) -> "FieldElement":
        value = self._coerce(other)
        if value is NotImplemented:
            return NotImplemented
        return FieldElement(self.spec, self.field.add(self.value, value))

    __radd__ = __add__

    def __sub__(self, other: Any) -> "FieldElement":
        value = self._coerce(other)
        if value is NotImplemented:
            return NotImplemented
        return FieldElement(self.spec, self.field.sub(self.value, value))

    def __rsub__(self, other: Any) -> "FieldElement":
        return (-self) + other

    def __mul__(self, other: Any) -> "FieldElement":
        value = self._coerce(other)
        if value is NotImplemented:
            return NotImplemented
        return FieldElement(self.spec, self.field.mul(self.value, value))

    __rmul__ = __mul__

    def __truediv__(self, other: Any) -> "FieldElement":
        value = self._coerce(other)
        if value is NotImplemented:
            return NotImplemented
        return FieldElement(self.spec, self.field.div(self.value, value))

    def __neg__(self) -> "FieldElement":
        return FieldElement(self.spec, self.field.neg(self.value))

    def __eq__(self, other: Any) -> bool:
        if isinstance(other, FieldElement):
            return self.spec == other.spec and self.value == other.value
        if isinstance(other, (int, Fraction)):
            return self.value == FieldElement.of(self.spec, other).value
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.spec, self.value))

    def __bool__(self) -> bool:
        return not self.field.is_zero(self.value)

    def inverse(self) -> "FieldElement":
        return FieldElement(self.spec, self.field.inv(self.value))

    def __repr__(self) -> str:
        return f"{self.field.format(self.value)} in {self.spec.label}"


def field_inverse(a: FieldElement) -> FieldElement:
    """Multiplicative inverse of `a`.

    Raises:
        ZeroInversion: If a = 0
    """
    return a.inverse()


def random_element(spec: FieldSpec, rng: np.random.Generator) -> FieldElement:
    """Uniform element of the field; over ℚ an integer in [-RATIONAL_SAMPLE_BOUND, RATIONAL_SAMPLE_BOUND]."""
    return FieldElement(spec, field_for(spec).random(rng))


__all__ = [
    "RATIONAL_SAMPLE_BOUND",
    "FieldKind",
    "FieldSpec",
    "ScalarField",
    "PrimeField",
    "ExtensionField",
    "RationalField",
    "FieldElement",
    "field_for",
    "common_field",
    "default_modulus",
    "field_inverse",
    "random_element",
    "make_rng",
    "sampling_extension_degree",
]
