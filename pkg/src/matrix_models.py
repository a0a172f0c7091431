from __future__ import annotations

import json
from pathlib import Path
from typing import Any, List, Optional

from pydantic import BaseModel, Field, model_validator

from functions import canonical_json, content_hash
from polymat import LinearMatrix
from scalars import FieldSpec, field_for


class MatrixFile(BaseModel):
    """Interchange format for a matrix of linear forms.

    `coeffs` holds d integer n×n matrices; integers are reduced into `field` on load.
    """

    field: FieldSpec
    n: int = Field(ge=1)
    d: int = Field(ge=1)
    coeffs: List[List[List[int]]]
    name: Optional[str] = Field(default=None)
    provenance: Optional[str] = Field(default=None)

    @model_validator(mode="after")
    def _check_shape(self) -> "MatrixFile":
        if len(self.coeffs) != self.d:
            raise ValueError(f"expected {self.d} coefficient matrices, got {len(self.coeffs)}")
        for i, matrix in enumerate(self.coeffs):
            if len(matrix) != self.n or any(len(row) != self.n for row in matrix):
                raise ValueError(f"coefficient matrix {i} is not {self.n}x{self.n}")
        return self

    @classmethod
    def from_json_text(cls, text: str) -> "MatrixFile":
        """Parse a JSON text into a MatrixFile model."""
        data = json.loads(text)
        return cls.model_validate(data)

    @classmethod
    def from_path(cls, path: str | Path) -> "MatrixFile":
        p = Path(path)
        text = p.read_text(encoding="utf-8")
        return cls.from_json_text(text)

    @classmethod
    def from_linear_matrix(cls, A: LinearMatrix, with_metadata: bool = True) -> "MatrixFile":
        coeffs = [[[A.field.to_file_int(A.field.raw(x)) for x in row] for row in Ai] for Ai in A.coeffs]
        return cls(
            field=A.spec,
            n=A.n,
            d=A.d,
            coeffs=coeffs,
            name=A.name if with_metadata else None,
            provenance=A.provenance if with_metadata else None,
        )

    def to_linear_matrix(self) -> LinearMatrix:
        return LinearMatrix.from_ints(self.field, self.coeffs, name=self.name, provenance=self.provenance)

    def to_json(self) -> str:
        """Canonical text: sorted keys, fixed indentation, absent metadata omitted."""
        return canonical_json(self.model_dump(mode="json", exclude_none=True))

    def write(self, path: str | Path) -> Path:
        p = Path(path)
        p.write_text(self.to_json(), encoding="utf-8")
        return p


class ScalarMatrixFile(BaseModel):
    """A single scalar matrix (for instance a skewifier Δ) in the same integer convention."""

    field: FieldSpec
    n: int = Field(ge=1)
    rows: List[List[int]]

    @model_validator(mode="after")
    def _check_shape(self) -> "ScalarMatrixFile":
        if len(self.rows) != self.n or any(len(row) != self.n for row in self.rows):
            raise ValueError(f"rows do not form a {self.n}x{self.n} matrix")
        return self

    @classmethod
    def from_array(cls, spec: FieldSpec, M: Any) -> "ScalarMatrixFile":
        field = field_for(spec)
        rows = [[field.to_file_int(field.raw(x)) for x in row] for row in M]
        return cls(field=spec, n=len(rows), rows=rows)

    def to_array(self) -> Any:
        return field_for(self.field).from_ints(self.rows)

    def to_json(self) -> str:
        return canonical_json(self.model_dump(mode="json", exclude_none=True))


def matrix_id(A: LinearMatrix) -> str:
    """Content hash of the canonical matrix file, metadata excluded."""
    return content_hash(MatrixFile.from_linear_matrix(A, with_metadata=False).to_json())


__all__ = [
    "MatrixFile",
    "ScalarMatrixFile",
    "matrix_id",
]
