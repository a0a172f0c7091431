"""Pytest fixtures for tests."""

import sys
from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import Any

import numpy as np
import pytest

# Make the package source importable from tests
sys.path.insert(0, "src")

from matrix_models import MatrixFile  # noqa: E402
from polymat import LinearMatrix, corpus_load  # noqa: E402
from scalars import FieldSpec, field_for  # noqa: E402


# ============================================================================
# Mock Classes for Dependency Injection
# ============================================================================


@dataclass
class MockLogger:
    """Mock logger that captures all log messages."""

    messages: list[tuple[str, str]] = field(default_factory=list)
    groups: list[str] = field(default_factory=list)

    def info(self, message: str) -> None:
        self.messages.append(("info", message))

    def debug(self, message: str) -> None:
        self.messages.append(("debug", message))

    def warn(self, message: str) -> None:
        self.messages.append(("warn", message))

    def error(self, message: str) -> None:
        self.messages.append(("error", message))

    def group(self, name: str) -> Any:
        self.groups.append(name)

        @contextmanager
        def _cm():
            yield None

        return _cm()

    def at(self, level: str) -> list[str]:
        return [message for lvl, message in self.messages if lvl == level]


# ============================================================================
# Helpers
# ============================================================================


def skew_from_upper(spec: FieldSpec, uppers: list[dict[tuple[int, int], int]], n: int) -> LinearMatrix:
    """Skew pencil from the strictly upper entries of each coefficient matrix."""
    coeffs = []
    for upper in uppers:
        M = [[0] * n for _ in range(n)]
        for (i, j), v in upper.items():
            M[i][j] = v
            M[j][i] = -v
        coeffs.append(M)
    return LinearMatrix.from_ints(spec, coeffs)


def random_invertible(spec: FieldSpec, n: int, rng: np.random.Generator, bound: int = 5) -> np.ndarray:
    """Random invertible n×n matrix over the field of `spec`."""
    import linalg

    f = field_for(spec)
    while True:
        if f.is_finite:
            M = f.random_array((n, n), rng)
        else:
            M = f.random_array((n, n), rng, bound)
        if linalg.is_invertible(f, M):
            return M


# ============================================================================
# Fixtures
# ============================================================================


@pytest.fixture
def mock_logger() -> MockLogger:
    return MockLogger()


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(12345)


@pytest.fixture
def qq():
    return field_for(FieldSpec.rational())


@pytest.fixture
def gf7():
    return field_for(FieldSpec.prime(7))


@pytest.fixture
def gf49():
    return field_for(FieldSpec.extension(7, 2))


@pytest.fixture(scope="session")
def westwick() -> LinearMatrix:
    return corpus_load("westwick10")


@pytest.fixture(scope="session")
def appendix() -> LinearMatrix:
    return corpus_load("appendix14")


@pytest.fixture
def westwick_file(tmp_path, westwick):
    return MatrixFile.from_linear_matrix(westwick).write(tmp_path / "westwick10.json")


@pytest.fixture
def appendix_file(tmp_path, appendix):
    return MatrixFile.from_linear_matrix(appendix).write(tmp_path / "appendix14.json")


@pytest.fixture
def small_skew():
    """4×4 skew pencil in x0, x1 over GF(7) with Pf = x0^2 + x1^2 (no zero over GF(7), two over GF(49))."""
    return skew_from_upper(
        FieldSpec.prime(7),
        [{(0, 1): 1, (2, 3): 1}, {(0, 2): 1, (1, 3): -1}],
        4,
    )
