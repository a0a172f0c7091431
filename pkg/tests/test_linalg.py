"""Tests for src/linalg.py"""

from fractions import Fraction

import pytest

import linalg
from errors import SingularTransform


class TestRank:
    def test_prime_field_rank_depends_on_characteristic(self, gf7, qq):
        rows = [[1, 2], [3, 13]]  # det = 7
        assert linalg.rank(qq, qq.from_ints(rows)) == 2
        assert linalg.rank(gf7, gf7.from_ints(rows)) == 1

    def test_rational_rank_with_fractions(self, qq):
        M = qq.array([[Fraction(1, 2), Fraction(1, 3)], [Fraction(3, 2), 1]])
        assert linalg.rank(qq, M) == 1

    def test_empty(self, gf7):
        assert linalg.rank(gf7, gf7.zeros((0, 3))) == 0


class TestNullSpace:
    def test_kernel_vectors_are_killed(self, qq):
        M = qq.from_ints([[1, 2, 3], [2, 4, 6]])
        basis = linalg.null_space(qq, M)
        assert len(basis) == 2
        for v in basis:
            assert linalg.is_zero(qq, M @ v)

    def test_extension_field(self, gf49):
        M = gf49.array([[1, 7], [7, gf49.from_int(-1)]])  # rows (1, i) and (i, -1) are dependent
        basis = linalg.null_space(gf49, M)
        assert len(basis) == 1
        assert linalg.is_zero(gf49, M @ basis[0])


class TestDeterminantAndInverse:
    def test_det(self, qq, gf7):
        rows = [[2, 1], [1, 1]]
        assert linalg.det(qq, qq.from_ints(rows)) == 1
        assert linalg.det(gf7, gf7.from_ints([[3, 0], [0, 5]])) == 1

    def test_inverse(self, qq):
        M = qq.from_ints([[2, 1], [1, 1]])
        assert linalg.arrays_equal(qq, linalg.inverse(qq, M) @ M, qq.identity(2))

    def test_singular_inverse(self, gf7):
        with pytest.raises(SingularTransform):
            linalg.inverse(gf7, gf7.from_ints([[1, 2], [2, 4]]))

    def test_is_invertible(self, gf7):
        assert linalg.is_invertible(gf7, gf7.identity(3))
        assert not linalg.is_invertible(gf7, gf7.zeros((3, 3)))
        assert not linalg.is_invertible(gf7, gf7.zeros((2, 3)))
