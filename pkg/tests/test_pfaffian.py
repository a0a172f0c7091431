"""Tests for src/pfaffian.py"""

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import linalg
from conftest import skew_from_upper
from errors import NotSkew, OddSize
from pfaffian import (
    PfaffianExpander,
    pfaffian,
    pfaffian_at,
    principal_subpfaffians,
    rank_from_subpfaffians,
    symbolic_rank_upper_bound,
)
from polymat import LinearMatrix, ProjectivePoint, rank_at, random_point
from scalars import FieldSpec, field_for


def _random_skew(field, n, rng):
    M = field.random_array((n, n), rng)
    return M - M.T


class TestScalarPfaffian:
    """Tests for Pfaffians of scalar matrices."""

    def test_two_by_two(self, qq):
        assert pfaffian(qq.from_ints([[0, 1], [-1, 0]])) == 1

    def test_four_by_four_formula(self, qq):
        # Pf = a01*a23 - a02*a13 + a03*a12
        M = qq.from_ints([[0, 2, 3, 5], [-2, 0, 7, 11], [-3, -7, 0, 13], [-5, -11, -13, 0]])
        assert pfaffian(M) == 2 * 13 - 3 * 11 + 5 * 7

    @pytest.mark.parametrize("n", [2, 4, 6, 8, 10, 12])
    def test_square_is_determinant(self, gf7, rng, n):
        for _ in range(3):
            M = _random_skew(gf7, n, rng)
            pf = pfaffian(M, field=gf7)
            assert gf7.mul(pf, pf) == int(linalg.det(gf7, M))

    def test_square_is_determinant_over_rationals(self, qq, rng):
        for n in (4, 8, 12):
            M = _random_skew(qq, n, rng)
            assert pfaffian(M) ** 2 == linalg.det(qq, M)

    @given(seed=st.integers(0, 2**32 - 1), n=st.sampled_from([2, 4, 6, 8]))
    @settings(max_examples=25, deadline=None)
    def test_congruence_scales_by_determinant(self, seed, n):
        gf7 = field_for(FieldSpec.prime(7))
        rng = np.random.default_rng(seed)
        M = _random_skew(gf7, n, rng)
        G = gf7.random_array((n, n), rng)
        moved = pfaffian(G.T @ M @ G, field=gf7)
        assert moved == gf7.mul(int(linalg.det(gf7, G)), pfaffian(M, field=gf7))

    def test_congruence_over_rationals(self, qq, rng):
        M = _random_skew(qq, 6, rng)
        G = qq.random_array((6, 6), rng, 4)
        assert pfaffian(G.T @ M @ G) == linalg.det(qq, G) * pfaffian(M)

    def test_rational_entries(self, qq):
        M = qq.array([[0, Fraction(1, 2)], [Fraction(-1, 2), 0]])
        assert pfaffian(M) == Fraction(1, 2)

    def test_odd_size(self, qq):
        with pytest.raises(OddSize):
            pfaffian(qq.zeros((3, 3)))

    def test_not_skew(self, qq):
        with pytest.raises(NotSkew):
            pfaffian(qq.from_ints([[0, 1], [1, 0]]))

    def test_finite_field_array_needs_field(self, gf7):
        with pytest.raises(TypeError):
            pfaffian(gf7.zeros((2, 2)))


class TestPolynomialPfaffian:
    """Tests for Pfaffians of matrices of linear forms."""

    def test_small_skew(self, small_skew):
        assert pfaffian(small_skew).format() == "x0^2 + x1^2"

    def test_constant_rank_matrix_has_vanishing_pfaffian(self, westwick):
        assert pfaffian(westwick).is_zero()

    def test_evaluation_commutes(self, small_skew, gf49):
        # x0 = z, x1 = 1 is a zero of x0^2 + x1^2 over GF(49)
        assert pfaffian_at(small_skew, ProjectivePoint(gf49, (7, 1))) == 0
        assert pfaffian_at(small_skew, ProjectivePoint.of(gf49, [1, 0])) == 1


class TestSubPfaffians:
    """Tests for principal sub-Pfaffian systems."""

    def test_westwick_size_eight(self, westwick):
        system = principal_subpfaffians(westwick, 8)
        assert len(system) == 45
        assert system.degree == 4
        assert not system.all_zero()
        assert all(p.is_homogeneous() and p.total_degree() in (-1, 4) for p in system.polys)

    def test_westwick_size_ten(self, westwick):
        system = principal_subpfaffians(westwick, 10)
        assert len(system) == 1
        assert system.all_zero()
        assert system.nonzero() == []

    def test_subsets_are_lexicographic(self, small_skew):
        system = principal_subpfaffians(small_skew, 2)
        assert system.subsets == ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))
        assert [p.format() for p in system.polys] == ["x0", "x1", "0", "0", "-x1", "x0"]

    def test_shared_expander(self, westwick):
        expander = PfaffianExpander.for_linear_matrix(westwick)
        eight = principal_subpfaffians(westwick, 8, expander=expander)
        six = principal_subpfaffians(westwick, 6, expander=expander)
        assert len(eight) == 45 and len(six) == 210

    def test_odd_size(self, westwick):
        with pytest.raises(OddSize):
            principal_subpfaffians(westwick, 7)

    def test_not_skew(self):
        A = LinearMatrix.from_ints(FieldSpec.prime(7), [[[0, 1], [1, 0]]])
        with pytest.raises(NotSkew):
            principal_subpfaffians(A, 2)


class TestRankBounds:
    """Tests for symbolic and point-wise rank from sub-Pfaffians."""

    def test_symbolic_upper_bound(self, westwick, small_skew):
        assert symbolic_rank_upper_bound(westwick) == 8
        assert symbolic_rank_upper_bound(small_skew) == 4

    def test_zero_matrix(self):
        A = skew_from_upper(FieldSpec.prime(5), [{}, {}], 4)
        assert symbolic_rank_upper_bound(A) == 0

    def test_pointwise_rank_matches_linear_algebra(self, appendix, gf7, rng):
        for _ in range(5):
            x = random_point(gf7, 4, rng)
            assert rank_from_subpfaffians(appendix, x) == rank_at(appendix, x) == 12
