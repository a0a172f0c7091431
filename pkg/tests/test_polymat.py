"""Tests for src/polymat.py"""

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import linalg
from conftest import random_invertible, skew_from_upper
from errors import (
    CorpusCorrupt,
    DenominatorCollision,
    DimensionMismatch,
    SingularTransform,
)
from polymat import (
    LinearMatrix,
    MultiPoly,
    ProjectivePoint,
    apply_to_point,
    congruence_action,
    corpus_load,
    corpus_names,
    count_projective_points,
    degrevlex_key,
    evaluate,
    kernel_at,
    projective_point_batches,
    projective_points,
    random_point,
    rank_at,
    variable_action,
)
import polymat
from scalars import FieldSpec, field_for


def _var(field, nvars, i):
    return MultiPoly.variable(field, nvars, i)


class TestMonomialOrder:
    def test_degree_first(self):
        assert degrevlex_key((0, 0, 2)) > degrevlex_key((1, 0, 0))

    def test_reverse_lexicographic_tie_break(self):
        # x1^2 > x0*x2 in degrevlex
        assert degrevlex_key((0, 2, 0)) > degrevlex_key((1, 0, 1))
        assert degrevlex_key((1, 0, 0)) > degrevlex_key((0, 1, 0))


class TestMultiPoly:
    def test_arithmetic_over_qq(self, qq):
        x0, x1 = _var(qq, 2, 0), _var(qq, 2, 1)
        f = (x0 + x1) * (x0 - x1)
        assert f == x0 * x0 - x1 * x1
        assert f.total_degree() == 2
        assert f.is_homogeneous()
        assert not (f + 1).is_homogeneous()

    def test_zero_polynomial(self, gf7):
        x0 = _var(gf7, 3, 0)
        zero = x0 * 7
        assert zero.is_zero()
        assert zero.total_degree() == -1
        assert zero.format() == "0"

    def test_format(self, qq):
        x = [_var(qq, 4, i) for i in range(4)]
        f = x[0] * x[0] * x[1] * 3 - x[2] * x[3]
        assert f.format() == "3*x0^2*x1 - x2*x3"

    def test_format_leading_minus(self, gf7):
        x0, x1 = _var(gf7, 2, 0), _var(gf7, 2, 1)
        assert (x1 - x0).format() == "-x0 + x1"

    def test_evaluate(self, qq):
        x0, x1 = _var(qq, 2, 0), _var(qq, 2, 1)
        f = x0 * x1 + Fraction(1, 2)
        assert f.evaluate([Fraction(2), Fraction(3)]) == Fraction(13, 2)

    def test_evaluate_over_extension(self, gf7, gf49):
        x0, x1 = _var(gf7, 2, 0), _var(gf7, 2, 1)
        f = x0 * x0 + x1 * x1
        assert f.evaluate([7, 1], gf49) == 0  # i^2 + 1

    def test_evaluate_many_matches_evaluate(self, gf7, gf49, rng):
        x = [_var(gf7, 3, i) for i in range(3)]
        f = x[0] * x[1] * 3 + x[2] * x[2] * x[2] - 1
        points = gf49.random_array((25, 3), rng)
        many = gf49.raw_list(f.evaluate_many(points, gf49))
        single = [f.evaluate(gf49.raw_list(points[i]), gf49) for i in range(25)]
        assert many == single

    def test_reduce_mod(self, qq):
        x0 = _var(qq, 1, 0)
        f = x0 * Fraction(1, 2) + 3
        g = f.reduce_mod(7)
        assert g.terms == {(1,): 4, (0,): 3}

    def test_reduce_mod_denominator_collision(self, qq):
        f = _var(qq, 1, 0) * Fraction(1, 7)
        with pytest.raises(DenominatorCollision):
            f.reduce_mod(7)

    def test_variable_count_mismatch(self, qq):
        with pytest.raises(DimensionMismatch):
            _var(qq, 2, 0) + _var(qq, 3, 0)

    @given(
        a=st.lists(st.integers(-5, 5), min_size=3, max_size=3),
        b=st.lists(st.integers(-5, 5), min_size=3, max_size=3),
        c=st.lists(st.integers(-5, 5), min_size=3, max_size=3),
    )
    @settings(max_examples=30, deadline=None)
    def test_ring_axioms(self, a, b, c):
        qq = field_for(FieldSpec.rational())
        f, g, h = (MultiPoly.linear_form(qq, [Fraction(v) for v in vec]) for vec in (a, b, c))
        assert f * (g + h) == f * g + f * h
        assert f * g == g * f
        assert (f - f).is_zero()


class TestProjectivePoints:
    def test_count(self, gf7):
        points = list(projective_points(gf7, 4))
        assert len(points) == count_projective_points(7, 4) == 400
        assert len(set(points)) == 400

    def test_batches_follow_enumeration_order(self, gf7):
        flat = [v for batch in projective_point_batches(gf7, 3, batch=10) for v in gf7.raw_list(batch)]
        expected = [c for x in projective_points(gf7, 3) for c in x.coords]
        assert flat == expected

    def test_equality_up_to_scaling(self, gf7):
        assert ProjectivePoint.of(gf7, [1, 2, 3]) == ProjectivePoint.of(gf7, [2, 4, 6])
        assert ProjectivePoint.of(gf7, [1, 2, 3]) != ProjectivePoint.of(gf7, [1, 2, 4])

    def test_zero_vector_rejected(self, gf7):
        with pytest.raises(ValueError):
            ProjectivePoint.of(gf7, [0, 0])

    def test_random_rational_point_is_bounded(self, qq, rng):
        x = random_point(qq, 4, rng, bound=3)
        assert all(abs(c) <= 3 for c in x.coords)


class TestLinearMatrix:
    def test_construction_and_shape(self, westwick):
        assert (westwick.n, westwick.d) == (10, 4)
        assert westwick.is_skew()
        assert westwick.entry(0, 7).format() == "x0"
        assert westwick.entry(7, 0).format() == "-x0"

    def test_mismatched_shapes(self, qq):
        with pytest.raises(DimensionMismatch):
            LinearMatrix(qq, (qq.zeros((2, 2)), qq.zeros((3, 3))))

    def test_coefficients_are_read_only(self, appendix):
        with pytest.raises(ValueError):
            appendix.coeffs[0][0, 1] = 3

    def test_evaluate_is_linear(self, appendix, gf7):
        x = ProjectivePoint.of(gf7, [1, 2, 0, 3])
        M = evaluate(appendix, x)
        expected = appendix.coeffs[0] + 2 * appendix.coeffs[1] + 3 * appendix.coeffs[3]
        assert linalg.arrays_equal(gf7, M, expected)

    def test_evaluate_over_extension(self, appendix, gf49):
        x = ProjectivePoint(gf49, (1, 7, 0, 0))
        assert rank_at(appendix, x) == 12

    def test_kernel_dimension(self, westwick, qq):
        x = ProjectivePoint.of(qq, [1, 2, 3, 4])
        assert rank_at(westwick, x) == 8
        kernel = kernel_at(westwick, x)
        assert len(kernel) == 2
        M = evaluate(westwick, x)
        assert all(linalg.is_zero(qq, M @ v) for v in kernel)

    def test_reduce_mod(self, westwick):
        W7 = westwick.reduce_mod(7)
        assert W7.spec == FieldSpec.prime(7)
        assert W7.is_skew()

    def test_equality(self, westwick):
        assert westwick == corpus_load("westwick10")
        assert westwick != westwick.reduce_mod(7)


class TestGroupActions:
    def test_congruence_keeps_skewness_and_rank(self, appendix, gf7, rng):
        G = random_invertible(FieldSpec.prime(7), 14, rng)
        B = congruence_action(appendix, G)
        assert B.is_skew()
        x = ProjectivePoint.of(gf7, [1, 1, 2, 5])
        assert rank_at(B, x) == rank_at(appendix, x)

    def test_congruence_singular(self, appendix, gf7):
        with pytest.raises(SingularTransform):
            congruence_action(appendix, gf7.zeros((14, 14)))

    def test_variable_action_moves_points(self, westwick, qq, rng):
        H = random_invertible(FieldSpec.rational(), 4, rng)
        B = variable_action(westwick, H)
        x = ProjectivePoint.of(qq, [1, -2, 0, 5])
        assert linalg.arrays_equal(qq, evaluate(B, x), evaluate(westwick, apply_to_point(H, x)))

    def test_variable_action_singular(self, westwick, qq):
        with pytest.raises(SingularTransform):
            variable_action(westwick, qq.zeros((4, 4)))


class TestCorpus:
    def test_names(self):
        assert corpus_names() == ("westwick10", "appendix14")

    def test_appendix_over_gf7(self, appendix):
        assert appendix.spec == FieldSpec.prime(7)
        assert (appendix.n, appendix.d) == (14, 4)
        assert appendix.is_skew()

    def test_unknown_name(self):
        with pytest.raises(KeyError):
            corpus_load("nope")

    def test_corrupt_table(self, monkeypatch):
        monkeypatch.setattr(polymat.corpus_data, "WESTWICK10", "0 x0\nx0 0\n")
        with pytest.raises(CorpusCorrupt):
            corpus_load("westwick10")

    def test_skew_helper(self):
        A = skew_from_upper(FieldSpec.prime(5), [{(0, 1): 1}], 2)
        assert A.is_skew()
        assert np.asarray(A.coeffs[0].view(np.ndarray)).tolist() == [[0, 1], [4, 0]]
