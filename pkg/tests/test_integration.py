"""Integration tests on the bundled corpus matrices.

These run complete certifications (Gröbner bases of many sub-Pfaffians) and are slower than
the unit tests. Select or skip them with `-m integration` / `-m "not integration"`.
"""

import pytest

import linalg
from certify import (
    CertifyOptions,
    Verdict,
    certify_constant_rank,
    exhaustive_rank_sweep,
    sample_ranks,
    sampling_field,
    verify_certificate,
)
from conftest import random_invertible
from lines import Line, jumping_order, random_lines, splitting_profiles
from polymat import congruence_action, variable_action
from scalars import FieldSpec
from skewsym import skew_symmetrize

pytestmark = pytest.mark.integration


class TestCorpusCertificates:
    """Exact certification of the corpus matrices."""

    def test_westwick_certified_mod_101(self, westwick, mock_logger):
        cert = certify_constant_rank(westwick, 8, CertifyOptions(samples=50, exact=True, prime=101), mock_logger)
        assert cert.verdict is Verdict.CERTIFIED, cert.notes
        assert cert.lower_bound_proof.prime == 101
        assert len(cert.lower_bound_proof.pure_powers) == 4
        assert verify_certificate(westwick, cert).ok

    def test_appendix_certified(self, appendix, mock_logger):
        cert = certify_constant_rank(appendix, 12, CertifyOptions(samples=50, exact=True), mock_logger)
        assert cert.verdict is Verdict.CERTIFIED, cert.notes
        assert cert.upper_bound_proof.subpfaffians == 1
        assert verify_certificate(appendix, cert).ok

    def test_appendix_sweep(self, appendix):
        assert exhaustive_rank_sweep(appendix) == {12: 400}


class TestTransformations:
    """Constant rank survives the group actions and skew-symmetrization."""

    def test_congruence_and_variable_actions(self, appendix, rng):
        G = random_invertible(FieldSpec.prime(7), 14, rng)
        H = random_invertible(FieldSpec.prime(7), 4, rng)
        moved = variable_action(congruence_action(appendix, G), H)
        assert moved.is_skew()
        assert exhaustive_rank_sweep(moved) == {12: 400}
        cert = certify_constant_rank(moved, 12, CertifyOptions(samples=50, exact=True))
        assert cert.verdict is Verdict.CERTIFIED

    def test_skewify_round_trip(self, appendix, rng):
        P = random_invertible(FieldSpec.prime(7), 14, rng)
        found = skew_symmetrize(appendix.left_multiply(P), rng)
        assert exhaustive_rank_sweep(found.result) == {12: 400}
        cert = certify_constant_rank(found.result, 12, CertifyOptions(samples=50, seed=2))
        assert cert.verdict is Verdict.EVIDENCE_ONLY

    def test_westwick_skewify_round_trip(self, westwick, rng):
        P = random_invertible(FieldSpec.rational(), 10, rng, bound=2)
        found = skew_symmetrize(westwick.left_multiply(P), rng)
        cert = certify_constant_rank(found.result, 8, CertifyOptions(samples=30, seed=5))
        assert cert.verdict is Verdict.EVIDENCE_ONLY


class TestLineProfiles:
    def test_appendix_profiles_after_congruence(self, appendix, gf7, rng):
        G = random_invertible(FieldSpec.prime(7), 14, rng)
        lines = random_lines(gf7, 4, 6, rng)
        before = [profile for _, profile in splitting_profiles(appendix, lines)]
        after = [profile for _, profile in splitting_profiles(congruence_action(appendix, G), lines)]
        assert before == after
        assert all(profile.total == 6 for profile in before)


class TestAcceptanceCounts:
    """Corpus runs at the sample and repetition counts the tool is expected to handle."""

    @pytest.mark.parametrize("prime", [101, 7])
    def test_westwick_certified_mod_p(self, westwick, mock_logger, prime):
        cert = certify_constant_rank(westwick, 8, CertifyOptions(samples=50, exact=True, prime=prime), mock_logger)
        assert cert.verdict is Verdict.CERTIFIED, cert.notes
        assert cert.lower_bound_proof.prime == prime

    def test_westwick_thousand_rational_samples(self, westwick):
        cert = certify_constant_rank(westwick, 8, CertifyOptions(samples=1000, seed=7))
        assert cert.verdict is Verdict.EVIDENCE_ONLY
        assert cert.sample_evidence.count == 1000
        assert cert.sample_evidence.failures == 0

    @pytest.mark.parametrize("e", [2, 3])
    def test_appendix_thousand_samples_over_extension(self, appendix, e):
        cert = certify_constant_rank(appendix, 12, CertifyOptions(samples=1000, extension_degree=e, seed=e))
        assert cert.verdict is Verdict.EVIDENCE_ONLY
        assert cert.sample_evidence.field == FieldSpec.extension(7, e)
        assert cert.sample_evidence.failures == 0

    def test_twenty_generic_westwick_lines(self, westwick, qq, rng):
        profiles = splitting_profiles(westwick, random_lines(qq, 4, 20, rng, bound=5))
        assert [profile.as_list() for _, profile in profiles] == [[2, 2]] * 20

    def test_fifty_appendix_skewifications(self, appendix, rng):
        for i in range(50):
            P = random_invertible(FieldSpec.prime(7), 14, rng)
            found = skew_symmetrize(appendix.left_multiply(P), rng)
            assert found.result.is_skew()
            ranks = sample_ranks(found.result, 100, i, sampling_field(found.result))
            assert {rk for _, rk in ranks} == {12}

    def test_fifty_westwick_skewifications(self, westwick, rng):
        for i in range(50):
            P = random_invertible(FieldSpec.rational(), 10, rng, bound=3)
            found = skew_symmetrize(westwick.left_multiply(P), rng)
            assert found.result.is_skew()
            ranks = sample_ranks(found.result, 100, i, rational_bound=50)
            assert {rk for _, rk in ranks} == {8}

    def test_twenty_appendix_transforms(self, appendix, gf7, rng):
        lines = random_lines(gf7, 4, 3, rng)
        before = [profile for _, profile in splitting_profiles(appendix, lines)]
        for i in range(20):
            G = random_invertible(FieldSpec.prime(7), 14, rng)
            H = random_invertible(FieldSpec.prime(7), 4, rng)
            moved = variable_action(congruence_action(appendix, G), H)
            assert exhaustive_rank_sweep(moved) == {12: 400}
            cert = certify_constant_rank(moved, 12, CertifyOptions(samples=100, seed=i))
            assert cert.verdict is Verdict.EVIDENCE_ONLY
            H_inv = linalg.inverse(gf7, H)
            pulled = [Line(gf7, H_inv @ L.basis) for L in lines]
            assert [profile for _, profile in splitting_profiles(moved, pulled)] == before

    def test_twenty_westwick_transforms(self, westwick, qq, rng):
        special = [
            Line.from_ints(qq, [1, 0, 1, 0], [0, 1, 0, 1]),
            Line.from_ints(qq, [0, 1, 0, 0], [0, 0, 0, 1]),
            Line.from_ints(qq, [1, 0, 0, 0], [0, 0, 1, 0]),
        ]
        for i in range(20):
            G = random_invertible(FieldSpec.rational(), 10, rng, bound=2)
            H = random_invertible(FieldSpec.rational(), 4, rng, bound=2)
            moved = variable_action(congruence_action(westwick, G), H)
            cert = certify_constant_rank(moved, 8, CertifyOptions(samples=100, seed=i))
            assert cert.verdict is Verdict.EVIDENCE_ONLY
            assert cert.sample_evidence.failures == 0
            H_inv = linalg.inverse(qq, H)
            pulled = [Line(qq, H_inv @ L.basis) for L in special]
            assert [jumping_order(moved, L) for L in pulled] == [2, 1, 1]
