"""Tests for src/certify.py"""

import pytest
from pydantic import ValidationError

from certify import (
    CertifyOptions,
    PointRecord,
    RankCertificate,
    Verdict,
    certify_constant_rank,
    exhaustive_rank_sweep,
    sample_ranks,
    sampling_field,
    verify_certificate,
)
from conftest import skew_from_upper
from errors import NotSkew, OddRankRequested, TooLarge, UnsupportedField
from matrix_models import matrix_id
from polymat import LinearMatrix, ProjectivePoint
from scalars import FieldSpec
from settings import SkewRankSettings


@pytest.fixture
def rank_two():
    """4×4 pencil in x0, x1 over GF(7) with a01 = x0, a02 = x1: rank 2 everywhere."""
    return skew_from_upper(FieldSpec.prime(7), [{(0, 1): 1}, {(0, 2): 1}], 4)


@pytest.fixture
def options():
    return CertifyOptions(samples=40, seed=7)


class TestCertifyOptions:
    def test_from_settings(self):
        settings = SkewRankSettings(samples=25, seed=3, default_prime=13)
        opts = CertifyOptions.from_settings(settings, exact=True, prime=None)
        assert opts.samples == 25
        assert opts.seed == 3
        assert opts.prime == 13
        assert opts.exact is True

    def test_overrides_win(self):
        opts = CertifyOptions.from_settings(SkewRankSettings(), samples=5, sample_workers=4)
        assert (opts.samples, opts.sample_workers) == (5, 4)


class TestSampling:
    """Tests for sample fields and reproducible sampling."""

    def test_prime_fields_are_lifted(self, small_skew, westwick):
        assert sampling_field(small_skew).spec == FieldSpec.extension(7, 3)
        assert sampling_field(small_skew, extension_degree=2).spec == FieldSpec.extension(7, 2)
        assert sampling_field(westwick).spec == FieldSpec.rational()

    def test_same_points_for_every_worker_count(self, small_skew, gf49):
        serial = sample_ranks(small_skew, 150, seed=5, target=gf49, workers=1)
        threaded = sample_ranks(small_skew, 150, seed=5, target=gf49, workers=3)
        assert len(serial) == 150
        assert serial == threaded

    def test_seed_changes_points(self, small_skew, gf49):
        a = [x for x, _ in sample_ranks(small_skew, 20, seed=1, target=gf49)]
        b = [x for x, _ in sample_ranks(small_skew, 20, seed=2, target=gf49)]
        assert a != b

    def test_rational_bound(self, westwick):
        for x, rk in sample_ranks(westwick, 10, seed=1, rational_bound=3):
            assert all(abs(c) <= 3 for c in x.coords)
            assert rk == 8


class TestCertifyConstantRank:
    """Tests for the certification pipeline."""

    def test_certified_with_groebner_proof(self, rank_two, options, mock_logger):
        cert = certify_constant_rank(rank_two, 2, CertifyOptions(samples=40, seed=7, exact=True), mock_logger)
        assert cert.verdict is Verdict.CERTIFIED
        assert cert.upper_bound_proof.size == 4
        assert cert.sample_evidence.count == 40
        assert cert.sample_evidence.field == FieldSpec.extension(7, 3)
        assert cert.lower_bound_proof.prime == 7
        assert {pp.monomial for pp in cert.lower_bound_proof.pure_powers} == {"x0", "x1"}
        assert cert.matrix_id == matrix_id(rank_two)

    def test_sampling_only_gives_evidence(self, rank_two, options):
        cert = certify_constant_rank(rank_two, 2, options)
        assert cert.verdict is Verdict.EVIDENCE_ONLY
        assert cert.lower_bound_proof is None
        assert len(cert.sample_evidence.replay) == 8

    def test_zero_over_quadratic_extension_refutes(self, small_skew, mock_logger):
        cert = certify_constant_rank(small_skew, 4, CertifyOptions(samples=40, exact=True), mock_logger)
        assert cert.sample_evidence.failures == 0
        assert cert.verdict is Verdict.REFUTED
        assert cert.witness.reason == "groebner"
        assert cert.witness.point.field == FieldSpec.extension(7, 2)
        assert cert.witness.point.coords == [1, 7]
        assert cert.witness.point.rank == 2

    def test_rank_too_small_refutes_symbolically(self, small_skew, options):
        cert = certify_constant_rank(small_skew, 2, options)
        assert cert.verdict is Verdict.REFUTED
        assert cert.witness.reason == "symbolic_upper_bound"
        assert cert.witness.point.rank == 4

    def test_rank_too_large_refutes_symbolically(self, westwick, options):
        cert = certify_constant_rank(westwick, 10, options)
        assert cert.verdict is Verdict.REFUTED
        assert cert.witness.reason == "symbolic_lower_bound"
        assert cert.witness.point.coords == [1, 0, 0, 0]
        assert cert.witness.point.rank == 8

    def test_sampled_rank_drop_refutes(self, gf7):
        # x0 * J has rank 0 on the line x0 = 0
        A = skew_from_upper(FieldSpec.prime(7), [{(0, 1): 1}, {}], 2)
        cert = certify_constant_rank(A, 2, CertifyOptions(samples=200, seed=1, extension_degree=1))
        assert cert.verdict is Verdict.REFUTED
        assert cert.witness.reason == "sample"
        assert cert.sample_evidence.failures >= 1
        assert cert.witness.point.point() == ProjectivePoint.of(gf7, [0, 1])

    def test_westwick_sampled(self, westwick):
        cert = certify_constant_rank(westwick, 8, CertifyOptions(samples=30, seed=11))
        assert cert.verdict is Verdict.EVIDENCE_ONLY
        assert cert.upper_bound_proof.subpfaffians == 1
        assert cert.sample_evidence.rational_bound is not None

    def test_odd_rank(self, westwick):
        with pytest.raises(OddRankRequested):
            certify_constant_rank(westwick, 7)

    def test_not_skew(self):
        A = LinearMatrix.from_ints(FieldSpec.prime(7), [[[0, 1], [1, 0]]])
        with pytest.raises(NotSkew):
            certify_constant_rank(A, 2)

    def test_exact_over_extension_unsupported(self, gf49):
        A = skew_from_upper(FieldSpec.prime(7), [{(0, 1): 1}], 2).base_change(gf49)
        with pytest.raises(UnsupportedField):
            certify_constant_rank(A, 2, CertifyOptions(samples=10, exact=True))

    def test_deterministic(self, rank_two, options):
        first = certify_constant_rank(rank_two, 2, options)
        second = certify_constant_rank(rank_two, 2, options)
        assert first.to_json() == second.to_json()


class TestCertificateModel:
    def test_round_trip(self, rank_two, tmp_path):
        cert = certify_constant_rank(rank_two, 2, CertifyOptions(samples=20, exact=True))
        path = cert.write(tmp_path / "cert.json")
        assert RankCertificate.from_path(path) == cert

    def test_certified_needs_both_proofs(self):
        with pytest.raises(ValidationError):
            RankCertificate(
                matrix_id="sha256:00",
                field=FieldSpec.prime(7),
                n=2,
                d=1,
                claimed_rank=2,
                verdict=Verdict.CERTIFIED,
            )

    def test_refuted_needs_witness(self):
        with pytest.raises(ValidationError):
            RankCertificate(
                matrix_id="sha256:00",
                field=FieldSpec.prime(7),
                n=2,
                d=1,
                claimed_rank=2,
                verdict=Verdict.REFUTED,
            )

    def test_point_record(self, gf49):
        x = ProjectivePoint(gf49, (1, 7))
        record = PointRecord.of(x, 2)
        assert record.coords == [1, 7]
        assert record.point() == x


class TestVerifyCertificate:
    def test_valid_certificate(self, rank_two, mock_logger):
        cert = certify_constant_rank(rank_two, 2, CertifyOptions(samples=20, exact=True))
        check = verify_certificate(rank_two, cert, logger=mock_logger)
        assert check.ok, check.problems

    def test_refutation_replays(self, small_skew):
        cert = certify_constant_rank(small_skew, 4, CertifyOptions(samples=20, exact=True))
        assert verify_certificate(small_skew, cert).ok

    def test_other_matrix(self, rank_two, small_skew):
        cert = certify_constant_rank(rank_two, 2, CertifyOptions(samples=20))
        check = verify_certificate(small_skew, cert)
        assert not check.ok
        assert "hash" in check.problems[0]

    def test_tampered_replay(self, rank_two):
        cert = certify_constant_rank(rank_two, 2, CertifyOptions(samples=20))
        replay = [record.model_copy(update={"rank": 4}) for record in cert.sample_evidence.replay]
        evidence = cert.sample_evidence.model_copy(update={"replay": replay})
        check = verify_certificate(rank_two, cert.model_copy(update={"sample_evidence": evidence}))
        assert not check.ok
        assert len(check.problems) == len(replay)


class TestExhaustiveSweep:
    def test_prime_field(self, small_skew):
        assert exhaustive_rank_sweep(small_skew) == {4: 8}

    def test_quadratic_extension(self, small_skew, mock_logger):
        assert exhaustive_rank_sweep(small_skew, extension_degree=2, logger=mock_logger) == {2: 2, 4: 48}

    def test_limit(self, small_skew):
        with pytest.raises(TooLarge):
            exhaustive_rank_sweep(small_skew, extension_degree=2, limit=10)

    def test_rational_unsupported(self, westwick):
        with pytest.raises(UnsupportedField):
            exhaustive_rank_sweep(westwick)
