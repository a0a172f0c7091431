"""
Constant-rank certification of skew matrices of linear forms.

A certificate combines three pieces of evidence for "rank A(x) = r at every nonzero x":

1. every principal (r+2)-sub-Pfaffian is the zero polynomial (rank <= r everywhere),
2. N sampled points all have rank exactly r,
3. optionally, the principal r-sub-Pfaffians have no common projective zero over the algebraic
   closure of GF(p), proved by a Gröbner basis containing a pure power of every variable.

Rational matrices are reduced mod p for step 3. The sub-Pfaffian scheme is projective over the
integers, so an empty fiber mod p implies an empty fiber in characteristic zero.
"""

from __future__ import annotations

import concurrent.futures
from collections import Counter
from dataclasses import dataclass, field, replace
from enum import Enum
from pathlib import Path
from typing import List, Literal, Optional

import numpy as np
from pydantic import BaseModel, Field, model_validator

import linalg
from console import LoggerProtocol, resolve_logger
from errors import (
    DegreeCapExceeded,
    NotSkew,
    OddRankRequested,
    TooLarge,
    UnsupportedField,
)
from functions import canonical_json
from groebner import (
    DEFAULT_DEGREE_CAP,
    DEFAULT_SEARCH_LIMIT,
    Emptiness,
    basis_digest,
    buchberger,
    normal_form,
    projective_emptiness,
)
from matrix_models import matrix_id
from pfaffian import PfaffianExpander, principal_subpfaffians
from polymat import (
    LinearMatrix,
    MultiPoly,
    ProjectivePoint,
    count_projective_points,
    format_monomial,
    projective_point_batches,
    random_point,
    rank_at,
)
from scalars import (
    RATIONAL_SAMPLE_BOUND,
    FieldKind,
    FieldSpec,
    ScalarField,
    field_for,
    sampling_extension_degree,
)
from settings import SkewRankSettings

SAMPLE_BLOCK = 64
REPLAY_POINTS = 8
MIN_SAMPLE_ORDER = 100
DEFAULT_SWEEP_LIMIT = 10_000_000


class Verdict(str, Enum):
    CERTIFIED = "certified"
    EVIDENCE_ONLY = "evidence_only"
    REFUTED = "refuted"


# ============================================================================
# Certificate models
# ============================================================================


class PointRecord(BaseModel):
    """A point with the rank observed there.

    Finite-field coordinates are raw integer representations (0 <= c < q), rational ones are integers.
    """

    field: FieldSpec
    coords: List[int]
    rank: int

    @classmethod
    def of(cls, x: ProjectivePoint, rank: int) -> "PointRecord":
        if x.field.is_finite:
            coords = [int(c) for c in x.coords]
        else:
            coords = [x.field.to_file_int(c) for c in x.coords]
        return cls(field=x.field.spec, coords=coords, rank=rank)

    def point(self) -> ProjectivePoint:
        field_ = field_for(self.field)
        if field_.is_finite:
            return ProjectivePoint(field_, tuple(int(c) for c in self.coords))
        return ProjectivePoint.of(field_, self.coords)


class UpperBoundProof(BaseModel):
    """All principal sub-Pfaffians of `size` are identically zero."""

    size: int
    subpfaffians: int


class SampleEvidence(BaseModel):
    count: int
    field: FieldSpec
    extension_degree: Optional[int] = None
    rational_bound: Optional[int] = None
    seed: int
    failures: int = 0
    replay: List[PointRecord] = Field(default_factory=list)


class PurePowerRecord(BaseModel):
    variable: int
    exponent: int
    generator: int
    monomial: str


class LowerBoundProof(BaseModel):
    """Gröbner emptiness proof of the size-r sub-Pfaffian locus over the algebraic closure of GF(prime)."""

    prime: int
    generators: int
    basis_size: int
    basis_digest: str
    ideal_degree_bound: int
    leading_terms: List[str]
    pure_powers: List[PurePowerRecord]


class Witness(BaseModel):
    reason: Literal["symbolic_upper_bound", "symbolic_lower_bound", "sample", "groebner"]
    point: PointRecord


class RankCertificate(BaseModel):
    matrix_id: str
    field: FieldSpec
    n: int
    d: int
    claimed_rank: int
    verdict: Verdict
    upper_bound_proof: Optional[UpperBoundProof] = None
    sample_evidence: Optional[SampleEvidence] = None
    lower_bound_proof: Optional[LowerBoundProof] = None
    witness: Optional[Witness] = None
    notes: List[str] = Field(default_factory=list)

    @model_validator(mode="after")
    def _check_verdict(self) -> "RankCertificate":
        proven = self.upper_bound_proof is not None and self.lower_bound_proof is not None
        if (self.verdict is Verdict.CERTIFIED) != proven:
            raise ValueError("a certified verdict needs both the upper and the lower bound proof")
        if (self.verdict is Verdict.REFUTED) != (self.witness is not None):
            raise ValueError("a refuted verdict needs exactly one recorded witness")
        return self

    @classmethod
    def from_json_text(cls, text: str) -> "RankCertificate":
        return cls.model_validate_json(text)

    @classmethod
    def from_path(cls, path: str | Path) -> "RankCertificate":
        return cls.from_json_text(Path(path).read_text(encoding="utf-8"))

    def to_json(self) -> str:
        return canonical_json(self.model_dump(mode="json", exclude_none=True))

    def write(self, path: str | Path) -> Path:
        p = Path(path)
        p.write_text(self.to_json(), encoding="utf-8")
        return p


# ============================================================================
# Options
# ============================================================================


@dataclass(frozen=True)
class CertifyOptions:
    """Knobs of `certify_constant_rank`; `from_settings` fills them from the environment."""

    samples: int = 1000
    prime: Optional[int] = None
    exact: bool = False
    seed: int = 0
    extension_degree: Optional[int] = None
    degree_cap: int = DEFAULT_DEGREE_CAP
    sample_workers: int = 1
    rational_sample_bound: int = RATIONAL_SAMPLE_BOUND
    witness_search_limit: int = DEFAULT_SEARCH_LIMIT

    @classmethod
    def from_settings(cls, settings: SkewRankSettings, **overrides) -> "CertifyOptions":
        base = cls(
            samples=settings.samples,
            prime=settings.default_prime,
            seed=settings.seed,
            extension_degree=settings.extension_degree,
            degree_cap=settings.degree_cap,
            sample_workers=settings.sample_workers,
            rational_sample_bound=settings.rational_sample_bound,
            witness_search_limit=settings.witness_search_limit,
        )
        return replace(base, **{k: v for k, v in overrides.items() if v is not None})


# ============================================================================
# Sampling
# ============================================================================


def sampling_field(A: LinearMatrix, extension_degree: int | None = None) -> ScalarField:
    """Field the sample points are drawn from.

    Prime fields are lifted to GF(p^e) with p^e >= 100 unless `extension_degree` is given.
    Extension fields and QQ are sampled as they are.
    """
    spec = A.spec
    if spec.kind is FieldKind.PRIME:
        e = extension_degree or sampling_extension_degree(spec.p, MIN_SAMPLE_ORDER)
        return A.field.lift(e)
    if extension_degree is not None and spec.kind is FieldKind.EXTENSION and extension_degree != spec.e:
        raise UnsupportedField(f"cannot sample {spec.label} matrices over degree {extension_degree}")
    return A.field


def _sample_block(
    A: LinearMatrix,
    target: ScalarField,
    count: int,
    seed: np.random.SeedSequence,
    bound: int,
) -> list[tuple[ProjectivePoint, int]]:
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        x = random_point(target, A.d, rng, bound)
        out.append((x, rank_at(A, x)))
    return out


def sample_ranks(
    A: LinearMatrix,
    count: int,
    seed: int,
    target: ScalarField | None = None,
    rational_bound: int = RATIONAL_SAMPLE_BOUND,
    workers: int = 1,
) -> list[tuple[ProjectivePoint, int]]:
    """Ranks at `count` random points, identical for every worker count.

    Points are drawn in blocks of SAMPLE_BLOCK, block i using the i-th child of SeedSequence(seed).
    """
    target = target or A.field
    blocks = [SAMPLE_BLOCK] * (count // SAMPLE_BLOCK)
    if count % SAMPLE_BLOCK:
        blocks.append(count % SAMPLE_BLOCK)
    seeds = np.random.SeedSequence(seed).spawn(len(blocks))
    A.stacked(target)  # fill the lift cache before threads share it

    def run(task: tuple[int, np.random.SeedSequence]) -> list[tuple[ProjectivePoint, int]]:
        return _sample_block(A, target, task[0], task[1], rational_bound)

    if workers <= 1 or len(blocks) <= 1:
        results = [run(task) for task in zip(blocks, seeds)]
    else:
        with concurrent.futures.ThreadPoolExecutor(max_workers=workers) as executor:
            results = list(executor.map(run, zip(blocks, seeds)))
    return [item for block in results for item in block]


# ============================================================================
# Certification
# ============================================================================


def _first_point(field_: ScalarField, d: int) -> ProjectivePoint:
    return ProjectivePoint(field_, (field_.one,) + (field_.zero,) * (d - 1))


def _exact_field_matrix(A: LinearMatrix, prime: int | None) -> LinearMatrix:
    if A.spec.kind is FieldKind.PRIME:
        return A
    if A.spec.kind is FieldKind.RATIONAL:
        if prime is None:
            raise ValueError("exact certification of a rational matrix needs a prime")
        return A.reduce_mod(prime)
    raise UnsupportedField(f"exact certification over {A.spec.label} is not supported; use the prime field")


def _find_rank_above(
    A: LinearMatrix,
    r: int,
    samples: list[tuple[ProjectivePoint, int]],
    target: ScalarField,
    search_limit: int,
) -> tuple[ProjectivePoint, int] | None:
    for x, rk in samples:
        if rk > r:
            return x, rk
    if not target.is_finite or count_projective_points(target.order, A.d) > search_limit:
        return None
    for batch in projective_point_batches(target, A.d):
        for row in np.asarray(batch.view(np.ndarray)):
            x = ProjectivePoint(target, tuple(int(c) for c in row))
            rk = rank_at(A, x)
            if rk > r:
                return x, rk
    return None


def certify_constant_rank(
    A: LinearMatrix,
    r: int,
    options: CertifyOptions | None = None,
    logger: LoggerProtocol | None = None,
) -> RankCertificate:
    """Certify that every nonzero point of A has rank exactly r.

    Args:
        A: Skew matrix of linear forms
        r: Claimed (even) rank
        options: Sample count, prime, exactness, seeds and limits
        logger: Logger for progress output

    Returns:
        A certificate whose verdict is certified, evidence_only or refuted

    Raises:
        NotSkew: If A is not skew-symmetric
        OddRankRequested: If r is odd
        DenominatorCollision: If exact reduction mod p of a rational matrix fails
    """
    logger = resolve_logger(logger)
    options = options or CertifyOptions()
    if not A.is_skew():
        raise NotSkew(f"{A!r} is not skew-symmetric")
    if r % 2 or r < 0:
        raise OddRankRequested(f"skew matrices have even rank, got {r}")

    header = dict(matrix_id=matrix_id(A), field=A.spec, n=A.n, d=A.d, claimed_rank=r)
    notes: list[str] = []
    target = sampling_field(A, options.extension_degree)
    bound = options.rational_sample_bound
    expander = PfaffianExpander.for_linear_matrix(A)

    with logger.group("upper bound"):
        upper = principal_subpfaffians(A, r + 2, expander) if r + 2 <= A.n else None
    if upper is not None and not upper.all_zero():
        logger.info(f"{len(upper.nonzero())} of {len(upper)} principal {r + 2}-sub-Pfaffians are nonzero")
        samples = sample_ranks(A, options.samples, options.seed, target, bound, options.sample_workers)
        found = _find_rank_above(A, r, samples, target, options.witness_search_limit)
        if found is None:
            notes.append(f"a {r + 2}-sub-Pfaffian is nonzero but no point of rank > {r} was found")
            return RankCertificate(**header, verdict=Verdict.EVIDENCE_ONLY, notes=notes)
        x, rk = found
        return RankCertificate(
            **header,
            verdict=Verdict.REFUTED,
            witness=Witness(reason="symbolic_upper_bound", point=PointRecord.of(x, rk)),
        )
    upper_proof = UpperBoundProof(size=r + 2, subpfaffians=len(upper) if upper is not None else 0)

    with logger.group("lower bound (symbolic)"):
        lower = principal_subpfaffians(A, r, expander) if r <= A.n else None
    if lower is None or lower.all_zero():
        x = _first_point(A.field, A.d)
        logger.info(f"all principal {r}-sub-Pfaffians vanish identically")
        return RankCertificate(
            **header,
            verdict=Verdict.REFUTED,
            upper_bound_proof=upper_proof,
            witness=Witness(reason="symbolic_lower_bound", point=PointRecord.of(x, rank_at(A, x))),
        )

    with logger.group(f"sampling {options.samples} points over {target.spec.label}"):
        samples = sample_ranks(A, options.samples, options.seed, target, bound, options.sample_workers)
    evidence = SampleEvidence(
        count=len(samples),
        field=target.spec,
        extension_degree=target.spec.e if target.spec.kind is FieldKind.EXTENSION else None,
        rational_bound=bound if target.spec.kind is FieldKind.RATIONAL else None,
        seed=options.seed,
        replay=[PointRecord.of(x, rk) for x, rk in samples[:REPLAY_POINTS]],
    )
    for x, rk in samples:
        if rk != r:
            logger.info(f"rank {rk} at sampled point {x!r}")
            failures = sum(1 for _, k in samples if k != r)
            return RankCertificate(
                **header,
                verdict=Verdict.REFUTED,
                upper_bound_proof=upper_proof,
                sample_evidence=evidence.model_copy(update={"failures": failures}),
                witness=Witness(reason="sample", point=PointRecord.of(x, rk)),
            )
    logger.info(f"rank {r} at all {len(samples)} sampled points over {target.spec.label}")

    if not options.exact:
        return RankCertificate(
            **header, verdict=Verdict.EVIDENCE_ONLY, upper_bound_proof=upper_proof, sample_evidence=evidence
        )

    Ap = _exact_field_matrix(A, options.prime)
    p = Ap.field.characteristic
    gens = [g for g in principal_subpfaffians(Ap, r).polys if not g.is_zero()]
    evidence_only = dict(header, verdict=Verdict.EVIDENCE_ONLY, upper_bound_proof=upper_proof, sample_evidence=evidence)
    if not gens:
        notes.append(f"all {r}-sub-Pfaffians vanish mod {p}")
        if A.spec.kind is FieldKind.RATIONAL:
            return RankCertificate(**evidence_only, notes=notes)
        x = _first_point(Ap.field, Ap.d)
        return RankCertificate(
            **header,
            verdict=Verdict.REFUTED,
            upper_bound_proof=upper_proof,
            sample_evidence=evidence,
            witness=Witness(reason="groebner", point=PointRecord.of(x, rank_at(Ap, x))),
        )

    try:
        with logger.group(f"Groebner basis of {len(gens)} sub-Pfaffians over GF({p})"):
            B = buchberger(gens, degree_cap=options.degree_cap, logger=logger)
    except DegreeCapExceeded as exc:
        logger.warn(f"exact step undecided: {exc}")
        notes.append(str(exc))
        return RankCertificate(**evidence_only, notes=notes)

    with logger.group("projective emptiness"):
        result = projective_emptiness(B, search_limit=options.witness_search_limit, logger=logger)
    logger.info(f"emptiness over GF({p}): {result.status.value}")

    if result.status is Emptiness.EMPTY:
        proof = LowerBoundProof(
            prime=p,
            generators=len(gens),
            basis_size=len(B),
            basis_digest=basis_digest(B),
            ideal_degree_bound=B.ideal_degree_bound,
            leading_terms=[format_monomial(lt) or "1" for lt in B.leading_terms()],
            pure_powers=[
                PurePowerRecord(
                    variable=pp.variable, exponent=pp.exponent, generator=pp.generator, monomial=pp.format(B.nvars)
                )
                for pp in result.pure_powers
            ],
        )
        return RankCertificate(
            **header,
            verdict=Verdict.CERTIFIED,
            upper_bound_proof=upper_proof,
            sample_evidence=evidence,
            lower_bound_proof=proof,
            notes=notes,
        )
    if result.status is Emptiness.NONEMPTY_WITNESSED:
        x = result.witness
        if A.spec.kind is FieldKind.RATIONAL:
            notes.append(f"rank drops mod {p} at {x!r}; bad reduction cannot be excluded")
            return RankCertificate(**evidence_only, notes=notes)
        return RankCertificate(
            **header,
            verdict=Verdict.REFUTED,
            upper_bound_proof=upper_proof,
            sample_evidence=evidence,
            witness=Witness(reason="groebner", point=PointRecord.of(x, rank_at(Ap, x))),
            notes=notes,
        )
    notes.append(f"no pure power for every variable and no common zero over GF({p}^e), e in {result.searched_degrees}")
    return RankCertificate(**evidence_only, notes=notes)


# ============================================================================
# Exhaustive sweep and replay
# ============================================================================


def exhaustive_rank_sweep(
    A: LinearMatrix,
    extension_degree: int = 1,
    limit: int = DEFAULT_SWEEP_LIMIT,
    logger: LoggerProtocol | None = None,
) -> dict[int, int]:
    """Histogram rank -> number of points over all of P^{d-1}(GF(p^e)).

    Raises:
        UnsupportedField: If A is not over a finite field
        TooLarge: If the projective space has more than `limit` points
    """
    logger = resolve_logger(logger)
    if not A.field.is_finite:
        raise UnsupportedField("exhaustive sweeps need a finite field")
    target = A.field.lift(extension_degree)
    total = count_projective_points(target.order, A.d)
    if total > limit:
        raise TooLarge(f"P^{A.d - 1}({target.spec.label}) has {total} points, limit is {limit}")
    flat = A.stacked(target).reshape(A.d, A.n * A.n)
    histogram: Counter[int] = Counter()
    with logger.group(f"sweeping {total} points over {target.spec.label}"):
        for batch in projective_point_batches(target, A.d):
            values = (batch @ flat).reshape(-1, A.n, A.n)
            for M in values:
                histogram[linalg.rank(target, M)] += 1
    return dict(sorted(histogram.items()))


@dataclass
class CertificateCheck:
    ok: bool = True
    problems: list[str] = field(default_factory=list)

    def fail(self, message: str) -> None:
        self.ok = False
        self.problems.append(message)


def _pure_power(nvars: int, field_: ScalarField, variable: int, exponent: int) -> MultiPoly:
    exps = [0] * nvars
    exps[variable] = exponent
    return MultiPoly(field_, nvars, {tuple(exps): field_.one})


def verify_certificate(
    A: LinearMatrix,
    cert: RankCertificate,
    degree_cap: int = DEFAULT_DEGREE_CAP,
    logger: LoggerProtocol | None = None,
) -> CertificateCheck:
    """Replay a certificate against A: matrix hash, recorded points and the Gröbner proof."""
    logger = resolve_logger(logger)
    check = CertificateCheck()
    if matrix_id(A) != cert.matrix_id:
        check.fail(f"matrix hash {matrix_id(A)} does not match certificate {cert.matrix_id}")
        return check
    r = cert.claimed_rank
    if cert.sample_evidence is not None:
        for record in cert.sample_evidence.replay:
            rk = rank_at(A, record.point())
            if rk != record.rank:
                check.fail(f"replayed rank {rk} differs from recorded {record.rank} at {record.coords}")
    if cert.witness is not None:
        x = cert.witness.point.point()
        source = A
        if cert.witness.reason == "groebner" and A.spec.kind is FieldKind.RATIONAL:
            source = A.reduce_mod(x.field.characteristic)
        rk = rank_at(source, x)
        if rk == r:
            check.fail(f"witness {cert.witness.point.coords} has the claimed rank {r}")
    if cert.upper_bound_proof is not None and r + 2 <= A.n:
        if not principal_subpfaffians(A, r + 2).all_zero():
            check.fail(f"a principal {r + 2}-sub-Pfaffian is nonzero")
    proof = cert.lower_bound_proof
    if proof is not None:
        with logger.group("replaying Groebner proof"):
            Ap = _exact_field_matrix(A, proof.prime)
            gens = [g for g in principal_subpfaffians(Ap, r).polys if not g.is_zero()]
            B = buchberger(gens, degree_cap=degree_cap, logger=logger)
        if basis_digest(B) != proof.basis_digest:
            check.fail("Groebner basis digest does not match")
        for pp in proof.pure_powers:
            power = _pure_power(B.nvars, B.field, pp.variable, pp.exponent)
            if not normal_form(power, B).is_zero():
                check.fail(f"{pp.monomial} is not in the sub-Pfaffian ideal")
        if len({pp.variable for pp in proof.pure_powers}) != A.d:
            check.fail("pure powers do not cover every variable")
    return check


__all__ = [
    "Verdict",
    "PointRecord",
    "UpperBoundProof",
    "SampleEvidence",
    "PurePowerRecord",
    "LowerBoundProof",
    "Witness",
    "RankCertificate",
    "CertifyOptions",
    "sampling_field",
    "sample_ranks",
    "certify_constant_rank",
    "exhaustive_rank_sweep",
    "CertificateCheck",
    "verify_certificate",
]
