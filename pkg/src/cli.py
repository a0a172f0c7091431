#!/usr/bin/env python3

# skewrank
# Certify, transform and inspect skew-symmetric matrices of linear forms of constant rank.

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Callable, List, Optional

import typer
from pydantic import ValidationError
from rich.console import Console
from rich.table import Table

from console import LoggerProtocol, RichLogger
from errors import SkewRankError
from functions import canonical_json, parse_int_vector
from matrix_models import MatrixFile, ScalarMatrixFile
from polymat import LinearMatrix, corpus_load, corpus_names
from scalars import make_rng
from settings import SkewRankSettings

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_REFUTED = 2

app = typer.Typer(
    name="skewrank",
    help="Constant-rank skew-symmetric matrices of linear forms.",
    no_args_is_help=True,
    add_completion=False,
)
stdout = Console(soft_wrap=True)


# ============================================================================
# Shared state
# ============================================================================


@dataclass
class CliState:
    """Settings and logger shared by every subcommand of one invocation."""

    settings: SkewRankSettings
    logger: LoggerProtocol


def _state(ctx: typer.Context) -> CliState:
    return ctx.obj


def _fail(logger: LoggerProtocol, message: str) -> typer.Exit:
    logger.error(message)
    return typer.Exit(EXIT_ERROR)


def _guarded(state: CliState, action: Callable[[], int]) -> None:
    """Run a command body; library and parse errors exit 1 with a one-line diagnostic."""
    try:
        code = action()
    except (SkewRankError, ValidationError, OSError, KeyError, ValueError, json.JSONDecodeError) as exc:
        raise _fail(state.logger, f"{type(exc).__name__}: {exc}") from exc
    raise typer.Exit(code)


@app.callback()
def setup(
    ctx: typer.Context,
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Log debug output to standard error"),
) -> None:
    """Load settings once per invocation."""
    logger = RichLogger(level="INFO")
    try:
        settings = SkewRankSettings()
    except ValidationError as exc:
        logger.error(f"Failed to load skewrank settings: {exc}")
        raise typer.Exit(EXIT_ERROR) from exc
    logger.set_level("DEBUG" if verbose else settings.log_level)
    logger.debug(f"Loaded settings: {settings.model_dump_json()}")
    ctx.obj = CliState(settings=settings, logger=logger)


# ============================================================================
# Input loading
# ============================================================================


def load_matrix(source: str, logger: LoggerProtocol) -> LinearMatrix:
    """Load a matrix from a JSON file path, falling back to a bundled corpus name.

    Args:
        source: Path of a matrix file, or the name of a corpus matrix
        logger: Logger for output

    Returns:
        The parsed matrix

    Raises:
        FileNotFoundError: If source is neither an existing file nor a corpus name
    """
    path = Path(source)
    if path.exists():
        logger.debug(f"Reading matrix file: {path}")
        return MatrixFile.from_path(path).to_linear_matrix()
    if source in corpus_names():
        logger.debug(f"Using bundled corpus matrix: {source}")
        return corpus_load(source)
    raise FileNotFoundError(f"{source} is neither a file nor one of {', '.join(corpus_names())}")


def _output_path(source: str, suffix: str, output: Optional[Path]) -> Path:
    if output is not None:
        return output
    path = Path(source)
    base = path.with_suffix("") if path.exists() else Path(source)
    return base.parent / f"{base.name}{suffix}"


# ============================================================================
# Commands
# ============================================================================


def run_certify(
    source: str,
    rank: int,
    settings: SkewRankSettings,
    logger: LoggerProtocol,
    samples: Optional[int] = None,
    prime: Optional[int] = None,
    exact: bool = False,
    seed: Optional[int] = None,
    workers: Optional[int] = None,
    output: Optional[Path] = None,
) -> int:
    """Certify constant rank and write the certificate; returns the exit code."""
    from certify import CertifyOptions, Verdict, certify_constant_rank

    A = load_matrix(source, logger)
    if prime is not None and A.spec.p is not None and prime != A.spec.p:
        raise ValueError(f"--prime {prime} does not match the characteristic of {A.spec.label}")
    options = CertifyOptions.from_settings(
        settings, samples=samples, prime=prime, exact=exact, seed=seed, sample_workers=workers
    )
    logger.info(f"Certifying rank {rank} for {A!r}")
    cert = certify_constant_rank(A, rank, options, logger=logger)
    target = cert.write(_output_path(source, ".certificate.json", output))
    logger.info(f"Certificate written to {target}")
    stdout.print(f"{cert.verdict.value} {cert.matrix_id}")
    for note in cert.notes:
        logger.warn(note)
    if cert.verdict is Verdict.EVIDENCE_ONLY:
        if exact:
            logger.error("exact certification was requested but only evidence was obtained")
            return EXIT_ERROR
        logger.warn("constant rank is supported by evidence only; pass --exact for a proof")
    return EXIT_REFUTED if cert.verdict is Verdict.REFUTED else EXIT_OK


@app.command()
def certify(
    ctx: typer.Context,
    source: str = typer.Argument(..., help="Matrix file or corpus name"),
    rank: int = typer.Option(..., "--rank", "-r", help="Claimed constant rank"),
    samples: Optional[int] = typer.Option(None, "--samples", "-n", help="Sampled points"),
    prime: Optional[int] = typer.Option(None, "--prime", "-p", help="Prime for exact certification of QQ input"),
    exact: bool = typer.Option(False, "--exact", help="Prove the lower bound with a Groebner basis"),
    seed: Optional[int] = typer.Option(None, "--seed", help="Root seed"),
    workers: Optional[int] = typer.Option(None, "--workers", help="Sampling threads"),
    output: Optional[Path] = typer.Option(None, "--output", "-o", help="Certificate path"),
) -> None:
    """Certify that every nonzero point has the given rank."""
    state = _state(ctx)
    _guarded(
        state,
        lambda: run_certify(source, rank, state.settings, state.logger, samples, prime, exact, seed, workers, output),
    )


def run_verify(source: str, certificate: Path, settings: SkewRankSettings, logger: LoggerProtocol) -> int:
    from certify import RankCertificate, verify_certificate

    A = load_matrix(source, logger)
    cert = RankCertificate.from_path(certificate)
    check = verify_certificate(A, cert, degree_cap=settings.degree_cap, logger=logger)
    for problem in check.problems:
        logger.error(problem)
    stdout.print("valid" if check.ok else "invalid")
    return EXIT_OK if check.ok else EXIT_REFUTED


@app.command()
def verify(
    ctx: typer.Context,
    source: str = typer.Argument(..., help="Matrix file or corpus name"),
    certificate: Path = typer.Argument(..., help="Certificate written by `certify`"),
) -> None:
    """Replay a certificate against its matrix."""
    state = _state(ctx)
    _guarded(state, lambda: run_verify(source, certificate, state.settings, state.logger))


def run_pfaffian(source: str, size: Optional[int], logger: LoggerProtocol) -> int:
    from pfaffian import principal_subpfaffians, symbolic_rank_upper_bound

    A = load_matrix(source, logger)
    size = A.n if size is None else size
    system = principal_subpfaffians(A, size)
    for subset, poly in zip(system.subsets, system.polys):
        label = ",".join(str(i + 1) for i in subset)
        stdout.print(f"[{label}] {poly.format()}", highlight=False)
    logger.info(f"{len(system.nonzero())} of {len(system)} principal {size}-sub-Pfaffians are nonzero")
    logger.info(f"symbolic rank upper bound: {symbolic_rank_upper_bound(A)}")
    return EXIT_OK


@app.command()
def pfaffian(
    ctx: typer.Context,
    source: str = typer.Argument(..., help="Matrix file or corpus name"),
    size: Optional[int] = typer.Option(None, "--size", "-s", help="Sub-Pfaffian size (default: full)"),
) -> None:
    """Print the principal sub-Pfaffians of one size."""
    state = _state(ctx)
    _guarded(state, lambda: run_pfaffian(source, size, state.logger))


def run_skewify(
    source: str,
    settings: SkewRankSettings,
    logger: LoggerProtocol,
    seed: Optional[int] = None,
    output_dir: Optional[Path] = None,
) -> int:
    from skewsym import skew_symmetrize

    B = load_matrix(source, logger)
    rng = make_rng(settings.seed if seed is None else seed)
    found = skew_symmetrize(B, rng, max_retries=settings.max_retries, logger=logger)
    stem = _output_path(source, "", None)
    directory = output_dir or stem.parent
    skew_path = MatrixFile.from_linear_matrix(found.result).write(directory / f"{stem.name}.skew.json")
    delta_path = directory / f"{stem.name}.delta.json"
    delta_path.write_text(ScalarMatrixFile.from_array(found.field.spec, found.delta).to_json(), encoding="utf-8")
    logger.info(f"solution space of dimension {found.solution_dim}, {found.draws} draw(s)")
    stdout.print(f"{skew_path}\n{delta_path}", highlight=False)
    return EXIT_OK


@app.command()
def skewify(
    ctx: typer.Context,
    source: str = typer.Argument(..., help="Matrix file or corpus name"),
    seed: Optional[int] = typer.Option(None, "--seed", help="Seed for the random draws"),
    output_dir: Optional[Path] = typer.Option(None, "--output-dir", help="Directory for the output files"),
) -> None:
    """Find an invertible Δ making ΔB skew-symmetric."""
    state = _state(ctx)
    _guarded(state, lambda: run_skewify(source, state.settings, state.logger, seed, output_dir))


def run_lines(
    source: str,
    settings: SkewRankSettings,
    logger: LoggerProtocol,
    line: Optional[List[str]] = None,
    random_count: Optional[int] = None,
    seed: Optional[int] = None,
) -> int:
    from lines import Line, jumping_order_of, random_lines, splitting_profiles

    A = load_matrix(source, logger)
    if line:
        if len(line) != 2:
            raise ValueError("--line takes exactly two basis vectors")
        chosen = [Line.from_ints(A.field, parse_int_vector(line[0]), parse_int_vector(line[1]))]
    elif random_count:
        rng = make_rng(settings.seed if seed is None else seed)
        chosen = random_lines(A.field, A.d, random_count, rng, settings.rational_sample_bound)
    else:
        raise ValueError("pass either --line twice or --random COUNT")
    for _, profile in splitting_profiles(A, chosen, logger=logger):
        suffix = ""
        if profile.corank == 2:
            try:
                suffix = f" jumping order {jumping_order_of(profile)}"
            except SkewRankError as exc:
                suffix = f" ({exc})"
        stdout.print(f"{profile.as_list()}{suffix}", highlight=False)
    return EXIT_OK


@app.command()
def lines(
    ctx: typer.Context,
    source: str = typer.Argument(..., help="Matrix file or corpus name"),
    line: Optional[List[str]] = typer.Option(None, "--line", help="Line basis vector, e.g. 1,0,0,0 (twice)"),
    random_count: Optional[int] = typer.Option(None, "--random", help="Number of random lines"),
    seed: Optional[int] = typer.Option(None, "--seed", help="Seed for random lines"),
) -> None:
    """Minimal indices of the matrix restricted to lines."""
    state = _state(ctx)
    _guarded(state, lambda: run_lines(source, state.settings, state.logger, line, random_count, seed))


def _report_table(report: Any) -> Table:
    table = Table(title=f"constant rank {report.r} in size {report.size}")
    table.add_column("invariant")
    table.add_column("value")
    shape = report.resolution
    rows = [
        ("charge k", report.k),
        ("Westwick bounds", report.westwick_bounds),
        ("symmetric bound", report.symmetric_space_bound),
        ("cone middle rank", report.cone_middle_rank),
        ("diamond dimensions", report.diamond_dims),
        ("first section", f"h0(E({report.first_section_twist})) = {report.first_section_h0}"),
        ("resolution (a, b, c)", (shape["a"], shape["b"], shape["c"])),
        (f"χ(S²E({report.sym2_twist}))", report.chi_sym2),
        ("h2 Hilbert function", report.h2_hilbert_function),
        ("expected cone table", report.expected_cone_table),
        ("computed cone table", report.computed_cone_table),
    ]
    for name, value in rows:
        table.add_row(name, str(value))
    return table


def run_numerology(rank: int, as_json: bool, logger: LoggerProtocol) -> int:
    from numerology import numerology_report

    report = numerology_report(rank)
    if as_json:
        stdout.print(canonical_json(report.model_dump(mode="json")), end="", highlight=False)
    else:
        stdout.print(_report_table(report))
    if report.expected_cone_table != report.computed_cone_table:
        logger.warn("computed cone table differs from the expected one")
    return EXIT_OK


@app.command()
def numerology(
    ctx: typer.Context,
    rank: int = typer.Option(..., "--rank", "-r", help="Allowed rank r (8, 12, 20, 24, ...)"),
    as_json: bool = typer.Option(False, "--json", help="Print the report as JSON"),
) -> None:
    """Invariants attached to constant rank r."""
    state = _state(ctx)
    _guarded(state, lambda: run_numerology(rank, as_json, state.logger))


def run_corpus(name: str, output: Optional[Path], logger: LoggerProtocol) -> int:
    A = corpus_load(name)
    path = MatrixFile.from_linear_matrix(A).write(output or Path(f"{name}.json"))
    logger.info(f"Wrote {A!r} to {path}")
    stdout.print(str(path), highlight=False)
    return EXIT_OK


@app.command()
def corpus(
    ctx: typer.Context,
    name: str = typer.Argument(..., help=f"One of: {', '.join(corpus_names())}"),
    output: Optional[Path] = typer.Option(None, "--output", "-o", help="Output path (default NAME.json)"),
) -> None:
    """Write a bundled matrix as a matrix file."""
    state = _state(ctx)
    _guarded(state, lambda: run_corpus(name, output, state.logger))


def run_sweep(source: str, extension_degree: int, settings: SkewRankSettings, logger: LoggerProtocol) -> int:
    from certify import exhaustive_rank_sweep

    A = load_matrix(source, logger)
    histogram = exhaustive_rank_sweep(A, extension_degree, limit=settings.sweep_limit, logger=logger)
    stdout.print(canonical_json({str(k): v for k, v in histogram.items()}), end="", highlight=False)
    return EXIT_OK


@app.command()
def sweep(
    ctx: typer.Context,
    source: str = typer.Argument(..., help="Matrix file or corpus name (finite field)"),
    extension_degree: int = typer.Option(1, "--extension-degree", "-e", help="Sweep P^{d-1}(GF(p^e))"),
) -> None:
    """Rank histogram over every point of projective space."""
    state = _state(ctx)
    _guarded(state, lambda: run_sweep(source, extension_degree, state.settings, state.logger))


# ============================================================================
# Module-level execution
# ============================================================================


def main() -> None:
    """Console entry point."""
    app()


if __name__ == "__main__":
    main()
