"""
Configuration settings for skewrank.

This module provides the settings class that loads configuration from environment
variables or .env files using pydantic-settings.

"""

from __future__ import annotations
from typing import Annotated

from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class SkewRankSettings(BaseSettings):
    """Settings for certification, sampling and search limits.

    This class uses pydantic-settings to load configuration from environment
    variables or a .env file. All environment variables are prefixed with `SKEWRANK_`.
    Every variable has a default, so an empty environment is valid.

    Environment Variables:
        SKEWRANK_SEED: Root seed for every randomized command.
        SKEWRANK_SAMPLES: Number of sampled points during certification.
        SKEWRANK_DEFAULT_PRIME: Prime used by exact certification of rational matrices.
        SKEWRANK_EXTENSION_DEGREE: Force the sampling extension degree over finite fields.
        SKEWRANK_DEGREE_CAP: Largest S-pair degree Buchberger may reach.
        SKEWRANK_MAX_RETRIES: Random draws in skew-symmetrization before the grid fallback.
        SKEWRANK_SAMPLE_WORKERS: Threads used for point sampling.
        SKEWRANK_RATIONAL_SAMPLE_BOUND: Integer coordinates are drawn from [-B, B] over QQ.
        SKEWRANK_SWEEP_LIMIT: Largest number of points an exhaustive sweep may visit.
        SKEWRANK_WITNESS_SEARCH_LIMIT: Largest number of points searched for a common zero.
        SKEWRANK_LOG_LEVEL: Console log level.

    Example .env file:
        SKEWRANK_SEED=42
        SKEWRANK_SAMPLES=2000

    """

    model_config = SettingsConfigDict(
        env_prefix="SKEWRANK_",
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
    )

    seed: Annotated[
        int,
        Field(default=0, ge=0, description="Root seed for randomized commands"),
    ]

    samples: Annotated[
        int,
        Field(default=1000, ge=1, description="Sampled points per certification"),
    ]

    default_prime: Annotated[
        int,
        Field(default=101, ge=3, description="Prime used to reduce rational matrices for exact certificates"),
    ]

    extension_degree: Annotated[
        int | None,
        Field(
            default=None,
            ge=1,
            description="Sampling extension degree over finite fields; None picks the smallest e with p^e >= 100",
        ),
    ]

    degree_cap: Annotated[
        int,
        Field(default=40, ge=1, description="Buchberger gives up above this S-pair degree"),
    ]

    max_retries: Annotated[
        int,
        Field(default=20, ge=1, description="Random draws when searching for an invertible skewifier"),
    ]

    sample_workers: Annotated[
        int,
        Field(default=1, ge=1, description="Worker threads used for point sampling"),
    ]

    rational_sample_bound: Annotated[
        int,
        Field(default=10_000, ge=1, description="Rational sample coordinates are integers in [-B, B]"),
    ]

    sweep_limit: Annotated[
        int,
        Field(default=10_000_000, ge=1, description="Maximum points visited by an exhaustive rank sweep"),
    ]

    witness_search_limit: Annotated[
        int,
        Field(default=200_000, ge=0, description="Maximum points searched for a common zero of a Groebner basis"),
    ]

    log_level: Annotated[
        str,
        Field(default="INFO", description="Console log level"),
    ]

    @field_validator("default_prime")
    @classmethod
    def _odd_prime(cls, value: int) -> int:
        from sympy import isprime

        if value == 2 or not isprime(value):
            raise ValueError(f"default_prime must be an odd prime, got {value}")
        return value

    @field_validator("log_level")
    @classmethod
    def _upper_level(cls, value: str) -> str:
        level = value.upper()
        if level not in {"DEBUG", "INFO", "WARNING", "ERROR"}:
            raise ValueError(f"unknown log level {value!r}")
        return level


__all__ = [
    "SkewRankSettings",
]
