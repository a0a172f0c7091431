"""Console logging for skewrank.

Library code only talks to `LoggerProtocol`; the CLI builds a `RichLogger` and passes it
down, tests pass the `MockLogger` from conftest.
"""

from __future__ import annotations

import logging
import time
from contextlib import contextmanager
from typing import Any, Iterator, Protocol, runtime_checkable

from rich.console import Console
from rich.logging import RichHandler

LOGGER_NAME = "skewrank"


@runtime_checkable
class LoggerProtocol(Protocol):
    """Protocol for logging operations."""

    def info(self, message: str) -> None: ...
    def debug(self, message: str) -> None: ...
    def warn(self, message: str) -> None: ...
    def error(self, message: str) -> None: ...
    def group(self, name: str) -> Any: ...


class RichLogger:
    """`LoggerProtocol` implementation on top of stdlib logging with a rich handler on stderr."""

    def __init__(self, level: str = "INFO", console: Console | None = None):
        self._logger = logging.getLogger(LOGGER_NAME)
        self._logger.propagate = False
        if not self._logger.handlers:
            handler = RichHandler(
                console=console or Console(stderr=True),
                show_path=False,
                markup=False,
                rich_tracebacks=True,
            )
            handler.setFormatter(logging.Formatter("%(message)s"))
            self._logger.addHandler(handler)
        self.set_level(level)

    def set_level(self, level: str) -> None:
        self._logger.setLevel(level.upper())

    def info(self, message: str) -> None:
        self._logger.info(message)

    def debug(self, message: str) -> None:
        self._logger.debug(message)

    def warn(self, message: str) -> None:
        self._logger.warning(message)

    def error(self, message: str) -> None:
        self._logger.error(message)

    @contextmanager
    def group(self, name: str) -> Iterator[None]:
        start = time.perf_counter()
        self._logger.debug(f"> {name}")
        try:
            yield None
        finally:
            self._logger.debug(f"< {name} ({time.perf_counter() - start:.2f}s)")


_default: RichLogger | None = None


def default_logger() -> RichLogger:
    """Process-wide console logger, created on first use."""
    global _default
    if _default is None:
        _default = RichLogger(level="WARNING")
    return _default


def resolve_logger(logger: LoggerProtocol | None) -> LoggerProtocol:
    return logger if logger is not None else default_logger()


__all__ = [
    "LoggerProtocol",
    "RichLogger",
    "default_logger",
    "resolve_logger",
]
