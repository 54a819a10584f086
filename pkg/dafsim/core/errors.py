from __future__ import annotations

from typing import Any, Iterable


class DafError(Exception):
    """Base error; ``exit_code`` is what the CLI returns for it."""

    exit_code: int = 1


class ArgumentError(DafError, ValueError):
    """Argument outside the operation's domain."""


class PreconditionError(DafError):
    """Operation called without the data it needs (e.g. genie gains)."""


class ConfigError(DafError):
    """Scenario file could not be parsed or validated."""

    exit_code = 2

    def __init__(self, problems: Iterable[str] | str):
        if isinstance(problems, str):
            problems = [problems]
        self.problems: list[str] = [str(p) for p in problems]
        super().__init__("; ".join(self.problems) or "invalid configuration")


class NumericError(DafError, ArithmeticError):
    """Numerical evaluation failed; ``diagnostics`` says where."""

    exit_code = 3

    def __init__(self, msg: str, diagnostics: dict[str, Any] | None = None):
        super().__init__(msg)
        self.diagnostics: dict[str, Any] = dict(diagnostics or {})

    def __str__(self) -> str:
        base = super().__str__()
        if not self.diagnostics:
            return base
        extra = ", ".join(f"{k}={v!r}" for k, v in self.diagnostics.items())
        return f"{base} ({extra})"


def require(condition: bool, msg: str = "invalid argument", exc: type[DafError] = ArgumentError) -> None:
    if not condition:
        raise exc(msg)
