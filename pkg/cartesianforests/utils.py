"""
Shared helpers: the package errors, integer token parsing for the sequence format, and the settings we read from the environment (or a .env file).
"""

import os
from dataclasses import dataclass

from dotenv import load_dotenv

# Bounds of the element domain accepted from text input (signed 64-bit).
INT64_MIN = -(2**63)
INT64_MAX = 2**63 - 1


class CartesianForestError(Exception):
    """
    Root of every error raised by the package.
    """


class InvalidForestError(CartesianForestError, ValueError):
    """
    Raised for forests, Schröder trees or parentheses words that are not well-formed.
    """


class InvalidSequenceError(CartesianForestError, ValueError):

    def __init__(self, message: str, line: int = None) -> None:
        """
        Raised when a sequence cannot be read from text.

        Args:
            message (str): what went wrong.
            line (int, optional): the 1-based line number of the offending input, if known.
        """
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class WindowError(CartesianForestError, ValueError):
    """
    Raised for window lengths that do not fit the text, or slides past its end.
    """


class GeneratorSpecError(CartesianForestError, ValueError):
    """
    Raised for generator parameters that cannot be honoured (k = 0, infeasible entropy).
    """


class ParameterError(CartesianForestError, ValueError):
    """
    Raised for search parameters out of range (empty pattern, filter width, unknown kind).
    """


class CountMismatchError(CartesianForestError, ValueError):
    """
    Raised when the closed formula and the series iteration disagree.
    """


class BudgetError(CartesianForestError, ValueError):
    """
    Raised when a request is beyond a size guard (e.g., enumerating large forests).
    """


def parse_int64(token: str, line: int = None) -> int:
    """
    Converts a token into a signed 64-bit integer.

    Args:
        token (str): the token to convert.
        line (int, optional): line number used in the error message.

    Returns:
        int: the parsed value. Raises InvalidSequenceError for non-integers and overflow.
    """
    body = token[1:] if token[:1] in ("+", "-") else token
    if not body.isascii() or not body.isdigit():
        raise InvalidSequenceError(f"not an integer: {token!r}", line)
    value = int(token)
    if not INT64_MIN <= value <= INT64_MAX:
        raise InvalidSequenceError(f"integer out of 64-bit range: {token}", line)
    return value


def parse_sequence_line(text: str, line: int = None) -> tuple[int, ...]:
    """
    Parses one whitespace-separated line of integers.

    Args:
        text (str): the line content.
        line (int, optional): line number used in error messages.

    Returns:
        tuple[int, ...]: the sequence.
    """
    return tuple(parse_int64(token, line) for token in text.split())


def format_sequence(x) -> str:
    """
    Renders a sequence in the standard format (space-separated integers).
    """
    return " ".join(str(v) for v in x)


@dataclass(frozen=True)
class Settings:
    tau: int = 64
    trials: int = 1000
    seed: int = 0
    log_level: str = "WARNING"
    workers: int = 1
    run_slow: bool = False


def _env_int(name: str, default: int) -> int:
    value = os.getenv(name)
    if value is None or value.strip() == "":
        return default
    try:
        return int(value)
    except ValueError:
        raise CartesianForestError(f"{name} must be an integer, got {value!r}")


def load_settings() -> Settings:
    """
    Loads defaults from the environment. A .env file in the working directory is honoured (python-dotenv). Nothing is required; command-line flags always take precedence over these values.

    Returns:
        Settings: the resolved settings.
    """
    load_dotenv()
    return Settings(
        tau=_env_int("CFM_TAU", 64),
        trials=_env_int("CFM_TRIALS", 1000),
        seed=_env_int("CFM_SEED", 0),
        log_level=os.getenv("CFM_LOG_LEVEL", "WARNING").upper(),
        workers=_env_int("CFM_WORKERS", 1),
        run_slow=os.getenv("CFM_RUN_SLOW", "").strip().lower() in ("1", "true", "yes"),
    )
