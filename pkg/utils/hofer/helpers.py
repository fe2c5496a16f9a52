"""
Shared helpers: exact rational parsing/formatting, logging setup and debug traces
"""
import logging
import os
import sys
from fractions import Fraction
from functools import wraps
from typing import Iterable, List, Optional, Union

from rich.console import Console
from rich.logging import RichHandler

try:
    from dotenv import load_dotenv
    load_dotenv()
except ImportError:
    pass

RationalLike = Union[Fraction, int, str]

_TRUTHY = {"1", "true", "yes", "on"}


def parse_rational(text: RationalLike) -> Fraction:
    """
    Parse "num/den", an integer or a finite decimal string into an exact Fraction

    Raises:
        ValueError: If the text is not a rational literal
    """
    if isinstance(text, Fraction):
        return text
    if isinstance(text, bool):
        raise ValueError(f"Not a rational number: {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str):
        raise ValueError(f"Not a rational number: {text!r}")
    cleaned = text.strip()
    if not cleaned:
        raise ValueError("Empty rational literal")
    try:
        return Fraction(cleaned)
    except (ValueError, ZeroDivisionError) as e:
        raise ValueError(f"Not a rational number: {text!r}") from e


def format_rational(value: Fraction) -> str:
    """Canonical "num/den" rendering (positive denominator, gcd 1, "0/1" for zero)"""
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


def parse_rational_list(text: str) -> List[Fraction]:
    """Parse a comma-separated list such as "0,1/5" (empty string gives an empty list)"""
    if not text.strip():
        return []
    return [parse_rational(part) for part in text.split(",")]


def format_rational_list(values: Iterable[Fraction]) -> List[str]:
    return [format_rational(v) for v in values]


def env_debug_enabled() -> bool:
    """Check the HOFER_DEBUG environment variable"""
    return os.environ.get("HOFER_DEBUG", "").strip().lower() in _TRUTHY


def setup_logging(verbose: bool = False, console: Optional[Console] = None) -> None:
    """
    Install a RichHandler on the root logger (CLI only; library modules never call this)

    Args:
        verbose: Use DEBUG level instead of INFO
        console: Console to log to; defaults to a stderr console
    """
    level = logging.DEBUG if (verbose or env_debug_enabled()) else logging.INFO
    handler = RichHandler(
        console=console or Console(stderr=True),
        show_time=False,
        show_path=False,
        markup=False,
    )
    logging.basicConfig(
        level=level,
        format="%(name)s: %(message)s",
        handlers=[handler],
        force=True,
    )


def debug_only(func):
    @wraps(func)
    def wrapper(*args, **kwargs):
        if env_debug_enabled():
            return func(*args, **kwargs)
    return wrapper


@debug_only
def debug_print(*args, **kwargs):
    kwargs.setdefault("file", sys.stderr)
    print(*args, **kwargs)
