"""
Logging for homleib.

One ``homleib`` logger with a rich console handler on stderr and an optional
file handler. Records carry the algebra, identity and check being worked on;
the fields live in a context variable so evaluation threads never see each
other's context.
"""

import logging
import time
from contextlib import contextmanager
from contextvars import ContextVar
from functools import wraps
from pathlib import Path
from typing import Dict, Optional

from rich.console import Console
from rich.logging import RichHandler

from homleib.core.formatting import format_time

# Diagnostics go to stderr; reports own stdout
console = Console(stderr=True)

LOGGER_NAME = "homleib"
FILE_FORMAT = "%(asctime)s - %(levelname)s - %(message)s"
CONTEXT_FIELDS = ("algebra", "identity", "check")

_context: ContextVar[Dict[str, str]] = ContextVar("homleib_log_context", default={})
_logger: Optional[logging.Logger] = None


class ContextFilter(logging.Filter):
    """Copy the active context fields onto every record."""

    def filter(self, record):
        active = _context.get()
        for name in CONTEXT_FIELDS:
            setattr(record, name, active.get(name, ""))
        return True


class HomLeibLogFormatter(logging.Formatter):
    """File formatter: ``[algebra=..., identity=...] <message>``."""

    def format(self, record):
        tags = [f"{name}={getattr(record, name)}" for name in CONTEXT_FIELDS if getattr(record, name, "")]
        message = super().format(record)
        return f"[{', '.join(tags)}] {message}" if tags else message


def _console_level(debug: bool, verbose: bool) -> int:
    if debug:
        return logging.DEBUG
    return logging.INFO if verbose else logging.WARNING


def setup_logger(debug: bool = False, log_file: Optional[Path] = None, verbose: bool = False) -> logging.Logger:
    """
    Build the shared logger once.

    The console shows warnings, or info with ``verbose``, or everything
    with ``debug``; a log file always receives everything.
    """
    global _logger
    if _logger is not None:
        return _logger

    logger = logging.getLogger(LOGGER_NAME)
    logger.setLevel(logging.DEBUG)
    logger.handlers.clear()
    logger.filters.clear()
    logger.propagate = False
    logger.addFilter(ContextFilter())

    handler = RichHandler(
        console=console,
        show_time=False,
        show_path=debug,
        rich_tracebacks=True,
        tracebacks_show_locals=debug,
        markup=False,
    )
    handler.setLevel(_console_level(debug, verbose))
    logger.addHandler(handler)

    if log_file:
        file_handler = logging.FileHandler(log_file)
        file_handler.setLevel(logging.DEBUG)
        file_handler.setFormatter(HomLeibLogFormatter(FILE_FORMAT))
        logger.addHandler(file_handler)

    _logger = logger
    return logger


def reset_logger() -> None:
    """Close handlers so the next call reconfigures (and releases any log file)."""
    global _logger
    if _logger is not None:
        for handler in list(_logger.handlers):
            handler.close()
        _logger.handlers.clear()
        _logger.filters.clear()
    _logger = None


def get_logger() -> logging.Logger:
    return setup_logger()


@contextmanager
def log_context(**fields: Optional[str]):
    """
    Tag records logged inside the block.

    Example:
        with log_context(algebra="twodim", identity="hom_leibniz"):
            log_debug("evaluating")
    """
    merged = dict(_context.get())
    merged.update({k: str(v) for k, v in fields.items() if v})
    token = _context.set(merged)
    try:
        yield
    finally:
        _context.reset(token)


def _log(level: int, message: str, fields: Dict[str, Optional[str]]) -> None:
    with log_context(**fields):
        get_logger().log(level, message)


def log_debug(message: str, **fields):
    _log(logging.DEBUG, message, fields)


def log_info(message: str, **fields):
    _log(logging.INFO, message, fields)


def log_warning(message: str, **fields):
    _log(logging.WARNING, message, fields)


def log_performance(operation: str, duration: float, **fields):
    _log(logging.INFO, f"Performance: {operation} took {format_time(duration)}", fields)


def log_file_operation(operation: str, path: Path, **fields):
    _log(logging.DEBUG, f"File {operation}: {path}", fields)


def logged_operation(operation_name: str):
    """
    Log start, completion and failure of an operation.

    Records are tagged with the first argument's ``name`` when it has one,
    as presentations and action families do.
    """

    def decorator(func):
        @wraps(func)
        def wrapper(*args, **kwargs):
            name = getattr(args[0], "name", None) if args else None
            with log_context(algebra=name if isinstance(name, str) else None):
                log_debug(f"Starting {operation_name}")
                started = time.perf_counter()
                try:
                    result = func(*args, **kwargs)
                except Exception as e:
                    log_debug(f"Failed {operation_name} after {format_time(time.perf_counter() - started)}: {e}")
                    raise
                log_debug(f"Completed {operation_name} in {format_time(time.perf_counter() - started)}")
                return result

        return wrapper

    return decorator


def configure_logging(debug: bool = False, verbose: bool = False, log_file: Optional[str] = None):
    """Rebuild the logger from CLI options."""
    reset_logger()
    setup_logger(debug=debug, log_file=Path(log_file) if log_file else None, verbose=verbose)
