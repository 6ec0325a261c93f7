"""
Resolved options and configuration handling for homleib.
"""

import json
import re
from dataclasses import dataclass
from typing import List, Optional

from homleib.algebra.io import map_from_rows
from homleib.algebra.linalg import LinearMap
from homleib.algebra.scalar import FieldSpec
from homleib.core.config import REPORT_FORMATS, HomLeibConfig, set_config
from homleib.core.exceptions import InputError
from homleib.core.logging import configure_logging, log_debug, log_info

DIAGONAL = re.compile(r"^diag\((.*)\)$")


@dataclass
class ResolvedOptions:
    """Container for resolved CLI options."""

    jobs: int
    seed: int
    report_format: str
    debug: bool
    config: HomLeibConfig


def resolve_options(
    config_override: Optional[str] = None,
    debug_override: bool = False,
    verbose_override: bool = False,
    log_file: Optional[str] = None,
    jobs_override: Optional[int] = None,
    seed_override: Optional[int] = None,
    format_override: Optional[str] = None,
) -> ResolvedOptions:
    """Resolves options based on command args, config files, and defaults."""
    configure_logging(debug=debug_override, verbose=verbose_override, log_file=log_file)

    log_debug(f"Loading config file: {config_override or 'default locations'}")
    config = HomLeibConfig.from_file(config_override)

    if debug_override:
        config.debug = True
    if jobs_override is not None:
        if jobs_override < 1:
            raise InputError(f"--jobs must be at least 1, got {jobs_override}")
        log_debug(f"Jobs override: {jobs_override}")
        config.check.jobs = jobs_override
    if seed_override is not None:
        log_debug(f"Seed override: {seed_override}")
        config.check.seed = seed_override
    if format_override is not None:
        if format_override not in REPORT_FORMATS:
            raise InputError(f"unknown report format {format_override!r}; expected one of {REPORT_FORMATS}")
        log_debug(f"Format override: {format_override}")
        config.report_format = format_override

    set_config(config)
    resolved = ResolvedOptions(
        jobs=config.check.jobs,
        seed=config.check.seed,
        report_format=config.report_format,
        debug=config.debug,
        config=config,
    )
    log_info("Options resolved", check=f"jobs={resolved.jobs} seed={resolved.seed}")
    return resolved


def split_files(arg: str, count: int, flag: str) -> List[str]:
    """``a,b,c`` into exactly ``count`` paths."""
    parts = [part.strip() for part in arg.split(",") if part.strip()]
    if len(parts) != count:
        raise InputError(f"{flag} expects {count} comma-separated files, got {arg!r}")
    return parts


def parse_map(arg: str, field: FieldSpec, dim: int, flag: str) -> LinearMap:
    """
    A square map given on the command line as ``id``, ``diag(a, b, ...)``
    or a JSON list of rows of coefficient literals.
    """
    text = arg.strip()
    if text == "id":
        return LinearMap.identity(field, dim)
    match = DIAGONAL.match(text)
    if match:
        entries = [field.scalar(part.strip()) for part in match.group(1).split(",")]
        m = LinearMap.diagonal(field, entries)
    else:
        try:
            rows = json.loads(text)
        except json.JSONDecodeError as e:
            raise InputError(f"{flag}: expected 'id', 'diag(...)' or JSON rows, got {arg!r}") from e
        m = map_from_rows(rows, field, flag)
    if m.shape != (dim, dim):
        raise InputError(f"{flag}: map is {m.dim_out}×{m.dim_in}, expected {dim}×{dim}")
    return m
