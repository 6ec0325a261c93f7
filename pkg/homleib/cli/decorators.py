"""
Decorators for homleib commands.
"""

from functools import wraps
from typing import Callable

import typer
from rich.text import Text

from homleib.core.config import get_config
from homleib.core.exceptions import EXIT_INPUT_ERROR, EXIT_INTERNAL_ERROR, HomLeibError
from homleib.core.logging import console, log_debug


def with_error_handling(func: Callable) -> Callable:
    """
    Map the exception hierarchy onto exit codes.

    HomLeibError subclasses carry their own code (2 for bad input, 1 for
    failed preconditions and golden mismatches, 3 for failed
    re-verification); ValueError from argument checks counts as bad input
    and anything else is an internal error.
    """

    @wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except typer.Exit:
            raise
        except HomLeibError as e:
            _report(func.__name__, e)
            raise typer.Exit(code=e.exit_code)
        except ValueError as e:
            _report(func.__name__, e)
            raise typer.Exit(code=EXIT_INPUT_ERROR)
        except Exception as e:
            _report(func.__name__, e)
            raise typer.Exit(code=EXIT_INTERNAL_ERROR)

    return wrapper


def _report(command: str, error: Exception) -> None:
    console.print(Text.assemble((f"Error in {command}: ", "bold red"), str(error)))
    log_debug(f"{command} failed with {type(error).__name__}")
    if get_config().debug:
        console.print_exception(show_locals=False)
