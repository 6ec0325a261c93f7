"""Corpus commands for homleib."""

from typing import List, Optional

import typer

from homleib.corpus.registry import corpus_list
from homleib.output.report import records_from_report
from homleib.output.terminal import (
    get_progress_context,
    print_corpus_list,
    print_corpus_result,
    print_report,
    print_success,
)

from .completions import Completions
from .decorators import with_error_handling
from .handlers import CommandHandlers, save_report
from .options import resolve_options

corpus_app = typer.Typer(help="Run the bundled worked examples against their golden reports")


def _options(ctx: typer.Context):
    root = ctx.find_root()
    if root.obj is None:
        root.obj = resolve_options()
    return root.obj


@corpus_app.command("list")
@with_error_handling
def corpus_list_command(ctx: typer.Context):
    """List corpus entries."""
    _options(ctx)
    print_corpus_list(corpus_list())


@corpus_app.command("run")
@with_error_handling
def corpus_run_command(
    ctx: typer.Context,
    entry_ids: Optional[List[str]] = typer.Argument(
        None, help="Entry ids (all when omitted)", autocompletion=Completions.corpus_entries
    ),
    show: bool = typer.Option(False, "--show", help="Print every record"),
    save: Optional[str] = typer.Option(None, "--save-report", help="Write the machine report (single entry)"),
):
    """Run entries and diff them against their golden reports (exit 1 on mismatch)."""
    options = _options(ctx)
    if save and (not entry_ids or len(entry_ids) != 1):
        raise ValueError("--save-report needs exactly one entry id")
    with get_progress_context() as progress:
        progress.add_task("Running corpus", total=None)
        results = CommandHandlers.handle_corpus_run(options, entry_ids or [])
    for entry_id, report in results:
        records = records_from_report(report)
        if save:
            save_report(report, save)
        if show or options.report_format == "machine":
            print_report(records, options.report_format, report, title=entry_id)
        else:
            print_corpus_result(entry_id, records)


@corpus_app.command("regen")
@with_error_handling
def corpus_regen_command(
    ctx: typer.Context,
    entry_id: Optional[str] = typer.Argument(
        None, help="Entry id (all when omitted)", autocompletion=Completions.corpus_entries
    ),
):
    """Rewrite golden reports from the straight-line evaluator."""
    _options(ctx)
    for written in CommandHandlers.handle_corpus_regen(entry_id):
        print_success(f"Regenerated golden report for {written}")
