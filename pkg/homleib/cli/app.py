"""
Main Typer app and command definitions for homleib.
"""

from typing import List, Optional

import typer

from homleib.core.exceptions import EXIT_CHECK_FAILED
from homleib.identities.catalog import load_catalog
from homleib.output.report import records_from_report
from homleib.output.terminal import (
    print_catalog,
    print_fuzz_summary,
    print_presentation_written,
    print_report,
    print_success,
)

from . import corpus
from .completions import Completions
from .decorators import with_error_handling
from .handlers import CommandHandlers, save_report
from .options import ResolvedOptions, resolve_options

app = typer.Typer(
    help="homleib - exact checks and constructions for Hom-Leibniz type algebras",
    add_completion=True,
    rich_markup_mode="markdown",
    no_args_is_help=True,
)
app.add_typer(corpus.corpus_app, name="corpus")


def _options(ctx: typer.Context) -> ResolvedOptions:
    if ctx.obj is None:
        ctx.obj = resolve_options()
    return ctx.obj


@app.callback()
def main(
    ctx: typer.Context,
    config: Optional[str] = typer.Option(None, "--config", help="Config file"),
    debug: bool = typer.Option(False, "--debug", help="Debug logging and tracebacks"),
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Info-level logging"),
    log_file: Optional[str] = typer.Option(None, "--log-file", help="Also log to this file"),
    jobs: Optional[int] = typer.Option(None, "--jobs", "-j", help="Parallel evaluation workers"),
    seed: Optional[int] = typer.Option(None, "--seed", help="Seed for random checks"),
    fmt: Optional[str] = typer.Option(None, "--format", "-f", help="Report format: text or machine"),
):
    """Options shared by every command; flags override the config file."""
    try:
        ctx.obj = resolve_options(
            config_override=config,
            debug_override=debug,
            verbose_override=verbose,
            log_file=log_file,
            jobs_override=jobs,
            seed_override=seed,
            format_override=fmt,
        )
    except Exception as e:
        typer.echo(f"Error: {e}", err=True)
        raise typer.Exit(code=2)


def _finish(report, options: ResolvedOptions, save: Optional[str]) -> None:
    records = records_from_report(report)
    if save:
        save_report(report, save)
    print_report(records, options.report_format, report)
    if not report.passed:
        raise typer.Exit(code=EXIT_CHECK_FAILED)


# ---- Commands ----


@app.command()
@with_error_handling
def check(
    ctx: typer.Context,
    path: str = typer.Argument(..., help="Presentation document"),
    variety: bool = typer.Option(False, "--variety", help="Defining identities of the variety"),
    identity: Optional[List[str]] = typer.Option(
        None, "--identity", "-i", help="Catalog identity (repeatable)", autocompletion=Completions.identities
    ),
    bimodule: Optional[str] = typer.Option(None, "--bimodule", help="Action document"),
    matched: Optional[str] = typer.Option(None, "--matched", help="B.alg,A_on_B.act,B_on_A.act"),
    ooperator: Optional[str] = typer.Option(
        None, "--ooperator", help="T.op (Rota-Baxter) or ACTIONS.act,T.op"
    ),
    bialgebra: bool = typer.Option(False, "--bialgebra", help="Bialgebra conditions of the cobracket"),
    equiv: Optional[str] = typer.Option(
        None, "--equiv", help="Dual algebra: compare bialgebra and matched-pair verdicts"
    ),
    form: bool = typer.Option(False, "--form", help="Properties of the carried form"),
    manin: Optional[str] = typer.Option(None, "--manin", help="Basis split such as '1-2;3-4'"),
    spot: bool = typer.Option(False, "--spot", help="Multilinearity spot checks on random vectors"),
    save: Optional[str] = typer.Option(None, "--save-report", help="Write the machine report here"),
):
    """Check identities on a presentation (exit 1 when a required check fails)."""
    options = _options(ctx)
    report = CommandHandlers.handle_check(
        options,
        path,
        variety=variety,
        identities=identity or [],
        bimodule=bimodule,
        matched=matched,
        ooperator=ooperator,
        bialgebra=bialgebra,
        equiv=equiv,
        form=form,
        manin=manin,
        spot=spot,
    )
    _finish(report, options, save)


@app.command()
@with_error_handling
def construct(
    ctx: typer.Context,
    kind: str = typer.Argument(..., help="Construction", autocompletion=Completions.construct_kinds),
    inputs: Optional[List[str]] = typer.Argument(None, help="Input documents"),
    out: Optional[str] = typer.Option(None, "--out", "-o", help="Output path (stdout when omitted)"),
    type_: int = typer.Option(1, "--type", help="Derived algebra type (1 or 2)"),
    n: int = typer.Option(1, "--n", help="Derived algebra power or omni dimension"),
    alpha: Optional[str] = typer.Option(None, "--alpha", help="Twist morphism: id, diag(...) or JSON rows"),
    alpha2: Optional[str] = typer.Option(None, "--alpha2", help="Second BiHom twist morphism"),
    beta: str = typer.Option("id", "--beta", help="Omni twist β: id, diag(...) or JSON rows"),
    mode: Optional[str] = typer.Option(None, "--mode", help="Twist, dual or omni mode"),
    strict: bool = typer.Option(
        True,
        "--strict/--no-strict",
        help="Fail when a twist is not a morphism or the input is not multiplicative; --no-strict only warns",
    ),
):
    """Build a presentation (or dual action family) and re-verify it."""
    options = _options(ctx)
    result = CommandHandlers.handle_construct(
        options,
        kind,
        inputs or [],
        type_=type_,
        n=n,
        alpha=alpha,
        alpha2=alpha2,
        beta=beta,
        mode=mode,
        strict=strict,
    )
    path = CommandHandlers.write_constructed(result, out)
    if path is None:
        typer.echo(CommandHandlers.document(result), nl=False)
    elif hasattr(result, "variety"):
        print_presentation_written(result, path)
    else:
        print_success(f"Wrote {result.name or 'actions'} to {path}")


@app.command()
@with_error_handling
def report(
    ctx: typer.Context,
    path: str = typer.Argument(..., help="Machine report written by --save-report"),
    fmt: Optional[str] = typer.Option(None, "--format", "-f", help="text or machine"),
):
    """Re-render a saved report."""
    options = _options(ctx)
    records = CommandHandlers.handle_report(path)
    print_report(records, fmt or options.report_format)


@app.command()
@with_error_handling
def fuzz(
    ctx: typer.Context,
    cases: Optional[int] = typer.Option(None, "--cases", "-n", help="Random instances (config default 200)"),
):
    """Bialgebra/matched-pair agreement and spot checks on seeded random instances."""
    options = _options(ctx)
    result = CommandHandlers.handle_fuzz(options, cases)
    failures = [r for r in records_from_report(result) if not r.passed]
    if failures:
        print_report(failures, options.report_format, result)
    print_fuzz_summary(result, cases if cases is not None else options.config.check.fuzz_cases, options.seed)
    if not result.passed:
        raise typer.Exit(code=EXIT_CHECK_FAILED)


@app.command()
@with_error_handling
def catalog(
    ctx: typer.Context,
    group: Optional[str] = typer.Option(None, "--group", "-g", help="Only this catalog file"),
    strict: bool = typer.Option(False, "--strict", help="Fail when a manifest identity is missing"),
):
    """List the identity catalog."""
    options = _options(ctx)
    print_catalog(load_catalog(options.config.catalog_dir, strict=strict), group)


if __name__ == "__main__":
    app()
