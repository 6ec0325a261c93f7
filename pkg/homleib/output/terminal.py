from pathlib import Path
from typing import Any, Iterable, List, Optional, Sequence, Union

from rich.box import ROUNDED
from rich.console import Console, RenderableType
from rich.panel import Panel
from rich.progress import Progress, SpinnerColumn, TextColumn
from rich.style import Style
from rich.table import Table
from rich.text import Text

from homleib.algebra.model import AlgebraPresentation
from homleib.core.formatting import plural
from homleib.identities.catalog import IdentityCatalog
from homleib.identities.checker import FAIL, PASS, Report
from homleib.output.report import ReportRecord, format_record, render_machine

# ==============================================================================
# Constants & Global Console
# ==============================================================================

console = Console()

SUCCESS_STYLE = Style(color="green", bold=True)
FAIL_STYLE = Style(color="red", bold=True)
WARNING_STYLE = Style(color="yellow", bold=True)
INFO_STYLE = Style(color="blue", bold=True)
BOLD_STYLE = Style(bold=True)
DIM_STYLE = Style(dim=True)
YELLOW_STYLE = Style(color="yellow")

RECORD_STYLES = {PASS: SUCCESS_STYLE, FAIL: FAIL_STYLE}

# ==============================================================================
# Private Helper Functions
# ==============================================================================


def _create_panel(
    content: RenderableType,
    title: Optional[str] = None,
    border_style: Union[str, Style] = "blue",
    padding: tuple[int, int] = (1, 2),
    box: Any = ROUNDED,
    **kwargs: Any,
) -> Panel:
    return Panel(content, title=title, border_style=border_style, padding=padding, box=box, **kwargs)


def _create_table(
    title: Optional[str] = None,
    box: Any = ROUNDED,
    show_header: bool = True,
    header_style: Union[str, Style] = "bold blue",
    **kwargs: Any,
) -> Table:
    return Table(title=title, box=box, show_header=show_header, header_style=header_style, **kwargs)


def _print_status_message(icon: str, msg: str, style: Union[str, Style]):
    console.print(f"[{style}]{icon}[/{style}]  [{style}]{msg}[/{style}]")


def _print_plain(text: str):
    """Stable formats go out verbatim: no markup, highlighting or wrapping."""
    console.print(text, markup=False, highlight=False, emoji=False, soft_wrap=True, end="")


# ==============================================================================
# Simple Status Messages
# ==============================================================================


def print_success(msg: str):
    _print_status_message("✓", msg, SUCCESS_STYLE)


# ==============================================================================
# Reports
# ==============================================================================


def print_records(records: Sequence[ReportRecord], report: Optional[Report] = None):
    """The stable text lines, coloured by verdict."""
    for record in records:
        line = Text(format_record(record), style=RECORD_STYLES.get(record.status, WARNING_STYLE))
        if not record.required:
            line.stylize(DIM_STYLE)
        console.print(line, soft_wrap=True, highlight=False)
    if report is not None and report.precondition is not None:
        console.print(Text(f"PRECONDITION FAILED {report.precondition}", style=WARNING_STYLE), soft_wrap=True)
        for note in report.notes:
            console.print(Text(f"  {note}", style=DIM_STYLE), soft_wrap=True)


def print_report_summary(records: Sequence[ReportRecord], title: str = "", report: Optional[Report] = None):
    required = [r for r in records if r.required]
    passed = sum(1 for r in required if r.passed)
    ok = passed == len(required) and (report is None or report.precondition is None)
    summary = Text.assemble(
        ("Summary: ", BOLD_STYLE + YELLOW_STYLE),
        ("Passed ", "default"),
        (str(passed), SUCCESS_STYLE),
        ("/", "default"),
        (str(len(required)), INFO_STYLE),
        (" required checks", "default"),
    )
    informational = len(records) - len(required)
    if informational:
        summary.append(f" ({informational} informational)", style=DIM_STYLE)
    console.print(
        _create_panel(
            summary,
            title=f"[bold]{title}[/bold]" if title else None,
            border_style=SUCCESS_STYLE if ok else FAIL_STYLE,
            padding=(0, 2),
        )
    )


def print_report(records: List[ReportRecord], fmt: str = "text", report: Optional[Report] = None, title: str = ""):
    """Machine format is printed bare so stdout parses back; text gets a summary panel."""
    if fmt == "machine":
        _print_plain(render_machine(records))
        return
    print_records(records, report)
    if records or (report is not None and report.precondition is not None):
        print_report_summary(records, title or (report.title if report else ""), report)


# ==============================================================================
# Presentations
# ==============================================================================


def print_presentation_written(p: AlgebraPresentation, path: Optional[Path]):
    table = _create_table(show_header=False, box=None, padding=(0, 1))
    table.add_column("Key", style=INFO_STYLE, width=14)
    table.add_column("Value")
    table.add_row("Variety:", p.variety.value)
    table.add_row("Dimension:", str(p.dim))
    table.add_row("Field:", str(p.field))
    table.add_row("Multiplicative:", "yes" if p.multiplicative else "no")
    if path is not None:
        table.add_row("Written to:", str(path))
    console.print(
        _create_panel(
            table,
            title=f"[green]{p.name or 'presentation'}[/green]",
            border_style=SUCCESS_STYLE,
            padding=(0, 1),
        )
    )


# ==============================================================================
# Catalog & Corpus
# ==============================================================================


def print_catalog(catalog: IdentityCatalog, group: Optional[str] = None):
    table = _create_table(title=f"[bold]Identity catalog[/bold] [dim]{catalog.directory}[/dim]")
    table.add_column("Group", style="cyan")
    table.add_column("Identity", style="bold")
    table.add_column("Variables")
    for name, members in catalog.groups.items():
        if group and name != group:
            continue
        for identity_name in members:
            identity = catalog.get(identity_name)
            variables = ", ".join(f"{v}:{s}" for v, s in identity.variables)
            table.add_row(name, identity_name, variables)
    console.print(table)
    noun = "identity" if len(catalog) == 1 else "identities"
    console.print(f"[dim]{len(catalog)} {noun}[/dim]")


def print_corpus_list(entries: Iterable[Any]):
    table = _create_table(title="[bold]Corpus entries[/bold]")
    table.add_column("Id", style="cyan")
    table.add_column("Title")
    table.add_column("Checks", justify="right")
    table.add_column("Specializations", style="dim")
    for entry in entries:
        runs = "; ".join(", ".join(f"{k}={v}" for k, v in values.items()) for values in entry.specializations())
        table.add_row(entry.id, entry.title, str(len(entry.checks)), runs or "-")
    console.print(table)


def print_corpus_result(entry_id: str, records: Sequence[ReportRecord]):
    print_success(f"{entry_id}: {plural(len(records), 'record')} match the golden report")


def print_fuzz_summary(report: Report, cases: int, seed: int):
    disagreements = [c for c in report.checks if c.identity == "verdicts_agree" and not c.passed]
    spot_failures = [c for c in report.checks if c.identity.endswith(":spot") and not c.passed]
    content = Text.assemble(
        ("Cases: ", INFO_STYLE),
        f"{cases} (seed {seed})\n",
        ("Verdict disagreements: ", INFO_STYLE),
        (str(len(disagreements)), FAIL_STYLE if disagreements else SUCCESS_STYLE),
        "\n",
        ("Spot-check failures: ", INFO_STYLE),
        (str(len(spot_failures)), FAIL_STYLE if spot_failures else SUCCESS_STYLE),
    )
    console.print(
        _create_panel(
            content,
            title="[bold]Fuzz[/bold]",
            border_style=SUCCESS_STYLE if report.passed else FAIL_STYLE,
            padding=(0, 2),
        )
    )


# ==============================================================================
# Progress Indicator
# ==============================================================================


def get_progress_context() -> Progress:
    """Spinner for long corpus and fuzz runs; drawn on stderr."""
    return Progress(
        SpinnerColumn(),
        TextColumn("[progress.description]{task.description}"),
        console=Console(stderr=True),
        transient=True,
    )
