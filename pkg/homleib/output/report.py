"""
Stable report formats.

The text format is one line per check:

    PASS hom_leibniz (8 assignments)
    FAIL skew_symmetry (4 assignments) at (x=e2, y=e2): residual [2, 0]

The machine format is a JSON list of records and parses back to the same
records.
"""

import json
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List, Optional, Tuple

from homleib.core.data_utils import dump_json
from homleib.core.formatting import basis_label, format_coords
from homleib.core.exceptions import PresentationError
from homleib.identities.checker import FAIL, PASS, CheckReport, Report

RECORD_KEYS = ("identity", "status", "assignments", "assignment", "variables", "residual", "context")
STATUS_WORDS = {PASS: "PASS", FAIL: "FAIL"}


@dataclass
class ReportRecord:
    """One line of a report; variables are kept only for failures."""

    identity: str
    status: str
    assignments: int = 0
    assignment: Optional[List[int]] = None
    variables: Tuple[str, ...] = ()
    residual: Optional[List[str]] = None
    context: str = ""
    required: bool = field(default=True, compare=False)

    @property
    def passed(self) -> bool:
        return self.status == PASS

    @classmethod
    def from_check(cls, check: CheckReport) -> "ReportRecord":
        failed = check.assignment is not None
        return cls(
            identity=check.identity,
            status=check.status,
            assignments=check.assignments,
            assignment=list(check.assignment) if failed else None,
            variables=tuple(name for name, _ in check.variables) if failed else (),
            residual=list(check.residual) if check.residual is not None else None,
            context=check.context,
            required=check.required,
        )

    def to_dict(self) -> Dict[str, Any]:
        return {
            "identity": self.identity,
            "status": self.status,
            "assignments": self.assignments,
            "assignment": self.assignment,
            "variables": list(self.variables),
            "residual": self.residual,
            "context": self.context,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any], index: int = 0) -> "ReportRecord":
        if not isinstance(data, dict):
            raise PresentationError("expected a record object", f"[{index}]")
        unknown = set(data) - set(RECORD_KEYS)
        if unknown:
            raise PresentationError(f"unknown record keys {sorted(unknown)}", f"[{index}]")
        for key in ("identity", "status"):
            if not isinstance(data.get(key), str):
                raise PresentationError(f"record needs a string {key!r}", f"[{index}].{key}")
        return cls(
            identity=data["identity"],
            status=data["status"],
            assignments=int(data.get("assignments", 0)),
            assignment=data.get("assignment"),
            variables=tuple(data.get("variables") or ()),
            residual=data.get("residual"),
            context=data.get("context", ""),
        )


def records_from_report(report: Report) -> List[ReportRecord]:
    return [ReportRecord.from_check(c) for c in report.checks]


# ==============================================================================
# Text
# ==============================================================================


def _where(record: ReportRecord) -> str:
    if record.assignment is None:
        return ""
    if record.variables:
        pairs = [f"{name}={basis_label(idx - 1)}" for name, idx in zip(record.variables, record.assignment)]
    else:
        pairs = [basis_label(idx - 1) for idx in record.assignment]
    return f" at ({', '.join(pairs)})"


def format_record(record: ReportRecord) -> str:
    word = STATUS_WORDS.get(record.status, record.status.upper())
    line = f"{word} {record.identity}"
    if record.assignments:
        noun = "assignment" if record.assignments == 1 else "assignments"
        line += f" ({record.assignments} {noun})"
    line += _where(record)
    if record.residual is not None:
        line += f": residual {format_coords(record.residual)}"
    if record.context:
        line += f" [{record.context}]"
    return line


def render_text(records: Iterable[ReportRecord], report: Optional[Report] = None) -> str:
    lines = [format_record(r) for r in records]
    if report is not None and report.precondition is not None:
        lines.append(f"PRECONDITION FAILED {report.precondition}")
        lines.extend(f"  {note}" for note in report.notes)
    return "\n".join(lines) + ("\n" if lines else "")


# ==============================================================================
# Machine
# ==============================================================================


def render_machine(records: Iterable[ReportRecord]) -> str:
    return dump_json([r.to_dict() for r in records])


def parse_machine(text: str) -> List[ReportRecord]:
    """Inverse of render_machine."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise PresentationError(f"invalid report at line {e.lineno} column {e.colno}: {e.msg}") from e
    if not isinstance(data, list):
        raise PresentationError("a machine report is a list of records")
    return [ReportRecord.from_dict(item, i) for i, item in enumerate(data)]


def render(records: List[ReportRecord], fmt: str, report: Optional[Report] = None) -> str:
    if fmt == "machine":
        return render_machine(records)
    if fmt == "text":
        return render_text(records, report)
    raise ValueError(f"unknown report format {fmt!r}")


def diff_records(expected: List[ReportRecord], actual: List[ReportRecord]) -> str:
    """Human-readable differences between two record lists; empty when equal."""
    lines = []
    for i in range(max(len(expected), len(actual))):
        want = expected[i] if i < len(expected) else None
        got = actual[i] if i < len(actual) else None
        if want == got:
            continue
        lines.append(f"record {i + 1}:")
        lines.append(f"  expected {format_record(want) if want else '(none)'}")
        lines.append(f"  actual   {format_record(got) if got else '(none)'}")
    return "\n".join(lines)
