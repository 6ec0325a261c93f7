import pytest

from homleib.core.exceptions import PresentationError
from homleib.identities.catalog import get_identity
from homleib.identities.checker import PASS, CheckReport, Report, check_identity
from homleib.identities.evaluator import context_for_algebra
from homleib.output.report import (
    ReportRecord,
    diff_records,
    format_record,
    parse_machine,
    records_from_report,
    render,
    render_machine,
    render_text,
)
from homleib.output.terminal import print_report


@pytest.fixture
def twodim_records(twodim):
    ctx = context_for_algebra(twodim)
    report = Report(title="twodim")
    report.add(check_identity(get_identity("hom_leibniz"), ctx))
    report.add(check_identity(get_identity("skew_symmetry"), ctx))
    return records_from_report(report)


def test_text_lines(twodim_records):
    assert render_text(twodim_records) == (
        "PASS hom_leibniz (8 assignments)\n"
        "FAIL skew_symmetry (4 assignments) at (x=e2, y=e2): residual [2, 0]\n"
    )


def test_text_line_details():
    single = ReportRecord(identity="nondegenerate", status=PASS, assignments=1, context="form")
    assert format_record(single) == "PASS nondegenerate (1 assignment) [form]"
    fact = ReportRecord(identity="determinant", status=PASS)
    assert format_record(fact) == "PASS determinant"
    unnamed = ReportRecord(identity="t", status="fail", assignments=2, assignment=[1, 3], residual=["1"])
    assert format_record(unnamed) == "FAIL t (2 assignments) at (e1, e3): residual [1]"


def test_precondition_lines():
    report = Report(title="bimodule")
    report.fail_precondition("shape", "module dimensions differ")
    assert render_text([], report) == "PRECONDITION FAILED shape\n  module dimensions differ\n"
    assert render_text([]) == ""


def test_machine_format_parses_back(twodim_records):
    text = render_machine(twodim_records)
    assert text.endswith("\n")
    assert parse_machine(text) == twodim_records
    failed = parse_machine(text)[1]
    assert failed.variables == ("x", "y")
    assert failed.assignment == [2, 2]
    assert failed.residual == ["2", "0"]


def test_passing_records_drop_variables(twodim_records):
    assert twodim_records[0].to_dict()["variables"] == []
    assert twodim_records[0].to_dict()["assignment"] is None


def test_informational_flag_is_not_compared():
    check = CheckReport.fact("optional", True, required=False)
    record = ReportRecord.from_check(check)
    assert not record.required
    assert parse_machine(render_machine([record])) == [record]


@pytest.mark.parametrize(
    "text, match",
    [
        ("not json", "invalid report"),
        ('{"identity": "x"}', "list of records"),
        ('[{"identity": "x", "status": "pass", "extra": 1}]', "unknown record keys"),
        ('[{"status": "pass"}]', "identity"),
        ("[3]", "record object"),
    ],
)
def test_malformed_machine_reports(text, match):
    with pytest.raises(PresentationError, match=match):
        parse_machine(text)


def test_record_paths_in_errors():
    with pytest.raises(PresentationError) as excinfo:
        parse_machine('[{"identity": "a", "status": "pass"}, {"identity": 1, "status": "pass"}]')
    assert excinfo.value.path == "[1].identity"


def test_render_dispatch(twodim_records):
    assert render(twodim_records, "text") == render_text(twodim_records)
    assert render(twodim_records, "machine") == render_machine(twodim_records)
    with pytest.raises(ValueError):
        render(twodim_records, "yaml")


def test_diff_records(twodim_records):
    assert diff_records(twodim_records, twodim_records) == ""
    diff = diff_records(twodim_records, twodim_records[:1])
    assert diff.splitlines() == [
        "record 2:",
        "  expected FAIL skew_symmetry (4 assignments) at (x=e2, y=e2): residual [2, 0]",
        "  actual   (none)",
    ]


def test_machine_output_goes_to_stdout_verbatim(twodim_records, capsys):
    print_report(twodim_records, fmt="machine")
    assert capsys.readouterr().out == render_machine(twodim_records)
