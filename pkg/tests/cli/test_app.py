import pytest
from typer.testing import CliRunner

from homleib.algebra.io import read_presentation
from homleib.cli.app import app
from homleib.core.config import DEFAULT_CORPUS_DIR
from homleib.output.report import parse_machine

TWODIM = str(DEFAULT_CORPUS_DIR / "homleib-2dim" / "twodim.alg")
DENDR3 = str(DEFAULT_CORPUS_DIR / "dendr3" / "dendr3.alg")


@pytest.fixture
def runner():
    return CliRunner()


def test_variety_check_passes(runner):
    result = runner.invoke(app, ["check", TWODIM, "--variety"])
    assert result.exit_code == 0
    assert "PASS hom_leibniz (8 assignments)" in result.stdout


def test_failed_identity_exits_one(runner):
    result = runner.invoke(app, ["check", TWODIM, "-i", "skew_symmetry"])
    assert result.exit_code == 1
    assert "FAIL skew_symmetry (4 assignments) at (x=e2, y=e2): residual [2, 0]" in result.stdout


def test_machine_format_on_stdout(runner):
    result = runner.invoke(app, ["--format", "machine", "check", TWODIM, "-i", "hom_leibniz"])
    assert result.exit_code == 0
    records = parse_machine(result.stdout)
    assert [r.identity for r in records] == ["hom_leibniz"]


def test_saved_report_renders_again(runner, tmp_path):
    saved = tmp_path / "twodim.report"
    result = runner.invoke(app, ["check", TWODIM, "-i", "skew_symmetry", "--save-report", str(saved)])
    assert result.exit_code == 1
    result = runner.invoke(app, ["report", str(saved)])
    assert result.exit_code == 0
    assert "FAIL skew_symmetry" in result.stdout


def test_bad_input_exits_two(runner, tmp_path):
    assert runner.invoke(app, ["check", str(tmp_path / "missing.alg")]).exit_code == 2
    assert runner.invoke(app, ["report", str(tmp_path / "missing.report")]).exit_code == 2
    assert runner.invoke(app, ["--format", "yaml", "catalog"]).exit_code == 2
    assert runner.invoke(app, ["--jobs", "0", "catalog"]).exit_code == 2


def test_unknown_identity_exits_two(runner):
    assert runner.invoke(app, ["check", TWODIM, "-i", "no_such_identity"]).exit_code == 2


def test_construct_to_a_file(runner, tmp_path):
    out = tmp_path / "bracket.alg"
    result = runner.invoke(app, ["construct", "subadjacent", DENDR3, "--out", str(out)])
    assert result.exit_code == 0
    assert read_presentation(out) == read_presentation(DEFAULT_CORPUS_DIR / "dendr3" / "subadjacent.alg")


def test_construct_to_stdout(runner):
    result = runner.invoke(app, ["construct", "omni", "--n", "1"])
    assert result.exit_code == 0
    assert '"variety": "HomLeibnizDendriform"' in result.stdout


def test_construct_argument_errors(runner):
    assert runner.invoke(app, ["construct", "fold", TWODIM]).exit_code == 2
    assert runner.invoke(app, ["construct", "twist", TWODIM]).exit_code == 2
    assert runner.invoke(app, ["construct", "semidirect", TWODIM]).exit_code == 2
    assert runner.invoke(app, ["construct", "twist", TWODIM, "--alpha", "diag(1)"]).exit_code == 2


def test_construct_precondition_exits_one(runner):
    # diag(1, 2) does not commute with the twist of twodim
    result = runner.invoke(app, ["construct", "twist", TWODIM, "--alpha", "diag(1, 2)"])
    assert result.exit_code == 1


def test_strict_derive_points_at_no_strict(runner):
    # dendr3 is not multiplicative
    result = runner.invoke(app, ["construct", "derive", "--type", "1", "--n", "2", DENDR3])
    assert result.exit_code == 1
    assert "--no-strict" in result.stderr
    relaxed = runner.invoke(app, ["construct", "derive", "--type", "1", "--n", "1", "--no-strict", DENDR3])
    assert relaxed.exit_code == 0
    assert '"name": "dendr3_derived1_1"' in relaxed.stdout


def test_catalog_lists_identities(runner):
    result = runner.invoke(app, ["catalog"])
    assert result.exit_code == 0
    assert "hom_leibniz" in result.stdout


def test_corpus_commands(runner):
    listing = runner.invoke(app, ["corpus", "list"])
    assert listing.exit_code == 0
    assert "dendr3" in listing.stdout
    run = runner.invoke(app, ["corpus", "run", "homleib-2dim"])
    assert run.exit_code == 0
    assert "homleib-2dim: 10 records match the golden report" in run.stdout


def test_corpus_errors(runner):
    assert runner.invoke(app, ["corpus", "run", "missing"]).exit_code == 2
    assert runner.invoke(app, ["corpus", "run", "--save-report", "out.report"]).exit_code == 2


def test_fuzz_command(runner):
    result = runner.invoke(app, ["--seed", "5", "fuzz", "--cases", "2"])
    assert result.exit_code == 0
    assert "Verdict disagreements: 0" in result.stdout
