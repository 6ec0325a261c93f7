import json
import shutil

import pytest

from homleib.core.config import DEFAULT_CORPUS_DIR, CorpusConfig, HomLeibConfig, set_config
from homleib.core.exceptions import GoldenMismatchError, InputError, PresentationError
from homleib.corpus.registry import (
    CHECK_KINDS,
    corpus_list,
    corpus_regenerate,
    corpus_run,
    load_entry,
    oracle_entry,
    run_entry,
)
from homleib.output.report import records_from_report

ENTRY_IDS = [
    "abelian-3",
    "bihom-dendr",
    "bihom-rb",
    "bihom-sqrt2",
    "dendr3",
    "homleib-2dim",
    "leibniz-2dim",
    "omni",
]

GOLDEN_SIZES = {
    "abelian-3": 12,
    "bihom-dendr": 27,
    "bihom-rb": 19,
    "bihom-sqrt2": 22,
    "dendr3": 21,
    "homleib-2dim": 10,
    "leibniz-2dim": 9,
    "omni": 10,
}


@pytest.fixture
def corpus_copy(tmp_path):
    root = tmp_path / "corpus"
    shutil.copytree(DEFAULT_CORPUS_DIR, root)
    return root


def test_corpus_list_is_sorted():
    assert [e.id for e in corpus_list()] == ENTRY_IDS


@pytest.mark.parametrize("entry_id", ENTRY_IDS)
def test_entry_matches_its_golden_report(entry_id):
    report = corpus_run(entry_id)
    assert len(report.checks) == GOLDEN_SIZES[entry_id]


@pytest.mark.parametrize("entry_id", ENTRY_IDS)
def test_both_evaluators_agree(entry_id):
    entry = load_entry(entry_id)
    assert oracle_entry(entry) == entry.golden()
    assert records_from_report(run_entry(entry)) == entry.golden()


def test_entries_declare_known_checks_and_provenance():
    for entry in corpus_list():
        assert entry.checks
        assert all(c["kind"] in CHECK_KINDS for c in entry.checks)
        assert entry.provenance.strip()


def test_specializations_bind_only_entry_parameters():
    assert load_entry("dendr3").specializations() == [{"p": "2"}, {"p": "-1"}]
    assert load_entry("bihom-rb").specializations() == []


def test_configured_specializations():
    set_config(HomLeibConfig(corpus=CorpusConfig(specializations=[{"p": "5"}, {"q": "1"}, {"p": "5"}])))
    assert load_entry("dendr3").specializations() == [{"p": "5"}]


def test_specialized_runs_are_labelled():
    contexts = {r.context for r in load_entry("dendr3").golden()}
    assert "variety" in contexts
    assert "variety @ p=2" in contexts
    assert "variety @ p=-1" in contexts


def test_unknown_entry():
    with pytest.raises(InputError, match="no corpus entry"):
        load_entry("missing")


def test_missing_corpus_directory(tmp_path):
    with pytest.raises(InputError, match="does not exist"):
        corpus_list(tmp_path / "nowhere")


def test_malformed_entry_documents(corpus_copy):
    path = corpus_copy / "dendr3" / "entry.json"
    data = json.loads(path.read_text())

    path.write_text(json.dumps({"title": "no id"}))
    with pytest.raises(PresentationError, match="string id"):
        load_entry("dendr3", corpus_copy)

    data["checks"][0]["kind"] = "prove"
    path.write_text(json.dumps(data))
    with pytest.raises(PresentationError, match="unknown check kind"):
        load_entry("dendr3", corpus_copy)

    data["checks"][0] = {"kind": "variety", "algebra": "A"}
    path.write_text(json.dumps(data))
    with pytest.raises(PresentationError, match="label"):
        load_entry("dendr3", corpus_copy)


def test_missing_golden_report(corpus_copy):
    (corpus_copy / "omni" / "golden.report").unlink()
    with pytest.raises(InputError, match="no golden report"):
        corpus_run("omni", corpus_dir=corpus_copy)


def test_edited_golden_report_is_a_mismatch(corpus_copy):
    path = corpus_copy / "homleib-2dim" / "golden.report"
    records = json.loads(path.read_text())
    records[0]["assignments"] += 1
    path.write_text(json.dumps(records))
    with pytest.raises(GoldenMismatchError) as excinfo:
        corpus_run("homleib-2dim", corpus_dir=corpus_copy)
    assert excinfo.value.entry_id == "homleib-2dim"
    assert excinfo.value.diff.startswith("record 1:")
    assert excinfo.value.exit_code == 1


def test_regenerate_restores_goldens(corpus_copy):
    path = corpus_copy / "leibniz-2dim" / "golden.report"
    path.write_text("[]")
    assert corpus_regenerate("leibniz-2dim", corpus_dir=corpus_copy) == ["leibniz-2dim"]
    assert len(corpus_run("leibniz-2dim", corpus_dir=corpus_copy).checks) == GOLDEN_SIZES["leibniz-2dim"]
    assert corpus_regenerate(corpus_dir=corpus_copy) == ENTRY_IDS
