"""
The bundled corpus of worked examples.

Each entry is a directory holding presentation (``*.alg``), action
(``*.act``) and operator (``*.op``) documents, an ``entry.json`` listing the
checks to run, the frozen ``golden.report`` and a ``provenance.txt`` note.
Parametric entries are also run at the configured rational specializations
that bind at least one of their parameters.
"""

from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional

from homleib.algebra.io import map_from_rows, read_action, read_operator, read_presentation
from homleib.algebra.linalg import LinearMap
from homleib.algebra.model import CONVENTION_ALIASES, ActionFamily, AlgebraPresentation, OOperatorData
from homleib.algebra.scalar import FieldSpec, rational_values
from homleib.core.config import get_config
from homleib.core.data_utils import load_json, save_json
from homleib.core.exceptions import GoldenMismatchError, InputError, PresentationError
from homleib.core.logging import log_context, log_info, logged_operation
from homleib.construct.actions import regular_actions
from homleib.construct.omni import omni_gl_example
from homleib.construct.sums import matched_sum, sub_adjacent
from homleib.construct.twist import TwistRecipe, derived_algebra, yau_twist
from homleib.corpus import oracle
from homleib.duality.ooperator import check_ooperator, induce_dendriform
from homleib.identities.checker import (
    CheckReport,
    Report,
    check_bimodule,
    check_matched_pair,
    check_named,
    check_variety,
)
from homleib.identities.evaluator import context_for_algebra
from homleib.output.report import ReportRecord, diff_records, parse_machine, records_from_report

ENTRY_FILE = "entry.json"
GOLDEN_FILE = "golden.report"
PROVENANCE_FILE = "provenance.txt"

CHECK_KINDS = (
    "variety",
    "identity",
    "bimodule",
    "matched",
    "matched_sum",
    "rota_baxter",
    "induce",
    "twist",
    "derive",
    "subadjacent",
    "omni",
)


@dataclass
class CorpusEntry:
    """One worked example and the checks declared for it."""

    id: str
    title: str
    path: Path
    algebras: Dict[str, str] = field(default_factory=dict)
    actions: Dict[str, str] = field(default_factory=dict)
    operators: Dict[str, str] = field(default_factory=dict)
    checks: List[Dict[str, Any]] = field(default_factory=list)

    @property
    def golden_path(self) -> Path:
        return self.path / GOLDEN_FILE

    @property
    def provenance(self) -> str:
        path = self.path / PROVENANCE_FILE
        return path.read_text(encoding="utf-8") if path.exists() else ""

    def file(self, name: str) -> Path:
        return self.path / name

    def params(self) -> List[str]:
        """Parameters of the fields of the entry's presentations, in order of appearance."""
        seen: List[str] = []
        for name in self.algebras.values():
            spec = FieldSpec.parse(load_json(self.file(name))["field"])
            seen.extend(p for p in spec.params if p not in seen)
        return seen

    def specializations(self) -> List[Dict[str, str]]:
        """The configured specializations restricted to this entry's parameters."""
        params = self.params()
        out: List[Dict[str, str]] = []
        for values in get_config().corpus.specializations:
            relevant = {name: str(v) for name, v in values.items() if name in params}
            if relevant and relevant not in out:
                out.append(relevant)
        return out

    def golden(self) -> List[ReportRecord]:
        if not self.golden_path.exists():
            raise InputError(f"corpus entry {self.id} has no golden report")
        return parse_machine(self.golden_path.read_text(encoding="utf-8"))


def _entry_from_dict(data: Any, path: Path) -> CorpusEntry:
    where = str(path / ENTRY_FILE)
    if not isinstance(data, dict) or not isinstance(data.get("id"), str):
        raise PresentationError("entry needs a string id", where)
    checks = data.get("checks", [])
    if not isinstance(checks, list):
        raise PresentationError("checks must be a list", f"{where}: checks")
    for n, check in enumerate(checks):
        if not isinstance(check, dict) or check.get("kind") not in CHECK_KINDS:
            raise PresentationError(f"unknown check kind in {check!r}", f"{where}: checks[{n + 1}]")
        if not isinstance(check.get("label"), str):
            raise PresentationError("check needs a label", f"{where}: checks[{n + 1}]")
    return CorpusEntry(
        id=data["id"],
        title=data.get("title", ""),
        path=path,
        algebras=dict(data.get("algebras", {})),
        actions=dict(data.get("actions", {})),
        operators=dict(data.get("operators", {})),
        checks=checks,
    )


def _root(corpus_dir: Optional[Path]) -> Path:
    return Path(corpus_dir) if corpus_dir is not None else get_config().corpus_dir


def load_entry(entry_id: str, corpus_dir: Optional[Path] = None) -> CorpusEntry:
    root = _root(corpus_dir)
    path = root / entry_id
    if not (path / ENTRY_FILE).exists():
        raise InputError(f"no corpus entry named {entry_id!r} in {root}")
    return _entry_from_dict(load_json(path / ENTRY_FILE), path)


def corpus_list(corpus_dir: Optional[Path] = None) -> List[CorpusEntry]:
    """Every entry under the corpus directory, sorted by id."""
    root = _root(corpus_dir)
    if not root.is_dir():
        raise InputError(f"corpus directory {root} does not exist")
    return [load_entry(p.name, root) for p in sorted(root.iterdir()) if (p / ENTRY_FILE).exists()]


def _context(label: str, inner: str, values: Mapping[str, str]) -> str:
    context = f"{label}: {inner}" if inner else label
    if values:
        context += " @ " + ", ".join(f"{k}={v}" for k, v in values.items())
    return context


def _runs(entry: CorpusEntry) -> List[Dict[str, str]]:
    return [{}] + entry.specializations()


# ==============================================================================
# Engine
# ==============================================================================


class _Instance:
    """The entry's documents read through io, specialized at ``values``."""

    def __init__(self, entry: CorpusEntry, values: Mapping[str, str]):
        self.values = rational_values(values)
        self.fields: Dict[str, FieldSpec] = {}
        self.algebras: Dict[str, AlgebraPresentation] = {}
        for key, name in entry.algebras.items():
            p = read_presentation(entry.file(name))
            self.fields[key] = p.field
            self.algebras[key] = p.specialize(self.values) if self.values else p
        self.actions: Dict[str, ActionFamily] = {}
        for key, name in entry.actions.items():
            a = read_action(entry.file(name))
            self.actions[key] = a.specialize(self.values) if self.values else a
        self.operators: Dict[str, OOperatorData] = {}
        for key, name in entry.operators.items():
            t = read_operator(entry.file(name))
            self.operators[key] = t.specialize(self.values) if self.values else t

    def inline_map(self, rows: Any, algebra: str, path: str) -> LinearMap:
        f = map_from_rows(rows, self.fields[algebra], path)
        return f.specialize(self.values) if self.values else f


def _engine_checks(check: Dict[str, Any], inst: _Instance, jobs: Optional[int]) -> List[CheckReport]:
    kind = check["kind"]
    if kind == "omni":
        beta = map_from_rows(check["beta"], FieldSpec.parse(check.get("field", "rationals")), "beta")
        out = omni_gl_example(int(check["n"]), beta, mode=check.get("mode", "yau"), jobs=jobs)
        return check_variety(out, jobs=jobs).checks

    algebras, actions, operators = inst.algebras, inst.actions, inst.operators
    p = algebras[check["algebra"]]
    if kind == "variety":
        return check_variety(p, jobs=jobs).checks
    if kind == "identity":
        return check_named([check["identity"]], context_for_algebra(p), jobs=jobs).checks
    if kind == "bimodule":
        return check_bimodule(p, actions[check["actions"]], jobs=jobs).checks
    if kind == "matched":
        q = algebras[check["other"]]
        return check_matched_pair(p, q, actions[check["actions"]], actions[check["back"]], jobs=jobs).checks
    if kind == "matched_sum":
        q = algebras[check["other"]]
        out = matched_sum(p, q, actions[check["actions"]], actions[check["back"]], jobs=jobs)
        return check_variety(out, jobs=jobs).checks
    if kind == "rota_baxter":
        return check_ooperator(p, None, operators[check["operator"]], jobs=jobs).checks
    if kind == "induce":
        out = induce_dendriform(p, regular_actions(p, jobs=jobs), operators[check["operator"]], jobs=jobs)
        return [CheckReport.fact("induce_dendriform", out == algebras[check["expect"]])]
    if kind == "twist":
        morphisms = {
            name: inst.inline_map(rows, check["algebra"], f"morphisms.{name}")
            for name, rows in check["morphisms"].items()
        }
        out = yau_twist(p, TwistRecipe(morphisms), strict=False, jobs=jobs)
        return [CheckReport.fact("yau_twist", out == algebras[check["expect"]])]
    if kind == "derive":
        out = derived_algebra(p, int(check["type"]), int(check["n"]), strict=False, jobs=jobs)
        return [CheckReport.fact("derived_algebra", out == algebras[check["expect"]])]
    # subadjacent
    return [CheckReport.fact("sub_adjacent", sub_adjacent(p, jobs=jobs) == algebras[check["expect"]])]


@logged_operation("run_entry")
def run_entry(entry: CorpusEntry, jobs: Optional[int] = None) -> Report:
    """Every declared check of ``entry`` through the engine, once per specialization."""
    report = Report(title=f"corpus {entry.id}")
    for values in _runs(entry):
        inst = _Instance(entry, values)
        for check in entry.checks:
            with log_context(check=check["label"]):
                for result in _engine_checks(check, inst, jobs):
                    result.context = _context(check["label"], result.context, values)
                    report.add(result)
    return report


# ==============================================================================
# Oracle
# ==============================================================================


class _OracleInstance:
    """The entry's documents as plain nested lists."""

    def __init__(self, entry: CorpusEntry, values: Mapping[str, str]):
        self.values = rational_values(values)
        self.algebras: Dict[str, oracle.Algebra] = {}
        for key, name in entry.algebras.items():
            A = oracle.Algebra(load_json(entry.file(name)))
            self.algebras[key] = A.specialized(self.values) if self.values else A
        self.fields = {key: oracle.Algebra(load_json(entry.file(n))).field for key, n in entry.algebras.items()}
        self.modules: Dict[str, oracle.Module] = {}
        for key, name in entry.actions.items():
            V = oracle.Module(load_json(entry.file(name)))
            self.modules[key] = V.specialized(self.values) if self.values else V
        self.operators: Dict[str, oracle.Mat] = {}
        self.conventions: Dict[str, str] = {}
        for key, name in entry.operators.items():
            data = load_json(entry.file(name))
            rows = oracle.read_rows(data["T"], FieldSpec.parse(data["field"]))
            self.operators[key] = oracle.specialize_rows(rows, self.values)
            convention = str(data.get("convention", "hom_paper"))
            self.conventions[key] = CONVENTION_ALIASES.get(convention, convention)

    def rows(self, rows: Any, algebra: str) -> oracle.Mat:
        return oracle.specialize_rows(oracle.read_rows(rows, self.fields[algebra]), self.values)


def _oracle_records(check: Dict[str, Any], inst: _OracleInstance) -> List[ReportRecord]:
    kind = check["kind"]
    if kind == "omni":
        beta = oracle.read_rows(check["beta"], FieldSpec.parse(check.get("field", "rationals")))
        return oracle.variety(oracle.omni(int(check["n"]), beta))

    algebras, modules = inst.algebras, inst.modules
    A = algebras[check["algebra"]]
    if kind == "variety":
        return oracle.variety(A)
    if kind == "identity":
        return [oracle.evaluate(check["identity"], oracle.Env(A))]
    if kind == "bimodule":
        return oracle.bimodule(A, modules[check["actions"]])
    if kind == "matched":
        return oracle.matched(A, algebras[check["other"]], modules[check["actions"]], modules[check["back"]])
    if kind == "matched_sum":
        out = oracle.bowtie(A, algebras[check["other"]], modules[check["actions"]], modules[check["back"]])
        return oracle.variety(out)
    if kind == "rota_baxter":
        return oracle.rota_baxter(A, inst.operators[check["operator"]])
    if kind == "induce":
        key = check["operator"]
        out = oracle.induced(A, inst.operators[key], inst.conventions[key])
        return [oracle.fact("induce_dendriform", oracle.same_algebra(out, algebras[check["expect"]]))]
    if kind == "twist":
        al = inst.rows(check["morphisms"]["al"], check["algebra"])
        be = inst.rows(check["morphisms"].get("be", check["morphisms"]["al"]), check["algebra"])
        out = oracle.twisted(A, al, be)
        return [oracle.fact("yau_twist", oracle.same_algebra(out, algebras[check["expect"]]))]
    if kind == "derive":
        out = oracle.derived(A, int(check["type"]), int(check["n"]))
        return [oracle.fact("derived_algebra", oracle.same_algebra(out, algebras[check["expect"]]))]
    return [oracle.fact("sub_adjacent", oracle.same_algebra(oracle.subadjacent(A), algebras[check["expect"]]))]


def oracle_entry(entry: CorpusEntry) -> List[ReportRecord]:
    """The records the straight-line evaluator expects for ``entry``."""
    records: List[ReportRecord] = []
    for values in _runs(entry):
        inst = _OracleInstance(entry, values)
        for check in entry.checks:
            for record in _oracle_records(check, inst):
                record.context = _context(check["label"], record.context, values)
                records.append(record)
    return records


# ==============================================================================
# Operations
# ==============================================================================


@logged_operation("corpus_run")
def corpus_run(entry_id: str, jobs: Optional[int] = None, corpus_dir: Optional[Path] = None) -> Report:
    """
    Run an entry and diff it against its golden report.

    Raises:
        GoldenMismatchError: if any record differs from the golden
    """
    entry = load_entry(entry_id, corpus_dir)
    with log_context(algebra=entry.id):
        report = run_entry(entry, jobs=jobs)
        diff = diff_records(entry.golden(), records_from_report(report))
    if diff:
        raise GoldenMismatchError(entry.id, diff)
    log_info(f"Corpus entry {entry.id} matches its golden report ({len(report.checks)} records)")
    return report


@logged_operation("corpus_regenerate")
def corpus_regenerate(entry_id: Optional[str] = None, corpus_dir: Optional[Path] = None) -> List[str]:
    """Rewrite golden reports from the straight-line evaluator; returns the ids written."""
    entries = [load_entry(entry_id, corpus_dir)] if entry_id else corpus_list(corpus_dir)
    written = []
    for entry in entries:
        records = oracle_entry(entry)
        save_json(entry.golden_path, [r.to_dict() for r in records])
        written.append(entry.id)
    return written
