"""
Command handlers for homleib - business logic separated from the CLI interface.
"""

from contextlib import contextmanager
from pathlib import Path
from typing import List, Optional, Sequence, Tuple, Union

from homleib.algebra.io import (
    read_action,
    read_operator,
    read_presentation,
    save_action,
    save_presentation,
    write_action,
    write_presentation,
)
from homleib.algebra.model import ActionFamily, AlgebraPresentation
from homleib.algebra.scalar import FieldSpec
from homleib.core.data_utils import parse_split, save_json
from homleib.core.exceptions import InputError, PreconditionError, PresentationError
from homleib.core.logging import log_context, log_info, logged_operation
from homleib.construct.actions import regular_actions
from homleib.construct.omni import omni_gl_example
from homleib.construct.sums import matched_sum, semidirect_sum, sub_adjacent
from homleib.construct.twist import TwistRecipe, derived_algebra, yau_twist
from homleib.corpus.fuzz import fuzz
from homleib.corpus.registry import corpus_list, corpus_regenerate, corpus_run
from homleib.duality.bialgebra import bialgebra_matchedpair_equiv, check_bialgebra
from homleib.duality.dual import dual_actions
from homleib.duality.forms import BilinearFormData, check_form, manin_check
from homleib.duality.ooperator import check_ooperator, dendriform_from_form, induce_dendriform
from homleib.identities.catalog import load_catalog
from homleib.identities.checker import (
    Report,
    check_bimodule,
    check_identity,
    check_matched_pair,
    check_named,
    check_variety,
    spot_check,
    variety_identities,
)
from homleib.identities.evaluator import context_for_algebra, context_for_module
from homleib.output.report import ReportRecord, parse_machine, records_from_report

from .options import ResolvedOptions, parse_map, split_files

Constructed = Union[AlgebraPresentation, ActionFamily]


def _merge(report: Report, part: Report, context: Optional[str] = None) -> None:
    report.extend(part, context)
    if part.precondition is not None and report.precondition is None:
        report.precondition = part.precondition


def _form(p: AlgebraPresentation) -> BilinearFormData:
    if p.form is None:
        raise PresentationError("presentation carries no form", "form")
    return BilinearFormData(p.form)


@contextmanager
def _strict_hint(strict: bool):
    """Point at --no-strict when a strict-only precondition (one with a report) fails."""
    try:
        yield
    except PreconditionError as e:
        if not strict or e.report is None:
            raise
        raise PreconditionError(e.precondition, f"{e.detail}; --no-strict continues with a warning", e.report) from e


def save_report(report: Report, path: str) -> None:
    save_json(path, [r.to_dict() for r in records_from_report(report)])
    log_info(f"Report written to {path}")


class CommandHandlers:
    """Handles the business logic for CLI commands."""

    @staticmethod
    @logged_operation("check_command")
    def handle_check(
        options: ResolvedOptions,
        path: str,
        variety: bool = False,
        identities: Sequence[str] = (),
        bimodule: Optional[str] = None,
        matched: Optional[str] = None,
        ooperator: Optional[str] = None,
        bialgebra: bool = False,
        equiv: Optional[str] = None,
        form: bool = False,
        manin: Optional[str] = None,
        spot: bool = False,
    ) -> Report:
        """Run every requested check on one presentation; ``--variety`` when none is named."""
        jobs = options.jobs
        p = read_presentation(path)
        report = Report(title=p.name)
        requested = any([identities, bimodule, matched, ooperator, bialgebra, equiv, form, manin])

        with log_context(algebra=p.name):
            if variety or not requested:
                _merge(report, check_variety(p, jobs=jobs))
            actions = read_action(bimodule) if bimodule else None
            if actions is not None:
                _merge(report, check_bimodule(p, actions, jobs=jobs))
            if identities:
                ctx = context_for_module(p, actions) if actions is not None else context_for_algebra(p)
                _merge(report, check_named(list(identities), ctx, jobs=jobs))
            if matched:
                other, a_on_b, b_on_a = split_files(matched, 3, "--matched")
                pB = read_presentation(other)
                _merge(
                    report,
                    check_matched_pair(p, pB, read_action(a_on_b), read_action(b_on_a), jobs=jobs),
                )
            if ooperator:
                parts = [part.strip() for part in ooperator.split(",") if part.strip()]
                if len(parts) == 1:
                    _merge(report, check_ooperator(p, None, read_operator(parts[0]), jobs=jobs))
                elif len(parts) == 2:
                    _merge(report, check_ooperator(p, read_action(parts[0]), read_operator(parts[1]), jobs=jobs))
                else:
                    raise InputError(f"--ooperator expects T or ACTIONS,T, got {ooperator!r}")
            if bialgebra:
                _merge(report, check_bialgebra(p, jobs=jobs))
            if equiv:
                _merge(report, bialgebra_matchedpair_equiv(p, read_presentation(equiv), jobs=jobs))
            if form:
                _merge(report, check_form(p, _form(p), jobs=jobs))
            if manin:
                _merge(report, manin_check(p, _form(p), parse_split(manin, p.dim), jobs=jobs))
            if spot:
                names = list(identities) or variety_identities(p)
                _merge(report, CommandHandlers._spot_checks(options, p, actions, names))
        return report

    @staticmethod
    def _spot_checks(
        options: ResolvedOptions,
        p: AlgebraPresentation,
        actions: Optional[ActionFamily],
        names: List[str],
    ) -> Report:
        catalog = load_catalog()
        ctx = context_for_module(p, actions) if actions is not None else context_for_algebra(p)
        report = Report(title="spot checks")
        for name in names:
            identity = catalog.get(name)
            verdict = check_identity(identity, ctx, jobs=options.jobs)
            report.add(spot_check(identity, ctx, seed=options.seed, basis_verdict=verdict))
        return report

    @staticmethod
    @logged_operation("construct_command")
    def handle_construct(
        options: ResolvedOptions,
        kind: str,
        inputs: Sequence[str],
        type_: int = 1,
        n: int = 1,
        alpha: Optional[str] = None,
        alpha2: Optional[str] = None,
        beta: str = "id",
        mode: Optional[str] = None,
        strict: bool = True,
    ) -> Constructed:
        """Build the requested object; every construction re-verifies its output."""
        jobs = options.jobs
        expected = {
            "twist": 1,
            "derive": 1,
            "semidirect": 2,
            "matched-sum": 4,
            "subadjacent": 1,
            "dualize": 2,
            "from-form": 1,
            "omni": 0,
        }
        if kind == "induce":
            if len(inputs) not in (2, 3):
                raise InputError("induce expects ALGEBRA OPERATOR or ALGEBRA ACTIONS OPERATOR")
        elif kind not in expected:
            raise InputError(f"unknown construction {kind!r}")
        elif len(inputs) != expected[kind]:
            raise InputError(f"{kind} expects {expected[kind]} input files, got {len(inputs)}")

        log_info(f"Constructing {kind} from {', '.join(inputs) or 'no inputs'}")
        if kind == "omni":
            field = FieldSpec.rationals()
            return omni_gl_example(n, parse_map(beta, field, n, "--beta"), mode=mode or "yau", jobs=jobs)

        p = read_presentation(inputs[0])
        with log_context(algebra=p.name):
            if kind == "twist":
                if alpha is None:
                    raise InputError("twist needs --alpha")
                morphisms = {"al": parse_map(alpha, p.field, p.dim, "--alpha")}
                if alpha2 is not None:
                    morphisms["be"] = parse_map(alpha2, p.field, p.dim, "--alpha2")
                recipe = TwistRecipe(morphisms, mode) if mode else TwistRecipe(morphisms)
                with _strict_hint(strict):
                    return yau_twist(p, recipe, strict=strict, jobs=jobs)
            if kind == "derive":
                with _strict_hint(strict):
                    return derived_algebra(p, type_, n, strict=strict, jobs=jobs)
            if kind == "semidirect":
                return semidirect_sum(p, read_action(inputs[1]), jobs=jobs)
            if kind == "matched-sum":
                pB = read_presentation(inputs[1])
                return matched_sum(p, pB, read_action(inputs[2]), read_action(inputs[3]), jobs=jobs)
            if kind == "subadjacent":
                return sub_adjacent(p, jobs=jobs)
            if kind == "dualize":
                return dual_actions(read_action(inputs[1]), p, mode or "lr", jobs=jobs)
            if kind == "from-form":
                return dendriform_from_form(p, _form(p), jobs=jobs)
            # induce
            actions = read_action(inputs[1]) if len(inputs) == 3 else regular_actions(p, jobs=jobs)
            return induce_dendriform(p, actions, read_operator(inputs[-1]), jobs=jobs)

    @staticmethod
    def write_constructed(result: Constructed, out: Optional[str]) -> Optional[Path]:
        """Write to ``out``, or return None when the document should go to stdout."""
        if out is None:
            return None
        path = Path(out)
        if isinstance(result, ActionFamily):
            write_action(result, path)
        else:
            write_presentation(result, path)
        log_info(f"Wrote {path}")
        return path

    @staticmethod
    def document(result: Constructed) -> str:
        if isinstance(result, ActionFamily):
            return save_action(result)
        return save_presentation(result)

    @staticmethod
    def handle_report(path: str) -> List[ReportRecord]:
        p = Path(path)
        if not p.exists():
            raise InputError(f"file not found: {p}")
        return parse_machine(p.read_text(encoding="utf-8"))

    @staticmethod
    @logged_operation("corpus_run_command")
    def handle_corpus_run(options: ResolvedOptions, entry_ids: Sequence[str]) -> List[Tuple[str, Report]]:
        ids = list(entry_ids) or [e.id for e in corpus_list()]
        results = []
        for entry_id in ids:
            with log_context(algebra=entry_id):
                results.append((entry_id, corpus_run(entry_id, jobs=options.jobs)))
        return results

    @staticmethod
    @logged_operation("corpus_regen_command")
    def handle_corpus_regen(entry_id: Optional[str]) -> List[str]:
        return corpus_regenerate(entry_id)

    @staticmethod
    @logged_operation("fuzz_command")
    def handle_fuzz(options: ResolvedOptions, cases: Optional[int]) -> Report:
        return fuzz(cases=cases, seed=options.seed, jobs=options.jobs)
