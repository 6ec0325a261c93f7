"""
Brute-force identity checking.

An identity is multilinear, so it holds everywhere iff it holds on every
tuple of basis vectors. Tuples are enumerated in lexicographic order and the
first failing tuple is reported; with several jobs the tuple range is split
into contiguous chunks and the smallest failing index wins, so reports do not
depend on the number of jobs.
"""

import itertools
import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from math import prod
from typing import Iterable, List, Optional, Sequence, Tuple

from homleib.algebra.linalg import Vector
from homleib.algebra.model import ActionFamily, AlgebraPresentation, VarietyTag, validate_pair
from homleib.core.config import get_config
from homleib.core.exceptions import UnknownSymbolError
from homleib.core.logging import log_context, log_debug, log_performance, logged_operation
from homleib.identities.ast import Identity
from homleib.identities.catalog import IdentityCatalog, load_catalog
from homleib.identities.evaluator import (
    EvalContext,
    Evaluator,
    context_for_algebra,
    context_for_module,
    context_for_pair,
    environment,
    evaluate_on_vectors,
    residual_coords,
)

PASS = "pass"
FAIL = "fail"
PRECONDITION_FAILED = "precondition_failed"

# Below this many tuples a single worker is always used
PARALLEL_THRESHOLD = 64


@dataclass
class CheckReport:
    """Verdict of one identity (or one named property) on one context."""

    identity: str
    status: str
    assignments: int = 0
    assignment: Optional[List[int]] = None  # 1-based basis indices
    variables: Tuple[Tuple[str, str], ...] = ()
    residual: Optional[List[str]] = None
    required: bool = True
    context: str = ""
    note: str = ""

    @property
    def passed(self) -> bool:
        return self.status == PASS

    @property
    def named_assignment(self) -> dict:
        """Failing assignment as {variable: 0-based index}."""
        if self.assignment is None:
            return {}
        return {name: idx - 1 for (name, _), idx in zip(self.variables, self.assignment)}

    @classmethod
    def fact(cls, name: str, ok: bool, note: str = "", required: bool = True, context: str = "") -> "CheckReport":
        """A property decided outside the identity engine (determinants, shapes, ...)."""
        return cls(identity=name, status=PASS if ok else FAIL, required=required, context=context, note=note)


@dataclass
class Report:
    """An ordered collection of checks with an overall verdict."""

    title: str = ""
    checks: List[CheckReport] = field(default_factory=list)
    precondition: Optional[str] = None
    notes: List[str] = field(default_factory=list)

    @property
    def status(self) -> str:
        if self.precondition is not None:
            return PRECONDITION_FAILED
        return PASS if all(c.passed for c in self.checks if c.required) else FAIL

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def add(self, check: CheckReport) -> CheckReport:
        self.checks.append(check)
        return check

    def extend(self, other: "Report", context: Optional[str] = None) -> None:
        for check in other.checks:
            if context is not None and not check.context:
                check.context = context
            self.checks.append(check)
        self.notes.extend(other.notes)

    def first_failure(self) -> Optional[CheckReport]:
        return next((c for c in self.checks if c.required and not c.passed), None)

    def get(self, identity: str) -> Optional[CheckReport]:
        return next((c for c in self.checks if c.identity == identity), None)

    def fail_precondition(self, name: str, message: str = "") -> "Report":
        self.precondition = name
        if message:
            self.notes.append(message)
        return self


# ==============================================================================
# Single identities
# ==============================================================================


def _dims(identity: Identity, ctx: EvalContext) -> List[int]:
    return [ctx.dim(sort) for _, sort in identity.variables]


def _scan(identity: Identity, ctx: EvalContext, start: int, stop: int, dims: Sequence[int]):
    """First failing index in [start, stop) and its residual, or None."""
    evaluator = Evaluator(ctx)
    tuples = itertools.islice(itertools.product(*(range(d) for d in dims)), start, stop)
    for offset, assignment in enumerate(tuples):
        value = evaluator.eval(identity.body, environment(identity, ctx, assignment))
        coords = residual_coords(value)
        if not all(c.is_zero for c in coords):
            return start + offset, assignment, coords
    return None


def _chunks(total: int, jobs: int) -> List[Tuple[int, int]]:
    size = -(-total // jobs)
    return [(lo, min(lo + size, total)) for lo in range(0, total, size)]


def check_identity(
    identity: Identity,
    ctx: EvalContext,
    jobs: Optional[int] = None,
    required: bool = True,
) -> CheckReport:
    """
    Evaluate ``identity`` on all basis tuples of ``ctx``.

    ``assignments`` counts tuples up to and including the first failure, or
    all of them on a pass.
    """
    missing = ctx.missing(identity)
    if missing:
        raise UnknownSymbolError(f"identity {identity.name} needs {', '.join(missing)}, not bound by {ctx.label!r}")
    jobs = jobs if jobs is not None else get_config().check.jobs
    dims = _dims(identity, ctx)
    total = prod(dims)

    started = time.perf_counter()
    with log_context(identity=identity.name, algebra=ctx.label):
        if jobs <= 1 or total < PARALLEL_THRESHOLD:
            found = _scan(identity, ctx, 0, total, dims)
        else:
            with ThreadPoolExecutor(max_workers=jobs) as pool:
                futures = [pool.submit(_scan, identity, ctx, lo, hi, dims) for lo, hi in _chunks(total, jobs)]
                results = [f.result() for f in futures]
            failures = [r for r in results if r is not None]
            found = min(failures, key=lambda r: r[0]) if failures else None
        log_performance(f"check {identity.name} ({total} tuples)", time.perf_counter() - started)

    if found is None:
        return CheckReport(
            identity=identity.name,
            status=PASS,
            assignments=total,
            variables=identity.variables,
            required=required,
        )
    index, assignment, coords = found
    log_debug(f"{identity.name} fails at tuple {index + 1} of {total}", identity=identity.name)
    return CheckReport(
        identity=identity.name,
        status=FAIL,
        assignments=index + 1,
        assignment=[i + 1 for i in assignment],
        variables=identity.variables,
        residual=[str(c) for c in coords],
        required=required,
    )


def check_identities(
    identities: Iterable[Identity],
    ctx: EvalContext,
    jobs: Optional[int] = None,
    required: bool = True,
    short_circuit: bool = False,
) -> List[CheckReport]:
    out = []
    for identity in identities:
        report = check_identity(identity, ctx, jobs=jobs, required=required)
        out.append(report)
        if short_circuit and not report.passed:
            break
    return out


def spot_check(
    identity: Identity,
    ctx: EvalContext,
    n: Optional[int] = None,
    seed: Optional[int] = None,
    basis_verdict: Optional[CheckReport] = None,
) -> CheckReport:
    """
    Evaluate on ``n`` random integer vector tuples and compare with the
    basis verdict: a basis pass must give a zero residual everywhere.
    """
    cfg = get_config().check
    n = cfg.spot_checks if n is None else n
    seed = cfg.seed if seed is None else seed
    verdict = basis_verdict or check_identity(identity, ctx)
    rng = random.Random(seed)
    nonzero = 0
    for _ in range(n):
        values = {
            name: Vector(ctx.field, [rng.randint(-3, 3) for _ in range(ctx.dim(sort))])
            for name, sort in identity.variables
        }
        coords = residual_coords(evaluate_on_vectors(identity, ctx, values))
        if not all(c.is_zero for c in coords):
            nonzero += 1
            if verdict.passed:
                return CheckReport(
                    identity=f"{identity.name}:spot",
                    status=FAIL,
                    assignments=n,
                    variables=identity.variables,
                    residual=[str(c) for c in coords],
                    note="basis verdict passed but a random tuple has a nonzero residual",
                )
    note = f"{nonzero} of {n} random tuples nonzero" if not verdict.passed else ""
    return CheckReport(identity=f"{identity.name}:spot", status=PASS, assignments=n, variables=identity.variables, note=note)


# ==============================================================================
# Identity sets per variety
# ==============================================================================


def variety_identities(p: AlgebraPresentation) -> List[str]:
    tag = p.variety
    if tag in (VarietyTag.HOM_LEIBNIZ, VarietyTag.LEIBNIZ):
        names = ["hom_leibniz"]
    elif tag == VarietyTag.HOM_LIE:
        names = ["skew_symmetry", "hom_jacobi"]
    elif tag == VarietyTag.HOM_LEIBNIZ_DENDRIFORM:
        names = ["dendr_1", "dendr_2", "dendr_3"]
    elif tag == VarietyTag.BIHOM_LEIBNIZ:
        names = ["bihom_twist_commute", "bihom_leibniz"]
    else:
        names = ["bihom_twist_commute", "bihom_dendr_1", "bihom_dendr_2", "bihom_dendr_3"]
    if p.multiplicative:
        names += multiplicativity_identities(tag)
    return names


def multiplicativity_identities(tag: VarietyTag) -> List[str]:
    twists = ("al", "be") if tag.is_bihom else ("al",)
    if tag.is_dendriform:
        return [f"multiplicativity_{t}_{op}" for t in twists for op in ("prec", "succ")]
    return [f"multiplicativity_{t}" for t in twists]


def bimodule_identities(p: AlgebraPresentation, a: ActionFamily) -> List[str]:
    tag = p.variety
    if tag == VarietyTag.HOM_LEIBNIZ_DENDRIFORM:
        core, twists = range(1, 10), range(10, 14)
        prefix = "dendr_bimod"
    elif tag == VarietyTag.BIHOM_LEIBNIZ:
        core, twists = range(1, 4), range(4, 8)
        prefix = "bihom_bimod"
    elif tag == VarietyTag.BIHOM_LEIBNIZ_DENDRIFORM:
        core, twists = range(1, 10), range(10, 18)
        prefix = "bihom_dendr_bimod"
    else:
        core, twists = range(1, 4), range(4, 6)
        prefix = "homleib_bimod"
    indices = list(core) + (list(twists) if a.multiplicative else [])
    return [f"{prefix}_{i}" for i in indices]


MATCHED_SETS = {
    VarietyTag.HOM_LEIBNIZ: ("matched_pair", 6),
    VarietyTag.LEIBNIZ: ("matched_pair", 6),
    VarietyTag.HOM_LIE: ("matched_pair", 6),
    VarietyTag.HOM_LEIBNIZ_DENDRIFORM: ("dendr_matched", 18),
    VarietyTag.BIHOM_LEIBNIZ: ("bihom_matched", 6),
    VarietyTag.BIHOM_LEIBNIZ_DENDRIFORM: ("bihom_dendr_matched", 18),
}


def matched_identities(tag: VarietyTag) -> List[str]:
    prefix, count = MATCHED_SETS[tag]
    return [f"{prefix}_{i}" for i in range(1, count + 1)]


# ==============================================================================
# Aggregate checks
# ==============================================================================


@logged_operation("check_variety")
def check_variety(
    p: AlgebraPresentation, catalog: Optional[IdentityCatalog] = None, jobs: Optional[int] = None
) -> Report:
    """Run the variety's defining identities (plus multiplicativity when claimed)."""
    catalog = catalog or load_catalog()
    ctx = context_for_algebra(p)
    report = Report(title=f"{p.variety.value} {p.name}".strip())
    for identity in catalog.select(variety_identities(p)):
        report.add(check_identity(identity, ctx, jobs=jobs))
    return report


@logged_operation("check_bimodule")
def check_bimodule(
    p: AlgebraPresentation,
    a: ActionFamily,
    catalog: Optional[IdentityCatalog] = None,
    jobs: Optional[int] = None,
) -> Report:
    """
    Bimodule conditions of ``a`` over ``p``. Twist intertwinings run only
    when the family claims multiplicativity; the Hom-Leibniz consequence is
    asserted once the conditions pass.
    """
    catalog = catalog or load_catalog()
    report = Report(title=f"bimodule {a.name or 'actions'} over {p.name or p.variety.value}")
    validation = validate_pair(p, a)
    if not validation.ok:
        return report.fail_precondition("shape", "; ".join(validation.problems))

    ctx = context_for_module(p, a)
    for identity in catalog.select(bimodule_identities(p, a)):
        report.add(check_identity(identity, ctx, jobs=jobs))
    if report.passed and not p.variety.is_dendriform and not p.variety.is_bihom:
        report.add(check_identity(catalog.get("homleib_bimod_consequence"), ctx, jobs=jobs))
    return report


def _twist_agreement(pA: AlgebraPresentation, pB: AlgebraPresentation, aA: ActionFamily, aB: ActionFamily) -> List[str]:
    problems = []
    if aA.beV != pB.al:
        problems.append("module twist of A on B differs from the twist al of B")
    if aB.beV != pA.al:
        problems.append("module twist of B on A differs from the twist al of A")
    if pA.variety.is_bihom:
        if aA.beV2 != pB.be:
            problems.append("second module twist of A on B differs from the twist be of B")
        if aB.beV2 != pA.be:
            problems.append("second module twist of B on A differs from the twist be of A")
    return problems


@logged_operation("check_matched_pair")
def check_matched_pair(
    pA: AlgebraPresentation,
    pB: AlgebraPresentation,
    aA: ActionFamily,
    aB: ActionFamily,
    catalog: Optional[IdentityCatalog] = None,
    jobs: Optional[int] = None,
    short_circuit: bool = True,
) -> Report:
    """
    Matched-pair conditions for A (acting on B by ``aA``) and B (acting on A
    by ``aB``). Both bimodule checks must pass first; coupling conditions
    then run in order and by default stop at the first failure.
    """
    catalog = catalog or load_catalog()
    report = Report(title=f"matched pair {pA.name or 'A'} ⋈ {pB.name or 'B'}")
    if pA.variety != pB.variety:
        return report.fail_precondition("variety", f"{pA.variety.value} and {pB.variety.value} differ")

    report.extend(check_bimodule(pA, aA, catalog, jobs), context="A on B")
    report.extend(check_bimodule(pB, aB, catalog, jobs), context="B on A")
    if not report.passed:
        return report.fail_precondition("bimodule", "a bimodule check failed")
    problems = _twist_agreement(pA, pB, aA, aB)
    if problems:
        return report.fail_precondition("twists", "; ".join(problems))

    ctx = context_for_pair(pA, pB, aA, aB)
    names = matched_identities(pA.variety)
    for check in check_identities(catalog.select(names), ctx, jobs=jobs, short_circuit=short_circuit):
        check.context = "coupling"
        report.add(check)
    if names[0].startswith("matched_pair") and report.passed:
        alt = check_identity(catalog.get("matched_pair_6_alt"), ctx, jobs=jobs, required=False)
        alt.context = "coupling"
        report.add(alt)
    return report


@logged_operation("check_named")
def check_named(
    names: Sequence[str],
    ctx: EvalContext,
    catalog: Optional[IdentityCatalog] = None,
    jobs: Optional[int] = None,
    title: str = "",
) -> Report:
    """Run catalog identities by name on an arbitrary context."""
    catalog = catalog or load_catalog()
    report = Report(title=title or ", ".join(names))
    for identity in catalog.select(names):
        report.add(check_identity(identity, ctx, jobs=jobs))
    return report
