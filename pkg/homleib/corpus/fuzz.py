"""
Seeded random instances for the properties no frozen entry can cover.

Each case draws a Hom-Leibniz algebra A and a product on A* over the
rationals, both of dimension at most three and both twisted by the same
diagonal sign matrix (involutive, and multiplicative because brackets only
connect basis vectors whose signs multiply correctly). Draws have nonzero
brackets, half of them two-step nilpotent; candidates failing their own
variety check are redrawn. Every case then runs the
bialgebra/matched-pair comparison and a multilinearity spot check of the
defining identities.
"""

import random
from dataclasses import dataclass
from typing import List, Optional, Sequence

from homleib.algebra.linalg import LinearMap, Product
from homleib.algebra.model import AlgebraPresentation, VarietyTag
from homleib.algebra.scalar import FieldSpec
from homleib.core.config import get_config
from homleib.core.logging import log_context, log_debug, log_info, log_warning, logged_operation
from homleib.duality.bialgebra import bialgebra_matchedpair_equiv
from homleib.identities.catalog import load_catalog
from homleib.identities.checker import CheckReport, Report, check_identity, check_variety, spot_check
from homleib.identities.evaluator import context_for_algebra

MAX_DIM = 3
MAX_ENTRIES = 6
MAX_DRAWS = 20
NILPOTENT_SHARE = 0.5
COEFFICIENTS = (-2, -1, 1, 2)
SPOT_IDENTITIES = ("hom_leibniz", "multiplicativity_al")


@dataclass
class FuzzCase:
    index: int
    algebra: AlgebraPresentation
    dual: AlgebraPresentation

    @property
    def label(self) -> str:
        return f"case {self.index} (dim {self.algebra.dim})"


def _graded_entries(rng: random.Random, signs: Sequence[int]) -> List[tuple]:
    dim = len(signs)
    entries = []
    for _ in range(rng.randint(1, MAX_ENTRIES)):
        i, j, k = (rng.randrange(dim) for _ in range(3))
        if signs[k] == signs[i] * signs[j]:
            entries.append((i, j, k, rng.choice(COEFFICIENTS)))
    return entries


def _nilpotent_entries(rng: random.Random, signs: Sequence[int]) -> List[tuple]:
    """Brackets landing on one basis vector e_k that itself multiplies to zero."""
    dim = len(signs)
    k = rng.randrange(dim)
    pairs = [
        (i, j)
        for i in range(dim)
        for j in range(dim)
        if k not in (i, j) and signs[i] * signs[j] == signs[k]
    ]
    if not pairs:
        return []
    return [(i, j, k, rng.choice(COEFFICIENTS)) for i, j in rng.sample(pairs, rng.randint(1, len(pairs)))]


def random_hom_leibniz(rng: random.Random, signs: Sequence[int], name: str) -> AlgebraPresentation:
    """
    A multiplicative Hom-Leibniz algebra twisted by diag(signs).

    Every draw has a nonzero bracket. Half of the draws are two-step
    nilpotent, which always satisfy the identities; the rest are
    unconstrained and often rejected. Falls back to the abelian bracket
    when no draw passes (always the case in dimension one).
    """
    field = FieldSpec.rationals()
    dim = len(signs)
    twist = LinearMap.diagonal(field, list(signs))
    for _ in range(MAX_DRAWS):
        draw = _nilpotent_entries if rng.random() < NILPOTENT_SHARE else _graded_entries
        bracket = Product.from_entries(field, dim, draw(rng, signs))
        if bracket.is_zero:
            continue
        p = AlgebraPresentation(
            dim=dim,
            field=field,
            variety=VarietyTag.HOM_LEIBNIZ,
            products={"br": bracket},
            twists={"al": twist},
            multiplicative=True,
            name=name,
        )
        if check_variety(p, jobs=1).passed:
            return p
    log_debug(f"No Hom-Leibniz draw for {name} after {MAX_DRAWS} attempts; using the abelian bracket")
    return AlgebraPresentation(
        dim=dim,
        field=field,
        variety=VarietyTag.HOM_LEIBNIZ,
        products={},
        twists={"al": twist},
        multiplicative=True,
        name=name,
    )


def random_case(rng: random.Random, index: int) -> FuzzCase:
    dim = rng.randint(1, MAX_DIM)
    signs = [rng.choice((1, -1)) for _ in range(dim)]
    return FuzzCase(
        index=index,
        algebra=random_hom_leibniz(rng, signs, f"fuzz{index}"),
        dual=random_hom_leibniz(rng, signs, f"fuzz{index}_dual"),
    )


def _spot_checks(case: FuzzCase, rng: random.Random, n: int, jobs: Optional[int]) -> List[CheckReport]:
    catalog = load_catalog()
    out = []
    for p in (case.algebra, case.dual):
        ctx = context_for_algebra(p)
        for name in SPOT_IDENTITIES:
            identity = catalog.get(name)
            verdict = check_identity(identity, ctx, jobs=jobs)
            check = spot_check(identity, ctx, n=n, seed=rng.randrange(2**32), basis_verdict=verdict)
            check.context = f"{case.label}: {p.name}"
            out.append(check)
    return out


@logged_operation("fuzz")
def fuzz(
    cases: Optional[int] = None,
    seed: Optional[int] = None,
    spot_checks: Optional[int] = None,
    jobs: Optional[int] = None,
) -> Report:
    """
    Run ``cases`` random instances from ``seed``.

    The report holds one required ``verdicts_agree`` entry per case and the
    spot checks; any disagreement or spot-check failure fails it.
    """
    cfg = get_config().check
    cases = cfg.fuzz_cases if cases is None else cases
    seed = cfg.seed if seed is None else seed
    spot_checks = cfg.spot_checks if spot_checks is None else spot_checks

    rng = random.Random(seed)
    report = Report(title=f"fuzz {cases} cases, seed {seed}")
    for index in range(1, cases + 1):
        case = random_case(rng, index)
        with log_context(check=case.label):
            equiv = bialgebra_matchedpair_equiv(case.algebra, case.dual, jobs=jobs)
            agree = equiv.get("verdicts_agree")
            agree.context = case.label
            report.add(agree)
            if not agree.passed:
                log_warning(f"{case.label}: {agree.note}")
            for check in _spot_checks(case, rng, spot_checks, jobs):
                report.add(check)

    failures = [c for c in report.checks if not c.passed]
    log_info(f"Fuzzed {cases} cases with seed {seed}: {len(failures)} failing checks")
    return report
