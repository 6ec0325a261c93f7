"""
Hom-Leibniz bialgebras and their matched-pair description.

A cobracket Δ: A → A⊗A is read off a product on A* through
⟨Δx, a*⊗b*⟩ = ⟨x, {a*, b*}⟩. The bialgebra compatibility conditions hold
exactly when (A, A*) with the coadjoint actions (L*, −L*−R*) both ways is
a matched pair; ``bialgebra_matchedpair_equiv`` runs both checks
independently and compares verdicts.
"""

from typing import Optional

from homleib.algebra.linalg import LinearMap, Product, Vector
from homleib.algebra.model import ActionFamily, AlgebraPresentation
from homleib.core.exceptions import PreconditionError, PresentationError
from homleib.core.logging import log_context, log_warning, logged_operation
from homleib.duality.dual import require_involutive_multiplicative, transpose
from homleib.identities.catalog import load_catalog
from homleib.identities.checker import CheckReport, Report, check_identity, check_matched_pair, check_named
from homleib.identities.evaluator import context_for_algebra, context_for_pair

BIALGEBRA_IDENTITIES = ("bialg_1", "bialg_2")
COADJOINT_IDENTITIES = ("bialg_equiv_1", "bialg_equiv_2")


def cobracket_from_dual(dual_product: Product) -> LinearMap:
    """
    The dim²×dim map whose column k holds Δ(e_k): row i·dim + j carries the
    coefficient of e_k in {e*_i, e*_j}.
    """
    n = dual_product.dim
    field = dual_product.field
    columns = [[field.zero] * (n * n) for _ in range(n)]
    for i, j, k, c in dual_product.entries():
        columns[k][i * n + j] = c
    return LinearMap.from_columns(field, [Vector(field, col) for col in columns], n * n)


@logged_operation("check_bialgebra")
def check_bialgebra(p: AlgebraPresentation, jobs: Optional[int] = None) -> Report:
    """The two bialgebra compatibility conditions between the bracket and Δ."""
    if p.cobracket is None:
        raise PresentationError("presentation carries no cobracket", "cobracket")
    if p.variety.is_dendriform or p.variety.is_bihom:
        raise PreconditionError("variety", f"bialgebras are defined over Hom-Leibniz algebras, not {p.variety.value}")
    require_involutive_multiplicative(p, jobs)
    return check_named(
        list(BIALGEBRA_IDENTITIES),
        context_for_algebra(p),
        jobs=jobs,
        title=f"bialgebra {p.name}".strip(),
    )


def coadjoint_actions(p: AlgebraPresentation, module_twist: LinearMap) -> ActionFamily:
    """(L*, −L*−R*) of ``p`` acting on the dual space, with the given twist."""
    br = p.bracket
    lefts = [br.left_multiplication(i) for i in range(p.dim)]
    rights = [br.right_multiplication(i) for i in range(p.dim)]
    return ActionFamily(
        algebra_dim=p.dim,
        module_dim=p.dim,
        field=p.field,
        actions={
            "l": tuple(-transpose(m) for m in lefts),
            "r": tuple(transpose(lm) + transpose(rm) for lm, rm in zip(lefts, rights)),
        },
        module_twists={"beV": module_twist},
        multiplicative=p.multiplicative,
        name=f"{p.name}_coadjoint" if p.name else "coadjoint",
    )


def _coadjoint_context(p: AlgebraPresentation, p_dual: AlgebraPresentation, a_on_dual, dual_on_a):
    """Binds ldual, rdual (A on A*) and ldual2, rdual2 (A* on A)."""
    def dual_left(q):
        return tuple(-transpose(q.bracket.left_multiplication(i)) for i in range(q.dim))

    def dual_right(q):
        return tuple(-transpose(q.bracket.right_multiplication(i)) for i in range(q.dim))

    ctx = context_for_pair(p, p_dual, a_on_dual, dual_on_a)
    return ctx.extend(
        actions={
            "ldual": dual_left(p),
            "rdual": dual_right(p),
            "ldual2": dual_left(p_dual),
            "rdual2": dual_right(p_dual),
        }
    )


@logged_operation("bialgebra_matchedpair_equiv")
def bialgebra_matchedpair_equiv(
    p: AlgebraPresentation,
    p_dual: AlgebraPresentation,
    jobs: Optional[int] = None,
    coadjoint_form: bool = False,
) -> Report:
    """
    Decide both sides of the bialgebra/matched-pair equivalence for ``p`` and
    a product on its dual space.

    The matched-pair checks and the bialgebra checks are reported as
    informational entries; the single required entry ``verdicts_agree``
    passes when both sides give the same verdict. ``p_dual`` must carry the
    transposed twist αᵀ.
    """
    for q in (p, p_dual):
        if q.variety.is_dendriform or q.variety.is_bihom:
            raise PreconditionError("variety", f"bialgebras are defined over Hom-Leibniz algebras, not {q.variety.value}")
        require_involutive_multiplicative(q, jobs)
    if p_dual.dim != p.dim or p_dual.field != p.field:
        raise PreconditionError("dual", "the dual algebra must have the same dimension and field")
    if p_dual.al != transpose(p.al):
        raise PreconditionError("dual twist", "the twist of the dual algebra must be the transpose of α")

    report = Report(title=f"bialgebra equivalence {p.name or 'A'} / {p_dual.name or 'A*'}")
    a_on_dual = coadjoint_actions(p, p_dual.al)
    dual_on_a = coadjoint_actions(p_dual, p.al)

    with log_context(check="matched_pair"):
        matched = check_matched_pair(p, p_dual, a_on_dual, dual_on_a, jobs=jobs, short_circuit=False)
    with log_context(check="bialgebra"):
        with_cobracket = p.replace(cobracket=cobracket_from_dual(p_dual.bracket))
        bialgebra = check_bialgebra(with_cobracket, jobs=jobs)

    for check in matched.checks:
        check.required = False
        check.context = f"matched pair: {check.context}" if check.context else "matched pair"
        report.add(check)
    for check in bialgebra.checks:
        check.required = False
        check.context = "bialgebra"
        report.add(check)

    if coadjoint_form:
        catalog = load_catalog()
        ctx = _coadjoint_context(p, p_dual, a_on_dual, dual_on_a)
        for name in COADJOINT_IDENTITIES:
            check = check_identity(catalog.get(name), ctx, jobs=jobs, required=False)
            check.context = "coadjoint"
            report.add(check)

    agree = matched.passed == bialgebra.passed
    verdicts = f"matched pair {matched.status}, bialgebra {bialgebra.status}"
    report.add(CheckReport.fact("verdicts_agree", agree, note=verdicts))
    report.notes.append(verdicts)
    if not agree:
        log_warning(f"Bialgebra and matched-pair verdicts disagree: {verdicts}")
    return report
