"""
Sums of presentations: sub-adjacent brackets, semidirect sums and matched
(bowtie) sums.

For algebras A, B acting on each other (A on B by l, r and B on A by l2, r2)
the bowtie product on A ⊕ B is

    [x + a, y + b]' = ([x, y] + l2(a)y + r2(b)x) + ([a, b] + l(x)b + r(y)a)

and every product of a dendriform pair splits the same way with the
matching split actions. Semidirect sums are the special case of an abelian B
with zero actions on A.
"""

from typing import Mapping, Optional

from homleib.algebra.linalg import LinearMap, Product, Vector
from homleib.algebra.model import ActionFamily, AlgebraPresentation, VarietyTag
from homleib.core.exceptions import PreconditionError
from homleib.core.logging import log_debug, logged_operation
from homleib.construct.twist import verify_output
from homleib.identities.checker import Report, check_bimodule, check_matched_pair, check_variety

# product name -> (left action, right action) acting through that product
ACTIONS_FOR_PRODUCT = {
    "br": ("l", "r"),
    "prec": ("lprec", "rprec"),
    "succ": ("lsucc", "rsucc"),
}


def _failure_label(report: Report) -> str:
    failed = report.first_failure()
    if failed is not None:
        where = f" ({failed.context})" if failed.context else ""
        return f"{failed.identity}{where}"
    return report.precondition or "unknown"


def _raise_unless(report: Report, precondition: str) -> None:
    if not report.passed:
        label = _failure_label(report)
        raise PreconditionError(precondition, f"{label} fails", report)


def _bowtie_product(
    pA: AlgebraPresentation,
    product_B: Product,
    aA: ActionFamily,
    aB: ActionFamily,
    pname: str,
) -> Product:
    nA, nB = pA.dim, product_B.dim
    field = pA.field
    lname, rname = ACTIONS_FOR_PRODUCT[pname]
    product_A = pA.product(pname)
    l_A, r_A = aA.matrices(lname), aA.matrices(rname)
    l_B, r_B = aB.matrices(lname), aB.matrices(rname)
    zero_A, zero_B = Vector.zero(field, nA), Vector.zero(field, nB)

    def entry(i: int, j: int) -> Vector:
        if i < nA and j < nA:
            return product_A.basis_product(i, j).concat(zero_B)
        if i < nA:
            b = j - nA
            return r_B[b].column(i).concat(l_A[i].column(b))
        if j < nA:
            a = i - nA
            return l_B[a].column(j).concat(r_A[j].column(a))
        return zero_A.concat(product_B.basis_product(i - nA, j - nA))

    return Product.from_bilinear(field, nA + nB, entry)


def bowtie(
    pA: AlgebraPresentation,
    products_B: Mapping[str, Product],
    twists_B: Mapping[str, LinearMap],
    aA: ActionFamily,
    aB: ActionFamily,
    multiplicative: bool,
    name: str = "",
) -> AlgebraPresentation:
    """The unverified block presentation on A ⊕ B."""
    products = {
        pname: _bowtie_product(pA, products_B[pname], aA, aB, pname) for pname in pA.variety.product_names
    }
    twists = {tname: pA.twists[tname].direct_sum(twists_B[tname]) for tname in pA.variety.twist_names}
    # Leibniz-type actions of a Hom-Lie algebra need not give a skew sum
    variety = VarietyTag.HOM_LEIBNIZ if pA.variety == VarietyTag.HOM_LIE else pA.variety
    log_debug(f"Built bowtie presentation of dimension {pA.dim + aA.module_dim}")
    return AlgebraPresentation(
        dim=pA.dim + aA.module_dim,
        field=pA.field,
        variety=variety,
        products=products,
        twists=twists,
        multiplicative=multiplicative,
        name=name,
    )


@logged_operation("sub_adjacent")
def sub_adjacent(p: AlgebraPresentation, jobs: Optional[int] = None) -> AlgebraPresentation:
    """The bracket x ≺ y + x ≻ y of a dendriform presentation."""
    if not p.variety.is_dendriform:
        raise PreconditionError("dendriform", f"{p.variety.value} has no split products")
    _raise_unless(check_variety(p, jobs=jobs), "variety")
    out = AlgebraPresentation(
        dim=p.dim,
        field=p.field,
        variety=p.variety.leibniz_counterpart,
        products={"br": p.bracket},
        twists=dict(p.twists),
        multiplicative=p.multiplicative,
        form=p.form,
        name=f"{p.name}_subadjacent" if p.name else "",
    )
    return verify_output(out, "sub_adjacent", jobs)


def sub_adjacent_actions(a: ActionFamily) -> ActionFamily:
    """(l≺ + l≻, r≺ + r≻) over the sub-adjacent algebra."""
    if not a.is_dendriform:
        return a
    return a.replace(
        actions={"l": a.matrices("l"), "r": a.matrices("r")},
        name=f"{a.name}_subadjacent" if a.name else "",
    )


def _module_as_algebra_twists(p: AlgebraPresentation, a: ActionFamily) -> dict:
    twists = {"al": a.beV}
    if p.variety.is_bihom:
        twists["be"] = a.beV2
    return twists


def _zero_back_action(p: AlgebraPresentation, a: ActionFamily) -> ActionFamily:
    zero = LinearMap.zero(p.field, p.dim)
    return ActionFamily(
        algebra_dim=a.module_dim,
        module_dim=p.dim,
        field=p.field,
        actions={n: (zero,) * a.module_dim for n in p.variety.action_names},
        module_twists={"beV": p.al, "beV2": p.be} if p.variety.is_bihom else {"beV": p.al},
        multiplicative=True,
        name="zero",
    )


@logged_operation("semidirect_sum")
def semidirect_sum(p: AlgebraPresentation, a: ActionFamily, jobs: Optional[int] = None) -> AlgebraPresentation:
    """
    A ⊕ V with [x₁+v₁, x₂+v₂]′ = [x₁, x₂] + l(x₁)v₂ + r(x₂)v₁ (each product of
    a dendriform presentation split likewise) and twists α ⊕ β.
    """
    _raise_unless(check_bimodule(p, a, jobs=jobs), "bimodule")
    products_V = {pname: Product.zero(p.field, a.module_dim) for pname in p.variety.product_names}
    out = bowtie(
        p,
        products_V,
        _module_as_algebra_twists(p, a),
        a,
        _zero_back_action(p, a),
        multiplicative=p.multiplicative and a.multiplicative,
        name=f"{p.name}_semidirect_{a.name}" if p.name and a.name else "",
    )
    return verify_output(out, "semidirect_sum", jobs)


@logged_operation("matched_sum")
def matched_sum(
    pA: AlgebraPresentation,
    pB: AlgebraPresentation,
    aA: ActionFamily,
    aB: ActionFamily,
    jobs: Optional[int] = None,
) -> AlgebraPresentation:
    """The bowtie presentation A ⋈ B of a matched pair."""
    report = check_matched_pair(pA, pB, aA, aB, jobs=jobs)
    _raise_unless(report, report.precondition or "matched pair")
    out = bowtie(
        pA,
        pB.products,
        pB.twists,
        aA,
        aB,
        multiplicative=all(x.multiplicative for x in (pA, pB, aA, aB)),
        name=f"{pA.name}_bowtie_{pB.name}" if pA.name and pB.name else "",
    )
    return verify_output(out, "matched_sum", jobs)
