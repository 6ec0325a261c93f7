"""
O-operators, Rota-Baxter operators and the dendriform structures they induce.
"""

from dataclasses import dataclass
from typing import List, Optional, Tuple

from homleib.algebra.linalg import LinearMap, Product, Vector, map_inverse, map_rank
from homleib.algebra.model import ActionFamily, AlgebraPresentation, OOperatorData
from homleib.core.exceptions import DimensionError, PreconditionError, VerificationError
from homleib.core.logging import log_debug, log_info, logged_operation
from homleib.construct.sums import sub_adjacent
from homleib.construct.twist import morphism_report, verify_output
from homleib.duality.dual import involutive_report, transpose
from homleib.duality.forms import BilinearFormData, check_form
from homleib.identities.checker import Report, check_named
from homleib.identities.evaluator import context_for_algebra, context_for_module


def ooperator_identities(p: AlgebraPresentation, rota_baxter: bool) -> List[str]:
    if rota_baxter:
        if p.variety.is_bihom:
            return ["rota_baxter_bihom", "rota_baxter_bihom_twist_1", "rota_baxter_bihom_twist_2"]
        return ["rota_baxter_hom", "rota_baxter_hom_twist"]
    if p.variety.is_bihom:
        return ["ooperator_bihom", "ooperator_bihom_twist_1", "ooperator_bihom_twist_2"]
    return ["ooperator_hom", "ooperator_hom_twist"]


def _require_leibniz_type(p: AlgebraPresentation, what: str) -> None:
    if p.variety.is_dendriform:
        raise PreconditionError("variety", f"{what} are defined over Leibniz-type algebras, not {p.variety.value}")


@logged_operation("check_ooperator")
def check_ooperator(
    p: AlgebraPresentation,
    a: Optional[ActionFamily],
    t: OOperatorData,
    jobs: Optional[int] = None,
) -> Report:
    """
    O-operator conditions of T: V → A for the bimodule ``a``.

    Without ``a``, T is checked as a Rota-Baxter operator of weight zero on
    ``p``: an O-operator for the regular actions that commutes with every
    twist.
    """
    _require_leibniz_type(p, "O-operators")
    if t.algebra_dim != p.dim:
        raise DimensionError(f"T lands in dimension {t.algebra_dim}, algebra has dimension {p.dim}")
    if a is None:
        if t.module_dim != p.dim:
            raise DimensionError(f"a Rota-Baxter operator must be square, got {t.T.shape}")
        ctx = context_for_algebra(p).extend(maps={"K": t.T})
        title = f"Rota-Baxter operator {t.name}".strip()
        names = ooperator_identities(p, rota_baxter=True)
    else:
        if t.module_dim != a.module_dim:
            raise DimensionError(f"T starts in dimension {t.module_dim}, module has dimension {a.module_dim}")
        ctx = context_for_module(p, a).extend(maps={"T": t.T})
        title = f"O-operator {t.name}".strip()
        names = ooperator_identities(p, rota_baxter=False)
    return check_named(names, ctx, jobs=jobs, title=title)


def _require_ooperator(p: AlgebraPresentation, a: ActionFamily, t: OOperatorData, jobs: Optional[int]) -> None:
    report = check_ooperator(p, a, t, jobs)
    if not report.passed:
        failed = report.first_failure()
        raise PreconditionError("O-operator", f"{failed.identity} fails", report)


def _induced_products(a: ActionFamily, t: OOperatorData) -> Tuple[Product, Product]:
    m = a.module_dim
    field = a.field
    images = [t.T.column(i) for i in range(m)]
    lefts = [a.action_map("l", x) for x in images]
    rights = [a.action_map("r", x) for x in images]
    if t.convention == "hom_paper":
        # u ≺ v = r(T(v))u, u ≻ v = l(T(u))v
        prec = Product.from_bilinear(field, m, lambda i, j: rights[j].column(i))
        succ = Product.from_bilinear(field, m, lambda i, j: lefts[i].column(j))
    else:
        # u ≺ v = r(T(u))v, u ≻ v = l(T(v))u
        prec = Product.from_bilinear(field, m, lambda i, j: rights[i].column(j))
        succ = Product.from_bilinear(field, m, lambda i, j: lefts[j].column(i))
    return prec, succ


def _module_side_twists(p: AlgebraPresentation, a: ActionFamily) -> dict:
    if p.variety.is_bihom:
        return {"al": a.beV, "be": a.beV2}
    return {"al": a.beV}


@logged_operation("induce_dendriform")
def induce_dendriform(
    p: AlgebraPresentation,
    a: ActionFamily,
    t: OOperatorData,
    jobs: Optional[int] = None,
) -> AlgebraPresentation:
    """
    The dendriform presentation induced on the module by an O-operator,
    using the convention stored on ``t``. The output is verified, and so is
    T being a morphism from its sub-adjacent algebra to ``p``.
    """
    _require_ooperator(p, a, t, jobs)
    prec, succ = _induced_products(a, t)
    out = AlgebraPresentation(
        dim=a.module_dim,
        field=p.field,
        variety=p.variety.dendriform_counterpart,
        products={"prec": prec, "succ": succ},
        twists=_module_side_twists(p, a),
        multiplicative=a.multiplicative,
        name=f"{t.name}_induced" if t.name else "induced",
    )
    verify_output(out, "induce_dendriform", jobs)

    morphism = morphism_report(t.T, sub_adjacent(out, jobs=jobs), p)
    if not morphism.passed:
        raise VerificationError("induce_dendriform", morphism)
    log_debug(f"T is a morphism from the induced bracket ({t.convention} convention)")
    return out


@dataclass
class ImageStructure:
    """The induced structure carried over to T(V) ⊂ A."""

    presentation: AlgebraPresentation
    embedding: LinearMap  # columns T(e_i), a basis of T(V)


@logged_operation("induce_on_image")
def induce_on_image(
    p: AlgebraPresentation,
    a: ActionFamily,
    t: OOperatorData,
    jobs: Optional[int] = None,
) -> ImageStructure:
    """
    T(u) ≺ T(v) = T(u ≺ v) and T(u) ≻ T(v) = T(u ≻ v) on T(V), written in
    the basis T(e_1), ..., T(e_m). Needs T injective.
    """
    rank = map_rank(t.T)
    if rank != t.module_dim:
        raise PreconditionError("injective", f"T has rank {rank}, module has dimension {t.module_dim}")
    module_side = induce_dendriform(p, a, t, jobs)
    image = module_side.replace(name=f"{t.name}_image" if t.name else "image")
    return ImageStructure(presentation=image, embedding=t.T)


@logged_operation("dendriform_from_invertible")
def dendriform_from_invertible(
    p: AlgebraPresentation,
    a: ActionFamily,
    t: OOperatorData,
    jobs: Optional[int] = None,
) -> AlgebraPresentation:
    """
    x ≻ y = T(l(x)T⁻¹(y)) and x ≺ y = T(r(y)T⁻¹(x)) on A, for an invertible
    O-operator T. Its sub-adjacent bracket is the bracket of ``p``.
    """
    _require_ooperator(p, a, t, jobs)
    T = t.T
    inverse = map_inverse(T)
    field = p.field
    lefts = [T.compose(a.action_map("l", p.basis(i))).compose(inverse) for i in range(p.dim)]
    rights = [T.compose(a.action_map("r", p.basis(j))).compose(inverse) for j in range(p.dim)]
    out = AlgebraPresentation(
        dim=p.dim,
        field=field,
        variety=p.variety.dendriform_counterpart,
        products={
            "prec": Product.from_bilinear(field, p.dim, lambda i, j: rights[j].column(i)),
            "succ": Product.from_bilinear(field, p.dim, lambda i, j: lefts[i].column(j)),
        },
        twists=dict(p.twists),
        multiplicative=p.multiplicative,
        name=f"{p.name}_split" if p.name else "split",
    )
    verify_output(out, "dendriform_from_invertible", jobs)
    if out.bracket != p.bracket:
        raise VerificationError("dendriform_from_invertible")
    return out


def splitting_actions(p: AlgebraPresentation) -> ActionFamily:
    """
    (L≻, R≺) with the twists of ``p``: over the sub-adjacent algebra the
    identity map is an invertible O-operator for these actions and
    dendriform_from_invertible gives back ≺ and ≻.
    """
    if not p.variety.is_dendriform:
        raise PreconditionError("dendriform", f"{p.variety.value} has no split products")
    twists = {"beV": p.al, "beV2": p.be} if p.variety.is_bihom else {"beV": p.al}
    return ActionFamily(
        algebra_dim=p.dim,
        module_dim=p.dim,
        field=p.field,
        actions={
            "l": tuple(p.product("succ").left_multiplication(i) for i in range(p.dim)),
            "r": tuple(p.product("prec").right_multiplication(i) for i in range(p.dim)),
        },
        module_twists=twists,
        multiplicative=p.multiplicative,
        name="splitting",
    )


def _pairing(f: BilinearFormData, u: Vector, v: Vector):
    gv = f.matrix.apply(v)
    acc = f.field.zero
    for i, ui in u.nonzero():
        acc = acc + ui * gv[i]
    return acc


@logged_operation("dendriform_from_form")
def dendriform_from_form(
    p: AlgebraPresentation,
    omega: BilinearFormData,
    jobs: Optional[int] = None,
) -> AlgebraPresentation:
    """
    The compatible dendriform structure of a symplectic form:
    ω(x ≺ y, z) = ω(y, [z, x]) and ω(x ≻ y, z) = ω(x, [y, z]) for every z,
    solved exactly against the Gram matrix.
    """
    _require_leibniz_type(p, "symplectic forms")
    if p.variety.is_bihom:
        raise PreconditionError("variety", "symplectic splitting takes a single twist")
    form_report = check_form(p, omega, ("nondegenerate", "skew", "cyclic_invariant"), jobs=jobs)
    if not form_report.passed:
        raise PreconditionError("form", f"{form_report.first_failure().identity} fails", form_report)
    if not involutive_report(p, jobs).passed:
        raise PreconditionError("involutive", f"the twist of {p.name or 'the algebra'} is not involutive")

    # ω(w, e_z) is coordinate z of Gᵀw
    solver = map_inverse(transpose(omega.matrix))
    br = p.bracket
    n = p.dim
    basis = [p.basis(i) for i in range(n)]

    def prec(i: int, j: int) -> Vector:
        rhs = [_pairing(omega, basis[j], br.apply(basis[z], basis[i])) for z in range(n)]
        return solver.apply(Vector(p.field, rhs))

    def succ(i: int, j: int) -> Vector:
        rhs = [_pairing(omega, basis[i], br.apply(basis[j], basis[z])) for z in range(n)]
        return solver.apply(Vector(p.field, rhs))

    out = AlgebraPresentation(
        dim=n,
        field=p.field,
        variety=p.variety.dendriform_counterpart,
        products={"prec": Product.from_bilinear(p.field, n, prec), "succ": Product.from_bilinear(p.field, n, succ)},
        twists=dict(p.twists),
        multiplicative=p.multiplicative,
        form=omega.matrix,
        name=f"{p.name}_symplectic" if p.name else "symplectic",
    )
    verify_output(out, "dendriform_from_form", jobs)
    symplectic = check_named(
        ["form_symplectic_prec", "form_symplectic_succ"], context_for_algebra(out), jobs=jobs, title="symplectic"
    )
    if not symplectic.passed or out.bracket != p.bracket:
        raise VerificationError("dendriform_from_form", symplectic)
    log_info(f"Split {p.name or 'the algebra'} along a symplectic form")
    return out
