"""
Yau twists and derived algebras.

Hom presentations are twisted by one morphism α′: every product becomes
α′∘(product) and the twist becomes α∘α′. BiHom presentations are twisted by
two morphisms: products become (x, y) ↦ α′₁(x)∘α′₂(y) and the twists become
α₁α′₁ and α₂α′₂. Outputs are always re-verified.
"""

from dataclasses import dataclass, field
from typing import Dict, List, Optional

from homleib.algebra.linalg import LinearMap
from homleib.algebra.model import AlgebraPresentation
from homleib.core.exceptions import DimensionError, PreconditionError, VerificationError
from homleib.core.logging import log_warning, logged_operation
from homleib.identities.checker import (
    CheckReport,
    Report,
    check_named,
    check_variety,
    multiplicativity_identities,
)
from homleib.identities.evaluator import context_for_algebra

YAU_FROM_UNTWISTED = "yau_from_untwisted"
COMPOSE_ONTO_TWISTED = "compose_onto_twisted"
TWIST_MODES = (YAU_FROM_UNTWISTED, COMPOSE_ONTO_TWISTED)


@dataclass
class TwistRecipe:
    """Morphisms keyed by the twist they compose with: ``al`` (and ``be``)."""

    morphisms: Dict[str, LinearMap] = field(default_factory=dict)
    mode: str = COMPOSE_ONTO_TWISTED

    def __post_init__(self):
        if self.mode not in TWIST_MODES:
            raise ValueError(f"unknown twist mode {self.mode!r}; expected one of {TWIST_MODES}")

    @classmethod
    def single(cls, alpha: LinearMap, mode: str = COMPOSE_ONTO_TWISTED) -> "TwistRecipe":
        return cls({"al": alpha}, mode)

    @classmethod
    def pair(cls, alpha1: LinearMap, alpha2: LinearMap, mode: str = COMPOSE_ONTO_TWISTED) -> "TwistRecipe":
        return cls({"al": alpha1, "be": alpha2}, mode)


def morphism_report(f: LinearMap, source: AlgebraPresentation, target: Optional[AlgebraPresentation] = None) -> Report:
    """
    Is ``f`` a morphism source → target? Products must be carried to
    products and twists intertwined (f∘α = α′∘f). Without a target, ``f``
    is checked as an endomorphism commuting with the source twists.
    """
    target = target or source
    report = Report(title="morphism")
    if f.shape != (target.dim, source.dim):
        raise DimensionError(f"morphism is {f.dim_out}×{f.dim_in}, expected {target.dim}×{source.dim}")
    if target.variety.product_names != source.variety.product_names:
        return report.fail_precondition("variety", "source and target have different products")
    for pname in source.variety.product_names:
        ok = all(
            f.apply(source.product(pname).basis_product(i, j))
            == target.product(pname).apply(f.column(i), f.column(j))
            for i in range(source.dim)
            for j in range(source.dim)
        )
        report.add(CheckReport.fact(f"preserves_{pname}", ok))
    for tname in source.variety.twist_names:
        twist_src = source.twists[tname]
        twist_tgt = target.twists.get(tname, target.al)
        report.add(CheckReport.fact(f"intertwines_{tname}", f.compose(twist_src) == twist_tgt.compose(f)))
    return report


def multiplicativity_report(p: AlgebraPresentation, jobs: Optional[int] = None) -> Report:
    """Multiplicativity of every twist over every product, whatever the claim."""
    names = multiplicativity_identities(p.variety)
    return check_named(names, context_for_algebra(p), jobs=jobs, title=f"multiplicativity {p.name}".strip())


def verify_output(p: AlgebraPresentation, construction: str, jobs: Optional[int] = None) -> AlgebraPresentation:
    report = check_variety(p, jobs=jobs)
    if not report.passed:
        raise VerificationError(construction, report)
    return p


def _require(report: Report, precondition: str, strict: bool) -> None:
    if report.passed:
        return
    failed = report.first_failure()
    label = failed.identity if failed else report.precondition
    if strict:
        raise PreconditionError(precondition, f"{label} fails", report)
    log_warning(f"Precondition {precondition} does not hold ({label} fails); continuing")


def _twisted(p: AlgebraPresentation, alpha1: LinearMap, alpha2: LinearMap, name: str) -> AlgebraPresentation:
    if p.variety.is_bihom:
        products = {n: prod.precompose(alpha1, alpha2) for n, prod in p.products.items()}
        twists = {"al": p.al.compose(alpha1), "be": p.be.compose(alpha2)}
    else:
        products = {n: prod.postcompose(alpha1) for n, prod in p.products.items()}
        twists = {"al": p.al.compose(alpha1)}
    return p.replace(products=products, twists=twists, name=name)


@logged_operation("yau_twist")
def yau_twist(
    p: AlgebraPresentation,
    recipe: TwistRecipe,
    strict: bool = True,
    jobs: Optional[int] = None,
) -> AlgebraPresentation:
    """
    Twist ``p`` along the recipe's morphisms.

    Twists and morphisms must commute. With ``strict`` a failed morphism
    check raises PreconditionError; otherwise it is logged and the output
    is still verified.
    """
    alpha1 = recipe.morphisms.get("al")
    if alpha1 is None:
        raise PreconditionError("recipe", "a twist recipe needs a morphism for al")
    alpha2 = recipe.morphisms.get("be", alpha1)
    if p.variety.is_bihom and "be" not in recipe.morphisms:
        raise PreconditionError("recipe", "a BiHom twist needs morphisms for al and be")
    if not p.variety.is_bihom and "be" in recipe.morphisms:
        raise PreconditionError("recipe", f"{p.variety.value} takes a single morphism")

    if recipe.mode == YAU_FROM_UNTWISTED and not all(t.is_identity for t in p.twists.values()):
        raise PreconditionError("untwisted", "yau_from_untwisted needs identity twists")

    maps: List[LinearMap] = list(p.twists.values()) + [alpha1, alpha2]
    commuting = all(f.commutes_with(g) for i, f in enumerate(maps) for g in maps[i + 1:])
    if not commuting:
        raise PreconditionError("commuting twists", "twists and morphisms must commute pairwise")
    for label, f in (("al", alpha1), ("be", alpha2)):
        _require(morphism_report(f, p), f"morphism {label}", strict)

    out = _twisted(p, alpha1, alpha2, f"{p.name}_twisted" if p.name else "")
    return verify_output(out, "yau_twist", jobs)


def _exponent(kind: int, n: int) -> int:
    if kind == 1:
        return n
    if kind == 2:
        return 2**n - 1
    raise ValueError(f"derived algebra type must be 1 or 2, got {kind}")


@logged_operation("derived_algebra")
def derived_algebra(
    p: AlgebraPresentation,
    kind: int,
    n: int,
    strict: bool = True,
    jobs: Optional[int] = None,
) -> AlgebraPresentation:
    """
    Derived algebra of type 1 (products twisted by αⁿ, twist αⁿ⁺¹) or type 2
    (exponents 2ⁿ−1 and 2ⁿ). BiHom presentations twist both arguments.
    """
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    k = _exponent(kind, n)
    _require(multiplicativity_report(p, jobs), "multiplicative", strict)
    out = _twisted(p, p.al.power(k), p.be.power(k), f"{p.name}_derived{kind}_{n}" if p.name else "")
    return verify_output(out, "derived_algebra", jobs)
