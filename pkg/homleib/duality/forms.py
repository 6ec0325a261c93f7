"""
Bilinear forms and Manin triples.

A form is stored as its Gram matrix G[i][j] = B(e_i, e_j). On A ⊕ A* with
A first, the standard form B(x + a*, y + b*) = ⟨a*, y⟩ − ⟨b*, x⟩ has Gram
matrix [[0, −I], [I, 0]].
"""

from dataclasses import dataclass, field
from typing import FrozenSet, Iterable, Optional, Set, Tuple

from homleib.algebra.linalg import LinearMap, Product, map_determinant
from homleib.algebra.model import AlgebraPresentation
from homleib.algebra.scalar import FieldSpec
from homleib.core.exceptions import DimensionError
from homleib.core.logging import log_debug, logged_operation
from homleib.construct.actions import regular_actions
from homleib.construct.sums import matched_sum
from homleib.duality.dual import dual_actions, transpose
from homleib.identities.checker import CheckReport, Report, check_named
from homleib.identities.evaluator import context_for_algebra

FORM_PROPERTIES = ("nondegenerate", "skew", "alpha_invariant", "cyclic_invariant")

FORM_IDENTITIES = {
    "skew": "form_skew",
    "alpha_invariant": "form_alpha_invariant",
    "cyclic_invariant": "form_cyclic_invariant",
}


@dataclass(frozen=True)
class BilinearFormData:
    """A Gram matrix with the properties it claims; claims are never trusted."""

    matrix: LinearMap
    claims: FrozenSet[str] = field(default_factory=frozenset)

    def __post_init__(self):
        if not self.matrix.is_square:
            raise DimensionError(f"a form needs a square Gram matrix, got {self.matrix.shape}")
        unknown = set(self.claims) - set(FORM_PROPERTIES)
        if unknown:
            raise ValueError(f"unknown form properties {sorted(unknown)}")
        object.__setattr__(self, "claims", frozenset(self.claims))

    @property
    def dim(self) -> int:
        return self.matrix.dim_in

    @property
    def field(self) -> FieldSpec:
        return self.matrix.field

    def value(self, i: int, j: int):
        """B(e_i, e_j), 0-based."""
        return self.matrix.entry(i, j)


def standard_form(dim_a: int, field: Optional[FieldSpec] = None) -> BilinearFormData:
    """The standard form on A ⊕ A* for dim A = ``dim_a``."""
    field = field or FieldSpec.rationals()
    n = dim_a

    def entry(i: int, j: int):
        if i < n <= j and j - n == i:
            return -field.one
        if j < n <= i and i - n == j:
            return field.one
        return field.zero

    matrix = LinearMap(field, [[entry(i, j) for j in range(2 * n)] for i in range(2 * n)])
    return BilinearFormData(matrix, frozenset({"nondegenerate", "skew"}))


def nondegeneracy_check(f: BilinearFormData) -> CheckReport:
    det = map_determinant(f.matrix)
    if det.is_zero:
        note = "determinant vanishes for all parameter values" if f.field.is_parametric else "determinant is 0"
        return CheckReport.fact("nondegenerate", False, note=note)
    note = f"generically nondegenerate, determinant {det}" if f.field.is_parametric else f"determinant {det}"
    return CheckReport.fact("nondegenerate", True, note=note)


def _with_form(p: AlgebraPresentation, f: BilinearFormData) -> AlgebraPresentation:
    if f.dim != p.dim:
        raise DimensionError(f"form has dimension {f.dim}, algebra has dimension {p.dim}")
    return p.replace(form=f.matrix)


@logged_operation("check_form")
def check_form(
    p: AlgebraPresentation,
    f: BilinearFormData,
    properties: Iterable[str] = FORM_PROPERTIES,
    jobs: Optional[int] = None,
) -> Report:
    """Nondegeneracy by determinant, skewness and both invariance identities."""
    properties = tuple(properties)
    report = Report(title=f"form on {p.name or p.variety.value}")
    pf = _with_form(p, f)
    if "nondegenerate" in properties:
        report.add(nondegeneracy_check(f))
    names = [FORM_IDENTITIES[prop] for prop in properties if prop in FORM_IDENTITIES]
    if names:
        report.extend(check_named(names, context_for_algebra(pf), jobs=jobs, title="form"))
    for prop in f.claims:
        verdict = report.get(FORM_IDENTITIES.get(prop, prop))
        if verdict is not None and not verdict.passed:
            report.notes.append(f"claimed property {prop} does not hold")
    return report


def _span(indices: Set[int]) -> str:
    return "{" + ", ".join(f"e{i}" for i in sorted(indices)) + "}"


def _closed_under(prod: Product, part: Set[int]) -> bool:
    """0-based coordinates of every product of two part elements stay in the part."""
    for i in part:
        for j in part:
            for k, _ in prod.basis_product(i, j).nonzero():
                if k not in part:
                    return False
    return True


def _invariant_under(m: LinearMap, part: Set[int]) -> bool:
    return all(k in part for j in part for k, _ in m.column(j).nonzero())


def _isotropic(f: BilinearFormData, part: Set[int]) -> bool:
    return all(f.value(i, j).is_zero for i in part for j in part)


@logged_operation("manin_check")
def manin_check(
    p: AlgebraPresentation,
    f: BilinearFormData,
    split: Tuple[Set[int], Set[int]],
    jobs: Optional[int] = None,
) -> Report:
    """
    Manin triple conditions for p with form f and a split of the basis into
    two index sets (1-based): the form checks, then for each part that it
    spans a twist-invariant subalgebra on which the form vanishes.
    """
    first, second = split
    if first & second or first | second != set(range(1, p.dim + 1)):
        raise ValueError(f"split {_span(first)} | {_span(second)} does not partition the basis")

    report = check_form(p, f, jobs=jobs)
    report.title = f"Manin triple on {p.name or p.variety.value}"
    for label, part in (("first", first), ("second", second)):
        zero_based = {i - 1 for i in part}
        span = _span(part)
        log_debug(f"Checking the {label} part {span}")
        closed = all(_closed_under(p.product(n), zero_based) for n in p.variety.product_names)
        report.add(CheckReport.fact(f"subalgebra_{label}", closed, context=span))
        twisted = all(_invariant_under(m, zero_based) for m in p.twists.values())
        report.add(CheckReport.fact(f"twist_invariant_{label}", twisted, context=span))
        report.add(CheckReport.fact(f"isotropic_{label}", _isotropic(f, zero_based), context=span))
    return report


@logged_operation("manin_double")
def manin_double(
    p: AlgebraPresentation,
    p_dual: Optional[AlgebraPresentation] = None,
    jobs: Optional[int] = None,
) -> Tuple[AlgebraPresentation, BilinearFormData, Tuple[Set[int], Set[int]]]:
    """
    A ⋈ A* with the coadjoint actions both ways, carrying the standard form.

    Without ``p_dual`` the dual space is abelian with twist αᵀ. Returns the
    presentation, its form and the split {A, A*} ready for manin_check.
    """
    if p_dual is None:
        p_dual = AlgebraPresentation(
            dim=p.dim,
            field=p.field,
            variety=p.variety,
            products={"br": Product.zero(p.field, p.dim)},
            twists={"al": transpose(p.al)},
            multiplicative=True,
            name=f"{p.name}_dual" if p.name else "dual",
        )
    a_on_dual = dual_actions(regular_actions(p, jobs=jobs), p, "coadjoint", jobs=jobs)
    dual_on_a = dual_actions(regular_actions(p_dual, jobs=jobs), p_dual, "coadjoint", jobs=jobs)
    double = matched_sum(p, p_dual, a_on_dual, dual_on_a, jobs=jobs)
    form = standard_form(p.dim, p.field)
    n = p.dim
    split = (set(range(1, n + 1)), set(range(n + 1, 2 * n + 1)))
    return double.replace(form=form.matrix), form, split
